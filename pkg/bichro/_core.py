# -*- coding: utf-8 -*-
"""
Operator core: dense operators on (qubits ⊗ truncated oscillator).

The containers here follow the same pattern as the rest of the package: a
plain space description (HilbertSpace), a mixin that knows how to build and
cache operators on it, and module-level functions for one-off use.
"""

import logging

import numpy as np
import scipy.linalg

from .operators import HilbertSpace, Operator, StateVector, DensityMatrix
from .errors import CutoffError, NonPSDError

_log = logging.getLogger(__name__)

# Guard thresholds
PSD_CLAMP = 1e-8
DISPLACEMENT_LEAK_TOL = 1e-6
THERMAL_TAIL_TOL = 1e-6
TOP_FOCK_TOL = 1e-8


#%% Array-level helpers shared by the builders and the integrator
def _expmHermitianArray(h: np.ndarray, theta: float) -> np.ndarray:
    '''exp(iθh) for a Hermitian array h (or a stack of them) via eigh.'''
    w, v = np.linalg.eigh(h)
    phases = np.exp(1j * theta * w)
    return (v * phases[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)


def _topFockPopulation(matrix: np.ndarray, space: HilbertSpace, levels: int=2) -> float:
    '''
    Largest population in the top `levels` Fock states among the images of
    the motional ground state, i.e. of the columns |q, n=0⟩ for every qubit q.
    '''
    q, f = space.qubitDim, space.fockDim
    cols = matrix[:, ::f]                   # columns |q, 0⟩
    blocks = cols.reshape(q, f, q)          # (qubit out, fock out, qubit in)
    top = np.abs(blocks[:, f - levels:, :])**2
    return float(top.sum(axis=(0, 1)).max())


#%% Mixin that builds and caches operators on a space
class OperatorBuilderMixin:
    """
    Provides cached builders for the operators of a HilbertSpace.
    Must be mixed in ahead of HilbertSpace (or a subclass of it).

    Example:
    class OperatorSpace(OperatorBuilderMixin, HilbertSpace):
        pass

    s = OperatorSpace(2, 40)
    sx = s.spin('x')                        # qubit-only Operator
    full = s.embed(sx, s.ladder()[0])       # S_x ⊗ a on the full space
    """

    SPIN_KINDS = ('x', 'y', 'z', 'plus', 'minus')

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._ops = dict() # Cache of built arrays keyed by description

    #%% Static builders
    @staticmethod
    def _makeLadder(n_max: int) -> np.ndarray:
        # a|n⟩ = sqrt(n)|n-1⟩
        return np.diag(np.sqrt(np.arange(1, n_max + 1)), k=1).astype(np.complex128)

    @staticmethod
    def _makePauli(kind: str) -> np.ndarray:
        # Basis (|↓⟩, |↑⟩); σ_z|↑⟩ = +|↑⟩ and σ_+ = |↑⟩⟨↓| = (σ_x + iσ_y)/2
        if kind == 'x':
            return np.array([[0, 1], [1, 0]], dtype=np.complex128)
        if kind == 'y':
            return np.array([[0, 1j], [-1j, 0]], dtype=np.complex128)
        if kind == 'z':
            return np.array([[-1, 0], [0, 1]], dtype=np.complex128)
        if kind == 'plus':
            return np.array([[0, 0], [1, 0]], dtype=np.complex128)
        if kind == 'minus':
            return np.array([[0, 1], [0, 0]], dtype=np.complex128)
        raise ValueError("Unknown Pauli kind '%s'" % kind)

    @staticmethod
    def _makeSingle(m: int, ion: int, single: np.ndarray) -> np.ndarray:
        '''single acting on ion (0-based), identity elsewhere.'''
        out = np.ones((1, 1), dtype=np.complex128)
        for i in range(m):
            out = np.kron(out, single if i == ion else np.eye(2))
        return out

    @staticmethod
    def _makeCollective(m: int, single: np.ndarray) -> np.ndarray:
        return sum(OperatorBuilderMixin._makeSingle(m, i, single) for i in range(m))

    @staticmethod
    def _makeSpin(m: int, kind: str, phase: float=0.0) -> np.ndarray:
        if kind not in OperatorBuilderMixin.SPIN_KINDS:
            raise ValueError("Unknown spin kind '%s', expected one of %s" % (
                kind, OperatorBuilderMixin.SPIN_KINDS))
        col = lambda k: OperatorBuilderMixin._makeCollective(m, OperatorBuilderMixin._makePauli(k))
        c, s = np.cos(phase), np.sin(phase)
        if kind == 'x':
            return c * col('x') + s * col('y')
        if kind == 'y':
            return c * col('y') - s * col('x')
        if kind == 'z':
            return col('z')
        # S_±^(φ) = e^{∓iφ} S_±
        return np.exp(-1j * phase if kind == 'plus' else 1j * phase) * col(kind)

    @staticmethod
    def _makeRotated(m: int, axis: str, psi: float, phi: float=0.0) -> np.ndarray:
        sy = OperatorBuilderMixin._makeSpin(m, 'y', phi)
        sz = OperatorBuilderMixin._makeSpin(m, 'z')
        if axis == 'y':
            return sy * np.cos(psi) + sz * np.sin(psi)
        if axis == 'z':
            return sz * np.cos(psi) - sy * np.sin(psi)
        raise ValueError("Rotated spin axis must be 'y' or 'z', got '%s'" % axis)

    #%% Cached instance builders
    def _cached(self, key, maker):
        if key not in self._ops:
            self._ops[key] = maker()
        return self._ops[key]

    def ladder(self) -> tuple:
        '''(a, a^dag, n) on the oscillator factor of this space.'''
        motion = self.motion()
        a = self._cached(('a',), lambda: self._makeLadder(self.fock_cutoff))
        return (Operator(a, motion),
                Operator(a.conj().T, motion),
                Operator(a.conj().T @ a, motion, hermitian=True))

    def spin(self, kind: str, phase: float=0.0) -> Operator:
        m = self._cached(('spin', kind, float(phase)),
                         lambda: self._makeSpin(self.num_ions, kind, phase))
        return Operator(m, self.qubits())

    def rotatedSpin(self, axis: str, psi: float, phi: float=0.0) -> Operator:
        m = self._cached(('rot', axis, float(psi), float(phi)),
                         lambda: self._makeRotated(self.num_ions, axis, psi, phi))
        return Operator(m, self.qubits(), hermitian=True)

    def embed(self, qubit_op: Operator=None, motion_op: Operator=None) -> Operator:
        '''qubit_op ⊗ motion_op on the full space; a missing factor is the identity.'''
        q = Operator.identity(self.qubits()) if qubit_op is None else qubit_op
        f = Operator.identity(self.motion()) if motion_op is None else motion_op
        return q.kron(f)

    def groundState(self, spins: str) -> StateVector:
        '''|spins, n=0⟩ on the full space.'''
        return StateVector.fromLabel(self.space, spins, 0)


class OperatorSpace(OperatorBuilderMixin, HilbertSpace):
    pass


#%% Module-level operations
def fock_ops(n_max: int) -> tuple:
    '''
    Truncated ladder operators on Fock states 0..n_max.

    Returns
    -------
    (a, a_dagger, n) : tuple of Operator
        n = a^dag a. The commutator [a, a^dag] is the identity except in the
        corner entry (n_max, n_max), an artefact of truncation.
    '''
    return OperatorSpace(0, n_max).ladder()


def displacement(alpha: complex, n_max: int, check: bool=True) -> Operator:
    '''
    Displacement operator D(α) = exp(α a^dag - α* a), computed by the
    Hermitian exponential of -i(α a^dag - α* a).

    The truncated result is exactly unitary, so the guard looks at leakage
    instead: for every Fock state in the working band n ≤ n_max/4, the weight
    of its image that lands in the top two retained levels must stay below
    1e-6. Otherwise the displacement is too large for the cutoff.

    Raises
    ------
    CutoffError
        When the displaced working band reaches the truncation edge.
    '''
    a = OperatorBuilderMixin._makeLadder(n_max)
    gen = alpha * a.conj().T - np.conj(alpha) * a
    d = _expmHermitianArray(-1j * gen, 1.0)
    if check and alpha != 0:
        band = n_max // 4 + 1
        leak = (np.abs(d[n_max - 1:, :band])**2).sum(axis=0).max()
        if leak > DISPLACEMENT_LEAK_TOL:
            raise CutoffError(
                "displacement guard: |alpha|=%.4g leaks %.3g into the top Fock levels at n_max=%d" % (
                    abs(alpha), leak, n_max))
    return Operator(d, HilbertSpace(0, n_max))


def collective_spin(m: int, kind: str, phase: float=0.0) -> Operator:
    '''
    Collective spin operator on m qubits: a sum of single-ion Pauli matrices.

    Parameters
    ----------
    m : int
        Number of ions.
    kind : str
        'x', 'y', 'z', 'plus' or 'minus'. Ladder operators are sums of
        σ_± = (σ_x ± iσ_y)/2.
    phase : float
        Optical phase φ. S_x^(φ) = S_x cosφ + S_y sinφ,
        S_y^(φ) = S_y cosφ - S_x sinφ, S_±^(φ) = e^{∓iφ} S_±; S_z is unchanged.
    '''
    if m < 1:
        raise ValueError("Need at least one ion, got %d" % m)
    return Operator(OperatorBuilderMixin._makeSpin(m, kind, phase), HilbertSpace(m))


def rotated_spin(m: int, axis: str, psi: float, phi: float=0.0) -> Operator:
    '''S_{y,ψ} = S_y cosψ + S_z sinψ or S_{z,ψ} = S_z cosψ - S_y sinψ.'''
    if m < 1:
        raise ValueError("Need at least one ion, got %d" % m)
    return Operator(OperatorBuilderMixin._makeRotated(m, axis, psi, phi), HilbertSpace(m),
                    hermitian=True)


def thermal_state(n_bar: float, n_max: int) -> DensityMatrix:
    '''
    Thermal oscillator state with p_n = (1/(n̄+1)) (n̄/(n̄+1))^n, truncated at
    n_max and renormalised. The dropped weight is kept as tail_mass.

    Raises
    ------
    CutoffError
        If the dropped weight exceeds 1e-6.
    '''
    if n_bar < 0:
        raise ValueError("Mean phonon number must be non-negative, got %g" % n_bar)
    ratio = n_bar / (n_bar + 1)
    p = ratio**np.arange(n_max + 1) / (n_bar + 1)
    tail = ratio**(n_max + 1)
    if tail > THERMAL_TAIL_TOL:
        raise CutoffError("thermal tail guard: n_bar=%g leaves %.3g beyond n_max=%d" % (
            n_bar, tail, n_max))
    return DensityMatrix(np.diag(p / p.sum()), HilbertSpace(0, n_max), tail_mass=tail)


def partial_trace_motion(rho: DensityMatrix) -> DensityMatrix:
    '''Traces out the oscillator, leaving the qubit density matrix.'''
    s = rho.space
    if not s.hasMotion:
        return rho
    q, f = s.qubitDim, s.fockDim
    r = np.einsum('ikjk->ij', rho.matrix.reshape(q, f, q, f))
    return DensityMatrix(0.5 * (r + r.conj().T), s.qubits(), tail_mass=rho.tail_mass)


def partial_trace_qubits(rho: DensityMatrix) -> DensityMatrix:
    '''Traces out the qubits, leaving the oscillator density matrix.'''
    s = rho.space
    q, f = s.qubitDim, s.fockDim
    r = np.einsum('kikj->ij', rho.matrix.reshape(q, f, q, f))
    return DensityMatrix(0.5 * (r + r.conj().T), s.motion(), tail_mass=rho.tail_mass)


def matrix_sqrt_psd(m) -> np.ndarray:
    '''
    Principal square root of a positive semi-definite matrix.

    Eigenvalues in (-1e-8, 0) are clamped to zero.

    Raises
    ------
    NonPSDError
        If an eigenvalue is below -1e-8.
    '''
    if isinstance(m, (Operator, DensityMatrix)):
        m = m.matrix
    m = np.asarray(m, dtype=np.complex128)
    w, v = scipy.linalg.eigh(0.5 * (m + m.conj().T))
    if w.min() < -PSD_CLAMP:
        raise NonPSDError("PSD square root guard: eigenvalue %g below -%g" % (w.min(), PSD_CLAMP))
    w = np.clip(w, 0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def hermitian_expm(h: Operator, theta: float=1.0) -> Operator:
    '''
    exp(iθH) for a Hermitian operator H, through its eigendecomposition.
    A propagator over time t is hermitian_expm(H, -t).
    '''
    if not isinstance(h, Operator):
        raise TypeError("Expected an Operator, got %s" % type(h).__name__)
    err = h.hermiticityError()
    if err > Operator.HERMITIAN_TOL:
        raise ValueError("Generator is not Hermitian: max|H-H^dag| = %g" % err)
    return Operator(_expmHermitianArray(h.matrix, theta), h.space, unitary=True)


def top_fock_population(u: Operator, levels: int=2) -> float:
    '''
    Population that the motional ground state inputs of u leave in the top
    `levels` Fock states.
    '''
    return _topFockPopulation(u.matrix, u.space, levels)


def guard_top_fock(u: Operator, tol: float=TOP_FOCK_TOL):
    '''Raises CutoffError if top_fock_population(u) reaches tol.'''
    pop = top_fock_population(u)
    if pop >= tol:
        raise CutoffError("top Fock population guard: %.3g in the top two levels at n_max=%d" % (
            pop, u.space.fock_cutoff))
    if pop > 1e-10:
        _log.warning("Top Fock population %.3g is close to the guard at n_max=%d",
                     pop, u.space.fock_cutoff)
    return pop
