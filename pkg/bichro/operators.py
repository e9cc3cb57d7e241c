# Import this for type hints with classes
from __future__ import annotations

import numbers

import numpy as np


#%%
class HilbertSpace:
    """
    Describes the composite space of m qubits and one truncated oscillator.

    The basis ordering is fixed for the whole package as
    (qubit 1 ⊗ ... ⊗ qubit m ⊗ oscillator), with |↓⟩ at index 0 and |↑⟩ at
    index 1 for every ion. Qubit 1 is therefore the most significant digit of
    a basis index.

    Either factor may be absent:
        HilbertSpace(2, 40)    two qubits and Fock states 0..40
        HilbertSpace(2)        qubits only (no oscillator)
        HilbertSpace(0, 40)    oscillator only

    Examples:
    s = HilbertSpace(2, 40)
    s.dim
    >> 164
    """
    def __init__(self, num_ions: int=0, fock_cutoff: int=None):
        if not isinstance(num_ions, (int, np.integer)):
            raise TypeError("num_ions must be an integer.")
        if num_ions < 0:
            raise ValueError("num_ions must be non-negative, got %d" % num_ions)
        if fock_cutoff is not None:
            if not isinstance(fock_cutoff, (int, np.integer)):
                raise TypeError("fock_cutoff must be an integer or None.")
            if fock_cutoff < 1:
                raise ValueError("fock_cutoff must be at least 1, got %d" % fock_cutoff)
        if num_ions == 0 and fock_cutoff is None:
            raise ValueError("A space needs qubits, an oscillator or both.")

        self.num_ions = int(num_ions)
        self.fock_cutoff = None if fock_cutoff is None else int(fock_cutoff)

    @property
    def qubitDim(self) -> int:
        return 2**self.num_ions

    @property
    def fockDim(self) -> int:
        return 1 if self.fock_cutoff is None else self.fock_cutoff + 1

    @property
    def dim(self) -> int:
        return self.qubitDim * self.fockDim

    @property
    def hasMotion(self) -> bool:
        return self.fock_cutoff is not None

    @property
    def hasQubits(self) -> bool:
        return self.num_ions > 0

    @property
    def space(self) -> HilbertSpace:
        '''Plain copy of the space, without whatever a subclass carries.'''
        return HilbertSpace(self.num_ions, self.fock_cutoff)

    def qubits(self) -> HilbertSpace:
        return HilbertSpace(self.num_ions)

    def motion(self) -> HilbertSpace:
        if not self.hasMotion:
            raise ValueError("%s has no oscillator." % repr(self.space))
        return HilbertSpace(0, self.fock_cutoff)

    def index(self, spins: str, n: int=0) -> int:
        '''
        Basis index of the ket |spins, n⟩.

        Parameters
        ----------
        spins : str
            One character per ion, 'd' for |↓⟩ and 'u' for |↑⟩, ion 1 first.
            Ignored for an oscillator-only space (pass "").
        n : int
            Fock state. Must be 0 for a qubit-only space.
        '''
        if len(spins) != self.num_ions:
            raise ValueError("Expected %d spin labels, got '%s'" % (self.num_ions, spins))
        q = 0
        for c in spins:
            if c not in "du":
                raise ValueError("Spin labels must be 'd' or 'u', got '%s'" % c)
            q = 2 * q + (c == "u")
        if n < 0 or n >= self.fockDim:
            raise ValueError("Fock index %d outside 0..%d" % (n, self.fockDim - 1))
        return q * self.fockDim + n

    def __eq__(self, other) -> bool:
        if not isinstance(other, HilbertSpace):
            return NotImplemented
        return (self.num_ions, self.fock_cutoff) == (other.num_ions, other.fock_cutoff)

    def __hash__(self):
        return hash((self.num_ions, self.fock_cutoff))

    def __repr__(self) -> str:
        return "HilbertSpace(num_ions=%d, fock_cutoff=%s)" % (self.num_ions, self.fock_cutoff)


def _requireSpace(space):
    if not isinstance(space, HilbertSpace):
        raise TypeError("space must be a HilbertSpace, got %s" % type(space).__name__)
    return space.space


#%%
class Operator:
    """
    Dense complex matrix tagged with the space it acts on.

    Arithmetic is done with the usual operators, and mixing operators of
    different spaces raises rather than broadcasting:

    Examples:
    sx = collective_spin(2, 'x')
    sy = collective_spin(2, 'y')
    c = sx @ sy - sy @ sx       # commutator, still an Operator
    h = 0.5 * (sx + sy)         # scalars only on the left or right
    full = sx.kron(identity)    # qubit operator ⊗ oscillator operator

    Passing hermitian=True or unitary=True checks the corresponding
    invariant at construction and raises ValueError on failure.
    """
    HERMITIAN_TOL = 1e-12
    UNITARY_TOL = 1e-10

    def __init__(self, matrix, space: HilbertSpace,
                 hermitian: bool=False, unitary: bool=False, tol: float=None):
        space = _requireSpace(space)
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (space.dim, space.dim):
            raise ValueError("Matrix of shape %s does not match %s (dim %d)" % (
                matrix.shape, repr(space), space.dim))
        self._m = matrix
        self.space = space

        if hermitian:
            err = self.hermiticityError()
            if err > (self.HERMITIAN_TOL if tol is None else tol):
                raise ValueError("Operator is not Hermitian: max|M-M^dag| = %g" % err)
        if unitary:
            err = self.unitarityError()
            if err > (self.UNITARY_TOL if tol is None else tol):
                raise ValueError("Operator is not unitary: max|M^dag M-I| = %g" % err)

    @classmethod
    def identity(cls, space: HilbertSpace) -> Operator:
        space = _requireSpace(space)
        return cls(np.eye(space.dim), space)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def dim(self) -> int:
        return self.space.dim

    def __repr__(self) -> str:
        return "Operator(%s)\n%s" % (repr(self.space), self._m)

    #%% Checks
    def hermiticityError(self) -> float:
        return float(np.max(np.abs(self._m - self._m.conj().T)))

    def unitarityError(self) -> float:
        return float(np.max(np.abs(self._m.conj().T @ self._m - np.eye(self.dim))))

    def isHermitian(self, tol: float=HERMITIAN_TOL) -> bool:
        return self.hermiticityError() < tol

    def isUnitary(self, tol: float=UNITARY_TOL) -> bool:
        return self.unitarityError() < tol

    def allclose(self, other: Operator, atol: float=1e-10) -> bool:
        self._requireSameSpace(other)
        return bool(np.max(np.abs(self._m - other._m)) < atol)

    #%% Algebra
    def _requireSameSpace(self, other):
        if not isinstance(other, Operator):
            raise TypeError("Expected an Operator, got %s" % type(other).__name__)
        if other.space != self.space:
            raise ValueError("Space mismatch: %s vs %s" % (repr(self.space), repr(other.space)))

    def __add__(self, other: Operator) -> Operator:
        self._requireSameSpace(other)
        return Operator(self._m + other._m, self.space)

    def __sub__(self, other: Operator) -> Operator:
        self._requireSameSpace(other)
        return Operator(self._m - other._m, self.space)

    def __neg__(self) -> Operator:
        return Operator(-self._m, self.space)

    def __mul__(self, scalar) -> Operator:
        if not isinstance(scalar, numbers.Number):
            raise TypeError("Operators multiply scalars with * and each other with @.")
        return Operator(scalar * self._m, self.space)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> Operator:
        if not isinstance(scalar, numbers.Number):
            raise TypeError("Operators can only be divided by scalars.")
        return Operator(self._m / scalar, self.space)

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            if other.space != self.space:
                raise ValueError("Space mismatch: %s vs %s" % (repr(self.space), repr(other.space)))
            return StateVector(self._m @ other.amplitudes, self.space)
        self._requireSameSpace(other)
        return Operator(self._m @ other._m, self.space)

    def __pow__(self, k: int) -> Operator:
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise TypeError("Operator powers must be non-negative integers.")
        return Operator(np.linalg.matrix_power(self._m, k), self.space)

    def dag(self) -> Operator:
        return Operator(self._m.conj().T, self.space)

    def trace(self) -> complex:
        return complex(np.trace(self._m))

    def commutator(self, other: Operator) -> Operator:
        return self @ other - other @ self

    def anticommutator(self, other: Operator) -> Operator:
        return self @ other + other @ self

    def kron(self, other: Operator) -> Operator:
        '''
        Tensor product self ⊗ other, where self acts on qubits only and other
        on the oscillator only. Keeps the global basis ordering.
        '''
        if not isinstance(other, Operator):
            raise TypeError("Expected an Operator, got %s" % type(other).__name__)
        if self.space.hasMotion or other.space.hasQubits:
            raise ValueError("kron expects (qubit operator) ⊗ (oscillator operator), got %s ⊗ %s" % (
                repr(self.space), repr(other.space)))
        space = HilbertSpace(self.space.num_ions, other.space.fock_cutoff)
        return Operator(np.kron(self._m, other._m), space)

    def expectation(self, state) -> complex:
        '''⟨ψ|O|ψ⟩ for a StateVector or Tr(Oρ) for a DensityMatrix.'''
        if isinstance(state, StateVector):
            if state.space != self.space:
                raise ValueError("Space mismatch: %s vs %s" % (repr(self.space), repr(state.space)))
            return complex(np.vdot(state.amplitudes, self._m @ state.amplitudes))
        if isinstance(state, DensityMatrix):
            if state.space != self.space:
                raise ValueError("Space mismatch: %s vs %s" % (repr(self.space), repr(state.space)))
            return complex(np.trace(self._m @ state.matrix))
        raise TypeError("Expected a StateVector or DensityMatrix, got %s" % type(state).__name__)


#%%
class StateVector:
    """
    Normalised ket on a HilbertSpace.

    Examples:
    s = HilbertSpace(2, 10)
    psi = StateVector.fromLabel(s, "dd", 0)     # |↓↓, n=0⟩
    """
    NORM_TOL = 1e-10

    def __init__(self, amplitudes, space: HilbertSpace, tol: float=NORM_TOL):
        space = _requireSpace(space)
        amplitudes = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.size != space.dim:
            raise ValueError("State of length %d does not match %s (dim %d)" % (
                amplitudes.size, repr(space), space.dim))
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) > tol:
            raise ValueError("State is not normalised: |psi| = %.15g" % norm)
        self.amplitudes = amplitudes
        self.space = space

    @classmethod
    def basis(cls, space: HilbertSpace, index: int) -> StateVector:
        space = _requireSpace(space)
        v = np.zeros(space.dim, dtype=np.complex128)
        v[index] = 1
        return cls(v, space)

    @classmethod
    def fromLabel(cls, space: HilbertSpace, spins: str, n: int=0) -> StateVector:
        space = _requireSpace(space)
        return cls.basis(space, space.index(spins, n))

    @classmethod
    def fromKets(cls, space: HilbertSpace, terms: dict) -> StateVector:
        '''
        Builds a superposition from {label: amplitude}, normalising the result.
        Labels are spin strings, optionally with ",n" for the Fock state.

        Example:
        StateVector.fromKets(HilbertSpace(2), {"dd": 1, "uu": -1j})
        '''
        space = _requireSpace(space)
        v = np.zeros(space.dim, dtype=np.complex128)
        for label, amp in terms.items():
            spins, _, n = label.partition(",")
            v[space.index(spins, int(n) if n else 0)] += amp
        return cls(v / np.linalg.norm(v), space)

    def __repr__(self) -> str:
        return "StateVector(%s)\n%s" % (repr(self.space), self.amplitudes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: StateVector) -> complex:
        '''⟨self|other⟩'''
        if other.space != self.space:
            raise ValueError("Space mismatch: %s vs %s" % (repr(self.space), repr(other.space)))
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def tensor(self, other: StateVector) -> StateVector:
        if self.space.hasMotion or other.space.hasQubits:
            raise ValueError("tensor expects (qubit state) ⊗ (oscillator state)")
        space = HilbertSpace(self.space.num_ions, other.space.fock_cutoff)
        return StateVector(np.kron(self.amplitudes, other.amplitudes), space)

    def toDensity(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.space)


#%%
class DensityMatrix:
    """
    Hermitian, unit-trace, positive semi-definite matrix on a HilbertSpace.

    tail_mass records probability that was dropped by a truncation before the
    matrix was renormalised (thermal states); it is informational only.
    """
    HERMITIAN_TOL = 1e-12
    TRACE_TOL = 1e-8
    EIGEN_FLOOR = -1e-10

    def __init__(self, matrix, space: HilbertSpace, tail_mass: float=0.0, validate: bool=True):
        space = _requireSpace(space)
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (space.dim, space.dim):
            raise ValueError("Matrix of shape %s does not match %s (dim %d)" % (
                matrix.shape, repr(space), space.dim))
        self.matrix = matrix
        self.space = space
        self.tail_mass = float(tail_mass)
        if validate:
            self.validate()

    def validate(self):
        herm = np.max(np.abs(self.matrix - self.matrix.conj().T))
        if herm > self.HERMITIAN_TOL:
            raise ValueError("Density matrix is not Hermitian: max|rho-rho^dag| = %g" % herm)
        tr = np.trace(self.matrix).real
        if abs(tr - 1) > self.TRACE_TOL:
            raise ValueError("Density matrix trace is %.12g, expected 1" % tr)
        low = np.linalg.eigvalsh(self.matrix).min()
        if low < self.EIGEN_FLOOR:
            raise ValueError("Density matrix has eigenvalue %g" % low)

    @classmethod
    def fromState(cls, psi: StateVector) -> DensityMatrix:
        return psi.toDensity()

    def __repr__(self) -> str:
        return "DensityMatrix(%s)\n%s" % (repr(self.space), self.matrix)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def populations(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()

    def element(self, bra: str, ket: str) -> complex:
        '''ρ_{bra,ket} for a qubit-only matrix, with spin labels like "dd", "uu".'''
        return complex(self.matrix[self.space.index(bra), self.space.index(ket)])

    def tensor(self, other: DensityMatrix) -> DensityMatrix:
        if self.space.hasMotion or other.space.hasQubits:
            raise ValueError("tensor expects (qubit matrix) ⊗ (oscillator matrix)")
        space = HilbertSpace(self.space.num_ions, other.space.fock_cutoff)
        return DensityMatrix(np.kron(self.matrix, other.matrix), space,
                             tail_mass=self.tail_mass + other.tail_mass)
