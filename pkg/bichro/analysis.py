# -*- coding: utf-8 -*-
"""
Gate quality: state fidelity, channels in Choi form and the process distance.

A channel on d-dimensional qubit states is stored as its Choi matrix
C = (id ⊗ E)(|Φ⟩⟨Φ|) with |Φ⟩ = Σ_i |i⟩|i⟩/√d, indexed (input ⊗ output), so
C is a density matrix of trace 1.
"""

# Import this for type hints with classes
from __future__ import annotations

import logging

import numpy as np

from .operators import HilbertSpace, Operator, StateVector, DensityMatrix
from ._core import matrix_sqrt_psd, partial_trace_motion, OperatorSpace
from .dynamics import evolve_state
from .errors import NonPSDError

_log = logging.getLogger(__name__)

# Targets of the two entangling experiments, as each one reports them
PSI_MAX = StateVector.fromKets(HilbertSpace(2), {"dd": 1, "uu": -1j})
PSI_FIG4 = StateVector.fromKets(HilbertSpace(2), {"uu": 1, "dd": 1j})


#%%
class QuantumProcess:
    """
    Completely positive, trace-preserving map on the qubits, as a Choi matrix.

    Examples:
    p = QuantumProcess.fromUnitary(ms_ideal_gate())
    rho_out = p.apply(rho_in)
    """
    HERMITIAN_TOL = 1e-10
    PSD_FLOOR = -1e-8
    TRACE_TOL = 1e-8
    TP_TOL = 1e-6

    def __init__(self, choi, num_qubits: int, validate: bool=True):
        d = 2**num_qubits
        choi = np.asarray(choi, dtype=np.complex128)
        if choi.shape != (d * d, d * d):
            raise ValueError("Choi matrix of shape %s does not match %d qubits" % (choi.shape, num_qubits))
        self.choi = choi
        self.num_qubits = num_qubits
        if validate:
            self.validate()

    @property
    def dim(self) -> int:
        return 2**self.num_qubits

    @property
    def space(self) -> HilbertSpace:
        return HilbertSpace(self.num_qubits)

    def validate(self):
        c = self.choi
        herm = np.max(np.abs(c - c.conj().T))
        if herm > self.HERMITIAN_TOL:
            raise ValueError("Choi matrix is not Hermitian: max|C-C^dag| = %g" % herm)
        low = np.linalg.eigvalsh(0.5 * (c + c.conj().T)).min()
        if low < self.PSD_FLOOR:
            raise NonPSDError("Choi matrix has eigenvalue %g" % low)
        tr = np.trace(c).real
        if abs(tr - 1) > self.TRACE_TOL:
            raise ValueError("Choi matrix trace is %.12g, expected 1" % tr)
        d = self.dim
        reduced = np.einsum('iojo->ij', c.reshape(d, d, d, d))
        tp = np.max(np.abs(reduced - np.eye(d) / d))
        if tp > self.TP_TOL:
            raise ValueError("Channel is not trace preserving: |Tr_out C - I/d| = %g" % tp)

    #%% Factories
    @classmethod
    def fromKraus(cls, kraus: list, num_qubits: int) -> QuantumProcess:
        '''C = Σ_j |K_j⟩⟩⟨⟨K_j| with |K⟩⟩ = Σ_i |i⟩ ⊗ K|i⟩ / √d.'''
        d = 2**num_qubits
        vecs = [np.asarray(k, dtype=np.complex128).T.reshape(-1) / np.sqrt(d) for k in kraus]
        return cls(sum(np.outer(v, v.conj()) for v in vecs), num_qubits)

    @classmethod
    def fromUnitary(cls, u: Operator) -> QuantumProcess:
        if u.space.hasMotion:
            raise ValueError("Use channel_from_unitary for operators acting on the motion.")
        return cls.fromKraus([u.matrix], u.space.num_ions)

    def __repr__(self) -> str:
        return "QuantumProcess(num_qubits=%d)" % self.num_qubits

    def apply(self, rho) -> DensityMatrix:
        '''E(ρ) = d·Tr_in[(ρ^T ⊗ I) C].'''
        if isinstance(rho, StateVector):
            rho = rho.toDensity()
        if not isinstance(rho, DensityMatrix):
            raise TypeError("Expected a StateVector or DensityMatrix, got %s" % type(rho).__name__)
        if rho.space != self.space:
            raise ValueError("Space mismatch: %s vs %s" % (repr(self.space), repr(rho.space)))
        d = self.dim
        out = d * np.einsum('ki,koil->ol', rho.matrix, self.choi.reshape(d, d, d, d))
        return DensityMatrix(0.5 * (out + out.conj().T), self.space)

    def compose(self, u: Operator) -> QuantumProcess:
        '''The channel ρ -> U E(ρ) U^dag for a qubit unitary U.'''
        d = self.dim
        big = np.kron(np.eye(d), u.matrix)
        return QuantumProcess(big @ self.choi @ big.conj().T, self.num_qubits)


#%% Operations
def state_fidelity(rho, target: StateVector) -> float:
    '''
    ⟨ψ|ρ|ψ⟩ for a qubit target. A full-space state has the motion traced out
    first; a StateVector is used as |φ⟩⟨φ|.
    '''
    if isinstance(rho, StateVector):
        rho = rho.toDensity()
    if not isinstance(rho, DensityMatrix):
        raise TypeError("Expected a StateVector or DensityMatrix, got %s" % type(rho).__name__)
    if rho.space.hasMotion:
        rho = partial_trace_motion(rho)
    if rho.space != target.space:
        raise ValueError("Space mismatch: %s vs %s" % (repr(rho.space), repr(target.space)))
    f = np.vdot(target.amplitudes, rho.matrix @ target.amplitudes)
    return float(np.clip(f.real, 0.0, 1.0))


def channel_from_unitary(u: Operator) -> QuantumProcess:
    '''
    Qubit channel ρ -> Tr_motion[U(ρ ⊗ |0⟩⟨0|)U^dag] of a propagator on
    (qubits ⊗ oscillator). The motion enters in its ground state; the Kraus
    operators are the blocks K_j = ⟨j|U|0⟩ for every output Fock state j.
    A qubit-only U gives its unitary channel.
    '''
    if not isinstance(u, Operator):
        raise TypeError("Expected an Operator, got %s" % type(u).__name__)
    s = u.space
    if not s.hasMotion:
        return QuantumProcess.fromUnitary(u)
    q, f = s.qubitDim, s.fockDim
    blocks = u.matrix.reshape(q, f, q, f)[:, :, :, 0]
    return QuantumProcess.fromKraus([blocks[:, j, :] for j in range(f)], s.num_ions)


def process_distance(p1: QuantumProcess, p2: QuantumProcess) -> float:
    '''
    d = 1 - Tr sqrt(sqrt(C1) C2 sqrt(C1)) between two Choi matrices.

    Eigenvalues below 1e-14 of the inner product are roundoff of rank-deficient
    Choi matrices and are dropped before the square root.

    Raises
    ------
    NonPSDError
        From the square root when a Choi matrix is not PSD.
    '''
    if p1.num_qubits != p2.num_qubits:
        raise ValueError("Processes act on %d and %d qubits" % (p1.num_qubits, p2.num_qubits))
    r1 = matrix_sqrt_psd(p1.choi)
    inner = r1 @ p2.choi @ r1
    w = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    if w.min() < -1e-8:
        raise NonPSDError("PSD square root guard: eigenvalue %g in the fidelity product" % w.min())
    fid = np.sum(np.sqrt(w[w > 1e-14]))
    return float(np.clip(1 - fid, 0.0, 1.0))


def unitary_distance(u_exact: Operator, u_ideal: Operator) -> float:
    '''Process distance between the channel of a propagator and a qubit gate.'''
    return process_distance(channel_from_unitary(u_exact), channel_from_unitary(u_ideal))


def mean_phonon_number(state, initial=None) -> float:
    '''
    ⟨a^dag a⟩ of a full-space state. When state is a propagator, initial is
    the input state it is applied to.
    '''
    if isinstance(state, Operator):
        if initial is None:
            raise ValueError("A propagator needs an initial state.")
        state = evolve_state(state, initial)
    if isinstance(state, StateVector):
        state = state.toDensity()
    if not isinstance(state, DensityMatrix):
        raise TypeError("Expected a state or a propagator, got %s" % type(state).__name__)
    s = state.space
    if not s.hasMotion:
        raise ValueError("%s has no oscillator." % repr(s))
    ops = OperatorSpace(s.num_ions, s.fock_cutoff)
    n = ops.ladder()[2]
    if s.hasQubits:
        n = ops.embed(None, n)
    return float(n.expectation(state).real)
