# -*- coding: utf-8 -*-
"""
Time-dependent bichromatic Hamiltonian and its propagator.

Units: hbar = 1 and the trap frequency nu = 1 unless GateParams says
otherwise; every rate and time is a multiple of nu or 1/nu.

The integrator works directly in the interaction picture of the qubit and
oscillator energies. Every step is the Hermitian exponential of a
Magnus exponent, so the product is unitary by construction. order=4 (the
default) samples H at the two Gauss-Legendre nodes of the step and adds their
commutator; order=2 samples H once at the step midpoint.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import ClassVar

import numpy as np
import scipy.integrate

from .operators import HilbertSpace, Operator, StateVector, DensityMatrix
from ._core import OperatorBuilderMixin, _expmHermitianArray, guard_top_fock
from .schedule import PulseSchedule
from .errors import ModeError, ConvergenceError

_log = logging.getLogger(__name__)

GATE_TYPES = ("zz", "ms")


#%%
@dataclass(frozen=True)
class GateParams:
    """
    Physical control parameters of a bichromatic gate, in units of nu.

    gate_type is optional. When it is given ('zz' or 'ms') the detuning must
    match it: δ = (ν-ε)/2 for the σz⊗σz gate and δ = ν-ε for the
    Mølmer–Sørensen gate, each within 1e-12. Without a gate type the
    parameters describe a generic drive, and η = 0 or δ = 0 are allowed.
    """
    eta: float
    omega: float
    delta: float
    epsilon: float = 0.0
    zeta: float = 0.0
    phi: float = 0.0
    num_ions: int = 2
    loops: int = 1
    nu: float = 1.0
    gate_type: str = None

    MODE_TOL: ClassVar[float] = 1e-12

    def __post_init__(self):
        if self.eta < 0:
            raise ValueError("eta must be non-negative, got %g" % self.eta)
        if self.omega < 0:
            raise ValueError("omega must be non-negative, got %g" % self.omega)
        if self.delta < 0:
            raise ValueError("delta must be non-negative, got %g" % self.delta)
        if self.nu <= 0:
            raise ValueError("nu must be positive, got %g" % self.nu)
        if abs(self.epsilon) >= self.nu:
            raise ValueError("|epsilon| must be below nu, got %g" % self.epsilon)
        if self.num_ions < 1:
            raise ValueError("num_ions must be at least 1, got %d" % self.num_ions)
        if self.loops < 1:
            raise ValueError("loops must be at least 1, got %d" % self.loops)
        if self.gate_type is not None:
            if self.eta <= 0 or self.delta <= 0:
                raise ValueError("A %s gate needs eta > 0 and delta > 0" % self.gate_type)
            self.requireMode(self.gate_type)

    @staticmethod
    def expectedDelta(gate_type: str, epsilon: float, nu: float=1.0) -> float:
        if gate_type == "zz":
            return 0.5 * (nu - epsilon)
        if gate_type == "ms":
            return nu - epsilon
        raise ModeError("Unknown gate type '%s', expected one of %s" % (gate_type, GATE_TYPES))

    @classmethod
    def forGate(cls, gate_type: str, eta: float, omega: float, epsilon: float, **kwargs):
        '''Builds parameters with δ derived from ε for the given gate type.'''
        nu = kwargs.get('nu', 1.0)
        return cls(eta=eta, omega=omega, delta=cls.expectedDelta(gate_type, epsilon, nu),
                   epsilon=epsilon, gate_type=gate_type, **kwargs)

    def mode(self) -> str:
        '''The gate type that δ is consistent with, or None.'''
        for g in GATE_TYPES:
            if abs(self.delta - self.expectedDelta(g, self.epsilon, self.nu)) <= self.MODE_TOL:
                return g
        return None

    def requireMode(self, gate_type: str):
        expected = self.expectedDelta(gate_type, self.epsilon, self.nu)
        if abs(self.delta - expected) > self.MODE_TOL:
            raise ModeError("%s gate requires delta=%.15g for epsilon=%g, got delta=%.15g" % (
                gate_type, expected, self.epsilon, self.delta))

    def replace(self, **kwargs):
        return replace(self, **kwargs)

    @property
    def t_star(self) -> float:
        '''Duration of one phase-space loop, 2π/|ε|.'''
        if self.epsilon == 0:
            raise ValueError("t_star is undefined for epsilon = 0")
        return 2 * np.pi / abs(self.epsilon)

    @property
    def gate_time(self) -> float:
        return self.loops * self.t_star

    @property
    def psi(self) -> float:
        '''Rotation angle of the effective spin axis, (4Ω/δ) sin ζ.'''
        return 4 * self.omega / self.delta * np.sin(self.zeta)


#%% Mixin building the Hamiltonian
class HamiltonianMixin:
    """
    Builds the bichromatic Hamiltonian

        H(t) = Ω(t) e^{-iφ} S_+ (e^{-i(δt+ζ)} + e^{i(δt+ζ)}) exp(iη(a e^{-iνt} + a^dag e^{iνt})) + h.c.

    on the space of the class it is mixed into. With lamb_dicke=True the
    exponential is replaced by 1 + iη(a e^{-iνt} + a^dag e^{iνt}).
    """

    def _displacementIEta(self, eta: float) -> np.ndarray:
        def make():
            a = self._makeLadder(self.fock_cutoff)
            gen = 1j * eta * (a.conj().T + a)   # iη a^dag - (iη)* a
            return _expmHermitianArray(-1j * gen, 1.0)
        return self._cached(('D(i eta)', float(eta)), make)

    def _motionCoupling(self, params: GateParams, times: np.ndarray, lamb_dicke: bool) -> np.ndarray:
        '''Stack of oscillator matrices exp(iη(a e^{-iνt} + a^dag e^{iνt})), one per time.'''
        times = np.atleast_1d(times)
        f = self.fockDim
        if lamb_dicke:
            a = self._cached(('a',), lambda: self._makeLadder(self.fock_cutoff))
            ph = np.exp(-1j * params.nu * times)[:, None, None]
            return np.eye(f) + 1j * params.eta * (a * ph + a.conj().T * ph.conj())
        # D(iη e^{iνt}) = e^{iνt n} D(iη) e^{-iνt n}
        d0 = self._displacementIEta(params.eta)
        k = np.arange(f)
        ph = np.exp(1j * params.nu * times[:, None, None] * (k[:, None] - k[None, :]))
        return d0[None, :, :] * ph

    def _hamiltonianStack(self, params: GateParams, times, omegas,
                          lamb_dicke: bool, zeta_offset: float=0.0,
                          phi_offset: float=0.0) -> np.ndarray:
        times = np.atleast_1d(np.asarray(times, dtype=np.float64))
        omegas = np.broadcast_to(np.asarray(omegas, dtype=np.float64), times.shape)
        sp = self._cached(('spin', 'plus', 0.0), lambda: self._makeSpin(self.num_ions, 'plus'))
        m = self._motionCoupling(params, times, lamb_dicke)
        q, f = self.qubitDim, self.fockDim
        coupling = np.einsum('ab,kij->kaibj', sp, m).reshape(len(times), q * f, q * f)
        c = (2 * omegas * np.cos(params.delta * times + params.zeta + zeta_offset)
             * np.exp(-1j * (params.phi + phi_offset)))
        h = c[:, None, None] * coupling
        return h + np.swapaxes(h.conj(), -1, -2)

    def hamiltonian(self, params: GateParams, t: float, envelope_value: float=1.0,
                    lamb_dicke: bool=False) -> Operator:
        '''
        Hamiltonian at time t with Ω(t) = envelope_value * params.omega.
        '''
        if envelope_value < 0:
            raise ValueError("envelope_value must be non-negative, got %g" % envelope_value)
        h = self._hamiltonianStack(params, [t], params.omega * envelope_value, lamb_dicke)[0]
        return Operator(h, self.space, hermitian=True)


#%% Mixin integrating the propagator
class PropagatorMixin:
    """
    Integrates U(t) for a GateParams and PulseSchedule on the class's space.
    """
    UNITARY_TOL = 1e-9
    ORDERS = (2, 4)
    GAUSS_OFFSET = np.sqrt(3) / 6  # Gauss-Legendre nodes at 1/2 ± √3/6 of the step
    CHUNK_ELEMENTS = 2000000 # Bound on the stacked Hamiltonian size per batch

    def _intervals(self, schedule: PulseSchedule, t_final: float, checkpoints) -> np.ndarray:
        points = set(float(b) for b in schedule.boundaries() if b < t_final)
        points.update(float(t) for t, _, _ in schedule.instants if t <= t_final)
        points.update(float(t) for t in checkpoints)
        points.update((0.0, float(t_final)))
        return np.array(sorted(points))

    def _magnusExponent(self, params: GateParams, schedule: PulseSchedule, mids: np.ndarray,
                        dt: float, lamb_dicke: bool, seg, order: int) -> np.ndarray:
        '''
        Stack of Hermitian K with U_step = exp(-iK), one per step midpoint.

        order 2: K = H(t_m) dt
        order 4: K = (dt/2)(H1 + H2) - i(√3/12) dt² [H2, H1], H1 and H2 at the
        Gauss-Legendre nodes
        '''
        def stack(times):
            omegas = np.array([schedule.sample(t)[0] for t in times])
            return self._hamiltonianStack(params, times, omegas, lamb_dicke,
                                          seg.zeta_offset, seg.phi_offset)
        if order == 2:
            return dt * stack(mids)
        h1 = stack(mids - self.GAUSS_OFFSET * dt)
        h2 = stack(mids + self.GAUSS_OFFSET * dt)
        comm = h2 @ h1 - h1 @ h2
        k = 0.5 * dt * (h1 + h2) - 1j * (np.sqrt(3) / 12) * dt**2 * comm
        return 0.5 * (k + np.swapaxes(k.conj(), -1, -2))

    def _integrate(self, params: GateParams, schedule: PulseSchedule, t_final: float,
                   steps_per_cycle: int, lamb_dicke: bool, checkpoints=(), order: int=4) -> dict:
        if steps_per_cycle < 64:
            raise ValueError("steps_per_cycle must be at least 64, got %d" % steps_per_cycle)
        if order not in self.ORDERS:
            raise ValueError("Integrator order must be one of %s, got %s" % (self.ORDERS, order))
        if t_final > schedule.total_duration + 1e-9:
            raise ValueError("t_final=%g runs past the schedule (%g)" % (
                t_final, schedule.total_duration))
        for t in checkpoints:
            if t < 0 or t > t_final + 1e-12:
                raise ValueError("Checkpoint t=%g outside [0, %g]" % (t, t_final))

        q, f = self.qubitDim, self.fockDim
        d = q * f
        eye_f = np.eye(f)
        dt_nominal = 2 * np.pi / params.nu / steps_per_cycle
        chunk = max(1, min(256, self.CHUNK_ELEMENTS // (d * d)))
        wanted = set(float(t) for t in checkpoints)
        instants = sorted(schedule.instants, key=lambda x: x[0])

        u = np.eye(d, dtype=np.complex128)
        out = dict()
        points = self._intervals(schedule, t_final, checkpoints)
        nsteps = 0

        def applyInstants(at):
            nonlocal u
            for when, op, label in instants:
                if abs(when - at) < 1e-12:
                    _log.debug("Applying instantaneous %s at t=%g", label or "pulse", at)
                    u = np.kron(op.matrix, eye_f) @ u

        applyInstants(0.0)
        if 0.0 in wanted:
            out[0.0] = u.copy()
        for a, b in zip(points[:-1], points[1:]):
            if b - a < 1e-14:
                continue
            n = max(1, math.ceil((b - a) / dt_nominal - 1e-9))
            dt = (b - a) / n
            mids = a + (np.arange(n) + 0.5) * dt
            seg = schedule.segments[schedule.locate(0.5 * (a + b))]
            for i in range(0, n, chunk):
                exponent = self._magnusExponent(params, schedule, mids[i:i + chunk], dt, lamb_dicke,
                                                seg, order)
                steps = _expmHermitianArray(exponent, -1.0)
                for s in steps:
                    u = s @ u
            nsteps += n
            applyInstants(b)
            if b in wanted:
                out[b] = u.copy()
        out[float(t_final)] = u
        _log.debug("Integrated %d steps to t=%g (dim %d)", nsteps, t_final, d)
        return out

    def _toOperator(self, u: np.ndarray, guard: bool) -> Operator:
        op = Operator(u, self.space, unitary=True, tol=self.UNITARY_TOL)
        if guard and self.hasMotion:
            guard_top_fock(op)
        return op

    def _resolve(self, params, schedule, t_final):
        if schedule is None:
            if t_final is None:
                raise ValueError("Need either a schedule or t_final.")
            schedule = PulseSchedule.constant(params.omega, t_final) if t_final > 0 else PulseSchedule()
        if t_final is None:
            t_final = schedule.total_duration
        return schedule, float(t_final)

    def evolveUnitary(self, params: GateParams, schedule: PulseSchedule=None,
                      t_final: float=None, steps_per_cycle: int=256,
                      lamb_dicke: bool=False, self_check_tol: float=None,
                      guard: bool=True, order: int=4) -> Operator:
        '''
        Propagator from 0 to t_final.

        Parameters
        ----------
        params : GateParams
            When schedule is None the drive is constant at params.omega.
        schedule : PulseSchedule, optional
            Supplies Ω(t) (absolute, signed) and ζ/φ offsets, plus
            instantaneous qubit operations. The default is None.
        t_final : float, optional
            Defaults to the schedule duration.
        steps_per_cycle : int
            Steps per trap period, at least 64. The default is 256.
        lamb_dicke : bool
            Use the linearised motional coupling. The default is False.
        self_check_tol : float, optional
            If given, the integration is repeated at twice the steps and
            ConvergenceError is raised when any element moves by more than this.
        guard : bool
            Check the top-Fock population of the motional ground inputs.
        order : int
            4 for the two-node Magnus step (default), 2 for the midpoint step.

        Returns
        -------
        U : Operator
        '''
        schedule, t_final = self._resolve(params, schedule, t_final)
        if t_final == 0:
            return Operator.identity(self.space)
        u = self._integrate(params, schedule, t_final, steps_per_cycle, lamb_dicke, order=order)[t_final]
        if self_check_tol is not None:
            u2 = self._integrate(params, schedule, t_final, 2 * steps_per_cycle, lamb_dicke,
                                 order=order)[t_final]
            change = float(np.max(np.abs(u - u2)))
            if change > self_check_tol:
                raise ConvergenceError(
                    "step-doubling guard: propagator changed by %.3g > %.3g at %d steps per cycle" % (
                        change, self_check_tol, steps_per_cycle))
            _log.info("Step doubling changed the propagator by %.3g", change)
        return self._toOperator(u, guard)

    def evolveUnitarySeries(self, params: GateParams, times, schedule: PulseSchedule=None,
                            steps_per_cycle: int=256, lamb_dicke: bool=False,
                            guard: bool=True, order: int=4) -> list:
        '''Propagators at every requested time, from a single integration pass.'''
        times = [float(t) for t in times]
        schedule, t_final = self._resolve(params, schedule, max(times))
        if t_final == 0:
            return [Operator.identity(self.space) for _ in times]
        out = self._integrate(params, schedule, t_final, steps_per_cycle, lamb_dicke, times, order)
        return [self._toOperator(out[t], guard) for t in times]


#%%
class GateSimulator(PropagatorMixin, HamiltonianMixin, OperatorBuilderMixin, HilbertSpace):
    """
    Hilbert space of num_ions qubits and a Fock cutoff, with everything needed
    to build and integrate the bichromatic drive on it.

    Example:
    sim = GateSimulator(2, 20)
    p = GateParams.forGate("ms", eta=0.05, omega=0.221, epsilon=0.04)
    u = sim.evolveUnitary(p, t_final=p.t_star)
    """
    pass


#%% Module-level operations
def bichromatic_hamiltonian(params: GateParams, t: float, envelope_value: float=1.0,
                            lamb_dicke: bool=False, n_max: int=40) -> Operator:
    return GateSimulator(params.num_ions, n_max).hamiltonian(params, t, envelope_value, lamb_dicke)


def carrier_phase_F(params: GateParams, t: float, schedule: PulseSchedule=None) -> float:
    '''
    F(t) = ∫_0^t 2Ω(t') cos(δt' + ζ) dt'.

    For a constant drive this is the closed form (2Ω/δ)(sin(δt+ζ) - sin ζ).
    With a schedule, the signed envelope and ζ offsets are integrated by
    Simpson's rule with a step of at most (2π/δ)/64.
    '''
    if t < 0:
        raise ValueError("t must be non-negative, got %g" % t)
    if schedule is None:
        if params.delta == 0:
            return 2 * params.omega * np.cos(params.zeta) * t
        return 2 * params.omega / params.delta * (np.sin(params.delta * t + params.zeta)
                                                  - np.sin(params.zeta))
    period = 2 * np.pi / (params.delta if params.delta > 0 else params.nu)
    bounds = schedule.boundaries()
    total = 0.0
    for i, seg in enumerate(schedule.segments):
        a, b = bounds[i], min(bounds[i + 1], t)
        if b <= a:
            break
        n = 2 * max(1, math.ceil((b - a) / (period / 64) / 2))
        ts = np.linspace(a, b, n + 1)
        f = 2 * seg.scale * seg.value(ts - a) * np.cos(params.delta * ts + params.zeta + seg.zeta_offset)
        total += scipy.integrate.simpson(f, x=ts)
    return float(total)


def evolve_unitary(params: GateParams, schedule: PulseSchedule=None, t_final: float=None,
                   steps_per_cycle: int=256, lamb_dicke: bool=False, n_max: int=40,
                   self_check_tol: float=None, order: int=4) -> Operator:
    return GateSimulator(params.num_ions, n_max).evolveUnitary(
        params, schedule, t_final, steps_per_cycle, lamb_dicke, self_check_tol, order=order)


def evolve_state(u: Operator, state):
    '''
    Uψ for a StateVector, UρU^dag for a DensityMatrix.
    '''
    if not isinstance(u, Operator):
        raise TypeError("Expected an Operator, got %s" % type(u).__name__)
    if isinstance(state, StateVector):
        return u @ state
    if isinstance(state, DensityMatrix):
        if state.space != u.space:
            raise ValueError("Space mismatch: %s vs %s" % (repr(u.space), repr(state.space)))
        r = u.matrix @ state.matrix @ u.matrix.conj().T
        return DensityMatrix(0.5 * (r + r.conj().T), u.space, tail_mass=state.tail_mass)
    raise TypeError("Expected a StateVector or DensityMatrix, got %s" % type(state).__name__)


def stroboscopic_times(delta: float, count: int) -> list:
    '''[2πk/δ for k = 1..count]'''
    if delta <= 0:
        raise ValueError("delta must be positive, got %g" % delta)
    return [2 * np.pi * k / delta for k in range(1, count + 1)]
