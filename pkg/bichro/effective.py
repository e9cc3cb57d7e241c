# -*- coding: utf-8 -*-
"""
Closed-form effective models of the bichromatic gate.

Everything here is analytic (up to one-dimensional quadratures): the driven
oscillator, the Bessel-saturated couplings of the σz⊗σz ("zz") and
Mølmer–Sørensen ("ms") gates, their calibration, the effective propagators,
and thermal averages over the motional state.

Conventions
-----------
x = 4Ω/δ is the Bessel argument, ψ = x sin ζ, and t* = 2π/|ε| is one loop in
phase space. A driven oscillator H = i(γ(t) a^dag - γ*(t) a) has the
propagator D(α) exp(iΦ) with α = ∫γ and Φ = Im ∫ γ(t) conj(α(t)) dt.
"""

import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd
import scipy.integrate
import scipy.special

from .operators import HilbertSpace, Operator, StateVector, DensityMatrix
from ._core import displacement, collective_spin, rotated_spin, hermitian_expm, thermal_state
from .dynamics import GateParams, carrier_phase_F
from .errors import ModeError, NoConvergence

_log = logging.getLogger(__name__)

CALIBRATION_TOL = 1e-10
CALIBRATION_MAX_ITER = 100
CALIBRATION_DAMPING = 0.5
TARGET_PHASE = np.pi / 8


#%% Result types
@dataclass(frozen=True)
class EffectiveCouplings:
    """
    Rates of the effective Hamiltonian for one parameter set.

    Only the fields belonging to gate_type are filled; the others stay 0.
    """
    gate_type: str
    psi: float
    bessel_argument: float
    t_star: float
    omega_m: float = 0.0
    omega_ms_residual: float = 0.0
    theta_rate: float = 0.0
    kappa_rate: float = 0.0
    ms_sideband: float = 0.0
    lambda_rate: float = 0.0
    chi: float = 0.0
    mu_rate: float = 0.0

    @property
    def phase_per_loop(self) -> float:
        '''θt* for the zz gate, λt* for the MS gate.'''
        rate = self.theta_rate if self.gate_type == "zz" else self.lambda_rate
        return rate * self.t_star


@dataclass(frozen=True)
class DrivenOscResult:
    alpha: complex
    phase: float


@dataclass(frozen=True)
class CalibrationResult:
    gate_type: str
    seed: float         # weak-drive Ω_c
    omega: float        # converged Ω_c
    iterations: int
    residual: float     # |N·phase - π/8| at the converged value


#%% Driven oscillator
def driven_oscillator(gamma_samples, t) -> DrivenOscResult:
    '''
    Propagator parameters of H = i(γ(t) a^dag - γ*(t) a).

    Parameters
    ----------
    gamma_samples : array of complex
        γ sampled on a time grid.
    t : float or array
        Either the grid itself (same length as gamma_samples) or the final
        time of a uniform grid starting at 0.

    Returns
    -------
    DrivenOscResult
        alpha = ∫γ dt and phase = Im ∫ γ(t) conj(∫_0^t γ) dt, both by
        the trapezoidal rule.
    '''
    gamma = np.asarray(gamma_samples, dtype=np.complex128).reshape(-1)
    if gamma.size < 2:
        raise ValueError("Need at least two samples, got %d" % gamma.size)
    if np.ndim(t) == 0:
        times = np.linspace(0.0, float(t), gamma.size)
    else:
        times = np.asarray(t, dtype=np.float64).reshape(-1)
        if times.size != gamma.size:
            raise ValueError("Got %d samples for %d times" % (gamma.size, times.size))
    running = scipy.integrate.cumulative_trapezoid(gamma, x=times, initial=0)
    phase = scipy.integrate.trapezoid((gamma * running.conj()).imag, x=times)
    return DrivenOscResult(complex(running[-1]), float(phase))


def driven_oscillator_propagator(alpha: complex, phase: float, n_max: int) -> Operator:
    '''D(α) exp(iΦ) on Fock states 0..n_max.'''
    d = displacement(alpha, n_max)
    return Operator(d.matrix * np.exp(1j * phase), d.space, unitary=True)


#%% Couplings
def _besselTerms(params: GateParams) -> tuple:
    if params.epsilon == 0:
        raise ValueError("Effective models need a non-zero gate detuning epsilon.")
    x = 4 * params.omega / params.delta
    return x, scipy.special.jv(np.arange(4), x)


def zz_couplings(params: GateParams) -> EffectiveCouplings:
    '''
    Couplings of the σz⊗σz gate, δ = (ν-ε)/2.

    The spin-dependent force has strength Ω_m = ηΩ(J1+J3); the residual
    Mølmer–Sørensen term Ω_MS = 4η²Ω²J0²/(3δ) appears as exp(iΩ_MS t S_{y,ψ}²)
    at the end of each loop. θ = Ω_m²/ε, so θt* = sign(ε)·2π(Ω_m/ε)².
    '''
    params.requireMode("zz")
    x, j = _besselTerms(params)
    eta, om, eps = params.eta, params.omega, params.epsilon
    omega_m = eta * om * (j[1] + j[3])
    omega_ms = 4 * eta**2 * om**2 * j[0]**2 / (3 * params.delta)
    return EffectiveCouplings(
        gate_type="zz", psi=params.psi, bessel_argument=x, t_star=params.t_star,
        omega_m=omega_m, omega_ms_residual=omega_ms,
        theta_rate=omega_m**2 / eps, kappa_rate=omega_ms)


def ms_couplings(params: GateParams) -> EffectiveCouplings:
    '''
    Couplings of the Mølmer–Sørensen gate, δ = ν-ε.

    λ includes the counter-rotating contribution (ε/2δ)J0², which is positive
    for both signs of ε. μ is the rate of the neglected S_{z,ψ}² term.
    '''
    params.requireMode("ms")
    x, j = _besselTerms(params)
    eta, om, eps = params.eta, params.omega, params.epsilon
    side = eta * om * (j[0] + j[2])
    lam = eta**2 * om**2 / eps * ((j[0] + j[2])**2 + eps / (2 * params.delta) * j[0]**2)
    return EffectiveCouplings(
        gate_type="ms", psi=params.psi, bessel_argument=x, t_star=params.t_star,
        ms_sideband=side, lambda_rate=lam,
        chi=(side / eps)**2,
        mu_rate=2 * eta**2 * om**2 * j[1]**2 / (3 * params.delta))


def weak_sideband_rabi(eta: float, omega: float, nu: float=1.0) -> float:
    '''Two-photon sideband Rabi frequency 2ηΩ²/ν of a weak bichromatic drive.'''
    if eta < 0 or omega < 0 or nu <= 0:
        raise ValueError("Need eta >= 0, omega >= 0 and nu > 0")
    return 2 * eta * omega**2 / nu


#%% Calibration
def resonance_epsilon(nu: float, n: int, gate_type: str="zz") -> float:
    '''
    Gate detuning for which one loop (|ε|T = 2π) is also a whole number n of
    modulation periods (δT = 2πn).

    zz: ε = ν/(2n+1). ms: ε = ν/(n+1), from the same two conditions with
    δ = ν - ε.
    '''
    if n < 1:
        raise ValueError("n must be at least 1, got %d" % n)
    if gate_type == "zz":
        return nu / (2 * n + 1)
    if gate_type == "ms":
        return nu / (n + 1)
    raise ModeError("Unknown gate type '%s'" % gate_type)


def calibration_seed(gate_type: str, eta: float, epsilon: float, nu: float=1.0,
                     loops: int=1) -> float:
    '''
    Weak-drive Rabi frequency giving a total phase of π/8 over `loops` loops.

    ms: Ω_c = |ε|/(4η√N). zz: Ω_c² = |ε|δ/(8η√N) with δ = (ν-ε)/2.
    '''
    if gate_type == "ms":
        return abs(epsilon) / (4 * eta * np.sqrt(loops))
    if gate_type == "zz":
        delta = GateParams.expectedDelta("zz", epsilon, nu)
        return np.sqrt(abs(epsilon) * delta / (8 * eta * np.sqrt(loops)))
    raise ModeError("Unknown gate type '%s'" % gate_type)


def _totalPhase(gate_type, eta, epsilon, nu, loops, omega) -> float:
    p = GateParams.forGate(gate_type, eta, omega, epsilon, nu=nu, loops=loops)
    c = ms_couplings(p) if gate_type == "ms" else zz_couplings(p)
    return loops * abs(c.phase_per_loop)


def calibrate(gate_type: str, eta: float, epsilon: float, nu: float=1.0, loops: int=1,
              tol: float=CALIBRATION_TOL, max_iter: int=CALIBRATION_MAX_ITER,
              damping: float=CALIBRATION_DAMPING) -> CalibrationResult:
    '''
    Solves N·|phase per loop|(Ω) = π/8 including Bessel saturation and, for
    the MS gate, the counter-rotating term.

    Starts from the weak-drive seed and iterates the damped fixed point
        Ω <- (1-d)Ω + dΩ(π/8 / phase(Ω))^p
    with p = 1/2 (ms, phase ~ Ω²) or 1/4 (zz, phase ~ Ω⁴).

    Raises
    ------
    NoConvergence
        If |N·phase - π/8| is still above tol after max_iter iterations.
    '''
    if eta <= 0:
        raise ValueError("eta must be positive, got %g" % eta)
    if not 0 < abs(epsilon) < nu:
        raise ValueError("Need 0 < |epsilon| < nu, got %g" % epsilon)
    if loops < 1:
        raise ValueError("loops must be at least 1, got %d" % loops)
    power = 0.5 if gate_type == "ms" else 0.25
    seed = calibration_seed(gate_type, eta, epsilon, nu, loops)

    omega = seed
    residual = np.inf
    for i in range(max_iter + 1):
        phase = _totalPhase(gate_type, eta, epsilon, nu, loops, omega)
        residual = abs(phase - TARGET_PHASE)
        _log.debug("calibrate %s iteration %d: omega=%.15g residual=%.3g", gate_type, i, omega, residual)
        if residual < tol:
            _log.info("Calibrated %s gate: seed %.6g, converged %.6g after %d iterations",
                      gate_type, seed, omega, i)
            return CalibrationResult(gate_type, float(seed), float(omega), i, float(residual))
        if i == max_iter:
            break
        omega = (1 - damping) * omega + damping * omega * (TARGET_PHASE / phase)**power

    raise NoConvergence("calibration guard: %s gate residual %.3g after %d iterations" % (
        gate_type, residual, max_iter))


#%% Saturation laws
def ms_saturation(eta: float, n_t: float, sign_epsilon: int=1) -> dict:
    '''
    Relative corrections to the MS phase at the weak-drive Ω_c for a gate of
    n_t trap cycles. The counter-rotating term raises the phase for ε > 0 and
    lowers it for ε < 0, following the sign it carries in λ.
    '''
    bessel = 1 / (4 * (eta * n_t)**2)
    counter = 1 / (2 * n_t)
    return {
        'bessel': bessel,
        'counter_rotating': counter,
        'mu_over_lambda': 1 / (6 * (eta * n_t)**2 * n_t),
        'phase': TARGET_PHASE * (1 - bessel + np.sign(sign_epsilon) * counter),
    }


def zz_saturated_theta(eta: float, n_t: float) -> float:
    '''θt* at the weak-drive Ω_c once the force saturates: (π/8)(1 - 2/(3ηN_t)).'''
    return TARGET_PHASE * (1 - 2 / (3 * eta * n_t))


def zz_geometric_phase(params: GateParams, loops: int=None, samples_per_cycle: int=512) -> float:
    '''
    Geometric phase of the S_{z,ψ} = 1 force of the zz gate, from quadrature
    of the carrier-frame force with no Bessel expansion and no rotating-wave
    step:

        γ(t) = -2iηΩ cos(δt+ζ) sin((4Ω/δ) sin(δt+ζ)) e^{iνt}

    integrated over `loops` loops (default params.loops).
    '''
    params.requireMode("zz")
    loops = params.loops if loops is None else loops
    t_final = loops * params.t_star
    n = int(np.ceil(t_final * params.nu / (2 * np.pi) * samples_per_cycle)) + 1
    t = np.linspace(0.0, t_final, n)
    th = params.delta * t + params.zeta
    x = 4 * params.omega / params.delta
    gamma = (-2j * params.eta * params.omega * np.cos(th) * np.sin(x * np.sin(th))
             * np.exp(1j * params.nu * t))
    return driven_oscillator(gamma, t).phase


def gate_comparison_table(eta: float, n_t: float) -> pd.DataFrame:
    '''
    Side-by-side figures of merit of the two gates for a gate of n_t trap
    cycles at Lamb-Dicke factor eta.

    Rows: omega (Ω_c/ν), saturation (relative phase reduction at Ω_c),
    coupling_ratio (|κ/θ| for zz, |μ/λ| for ms).
    '''
    if eta <= 0 or n_t <= 0:
        raise ValueError("Need eta > 0 and n_t > 0")
    ms = ms_saturation(eta, n_t)
    return pd.DataFrame(
        {
            'zz': [1 / (4 * np.sqrt(eta * n_t)), 2 / (3 * eta * n_t), 8 * eta / 3],
            'ms': [1 / (4 * eta * n_t), ms['bessel'], ms['mu_over_lambda']],
        },
        index=pd.Index(['omega', 'saturation', 'coupling_ratio'], name='quantity'))


#%% Effective propagators
def _spectrum(s: np.ndarray, decimals: int=9) -> list:
    '''[(eigenvalue, projector)] of a Hermitian matrix, degenerate eigenvalues merged.'''
    w, v = np.linalg.eigh(s)
    out = dict()
    for val, vec in zip(np.round(w, decimals), v.T):
        p = np.outer(vec, vec.conj())
        out[val] = out[val] + p if val in out else p
    return sorted(out.items(), key=lambda kv: kv[0])


def _spinDependentDisplacement(s: np.ndarray, alpha: complex, phase: float, n_max: int,
                               num_ions: int) -> Operator:
    '''Σ_λ P_λ ⊗ D(αλ) e^{iΦλ²} for the eigen-decomposition of the qubit operator s.'''
    space = HilbertSpace(num_ions, n_max)
    m = np.zeros((space.dim, space.dim), dtype=np.complex128)
    for lam, proj in _spectrum(s):
        d = displacement(alpha * lam, n_max).matrix
        m += np.exp(1j * phase * lam**2) * np.kron(proj, d)
    return Operator(m, space)


def _carrier(params: GateParams, t: float, n_max: int) -> Operator:
    sx = collective_spin(params.num_ions, 'x', params.phi)
    c = hermitian_expm(sx, -carrier_phase_F(params, t))
    return c.kron(Operator.identity(HilbertSpace(0, n_max)))


def ms_alpha(params: GateParams, t: float) -> complex:
    '''α(t) = (ηΩ/ε)(J0+J2) e^{-iζ}(e^{iεt} - 1).'''
    c = ms_couplings(params)
    return c.ms_sideband / params.epsilon * np.exp(-1j * params.zeta) * (np.exp(1j * params.epsilon * t) - 1)


def ms_gamma(params: GateParams, t: float) -> float:
    '''Spin phase γ(t) = λt - χ sin εt.'''
    c = ms_couplings(params)
    return c.lambda_rate * t - c.chi * np.sin(params.epsilon * t)


def ms_propagator(params: GateParams, t: float, n_max: int=40, include_mu: bool=False) -> Operator:
    '''
    Effective MS propagator in the frame of the bichromatic Hamiltonian:

        exp(-iF(t)S_x) D(α(t)S_{y,ψ}) exp(i(λt - χ sin εt)S_{y,ψ}²)

    The spin-dependent displacement is assembled eigenspace by eigenspace
    of S_{y,ψ}. With include_mu the factor exp(-iμt S_{z,ψ}²) is appended.

    Raises
    ------
    CutoffError
        When |α|·max|λ| is too large for n_max.
    '''
    if t < 0:
        raise ValueError("t must be non-negative, got %g" % t)
    params.requireMode("ms")
    m = params.num_ions
    s = rotated_spin(m, 'y', params.psi, params.phi)
    u = _carrier(params, t, n_max) @ _spinDependentDisplacement(
        s.matrix, ms_alpha(params, t), ms_gamma(params, t), n_max, m)
    if include_mu:
        sz = rotated_spin(m, 'z', params.psi, params.phi)
        mu = hermitian_expm(sz @ sz, -ms_couplings(params).mu_rate * t)
        u = u @ mu.kron(Operator.identity(HilbertSpace(0, n_max)))
    return Operator(u.matrix, u.space, unitary=True, tol=1e-9)


def zz_lambda(params: GateParams, t: float) -> complex:
    '''Displacement amplitude λ(t) = -i e^{-2iζ}(Ω_m/ε)(e^{iεt} - 1) of the zz force.'''
    c = zz_couplings(params)
    return -1j * np.exp(-2j * params.zeta) * c.omega_m / params.epsilon * (np.exp(1j * params.epsilon * t) - 1)


def zz_phase(params: GateParams, t: float) -> float:
    '''Φ(t) = (Ω_m/ε)²(εt - sin εt).'''
    c = zz_couplings(params)
    return (c.omega_m / params.epsilon)**2 * (params.epsilon * t - np.sin(params.epsilon * t))


def zz_effective_propagator(params: GateParams, t: float, n_max: int=40,
                            lab_frame: bool=False) -> Operator:
    '''
    D(λ(t)S_{z,ψ}) exp(iΦ(t)S_{z,ψ}²) exp(i(Ω_MS t/2)(S_x² + S_{y,ψ}²)),
    the propagator of the commuting part of the zz effective Hamiltonian in
    the carrier frame. lab_frame=True prepends the carrier exp(-iF(t)S_x).
    '''
    if t < 0:
        raise ValueError("t must be non-negative, got %g" % t)
    params.requireMode("zz")
    m = params.num_ions
    sz = rotated_spin(m, 'z', params.psi, params.phi)
    sy = rotated_spin(m, 'y', params.psi, params.phi)
    sx = collective_spin(m, 'x', params.phi)
    ms_part = hermitian_expm(sx @ sx + sy @ sy, 0.5 * zz_couplings(params).omega_ms_residual * t)
    u = (_spinDependentDisplacement(sz.matrix, zz_lambda(params, t), zz_phase(params, t), n_max, m)
         @ ms_part.kron(Operator.identity(HilbertSpace(0, n_max))))
    if lab_frame:
        u = _carrier(params, t, n_max) @ u
    return Operator(u.matrix, u.space, unitary=True, tol=1e-9)


def zz_residual_hamiltonian(params: GateParams, t: float, n_max: int=40) -> Operator:
    '''
    Residual collective spin-flip term of the zz gate in the frame of the
    commuting part:

        (Ω_MS/2)(C(4λ)(S_x² - S_{y,ψ}²) + S(4λ){S_x, S_{y,ψ}})

    with D(±β) = C(β) ± iS(β). Both C and S are Hermitian.
    '''
    params.requireMode("zz")
    m = params.num_ions
    beta = 4 * zz_lambda(params, t)
    dp = displacement(beta, n_max).matrix
    dm = displacement(-beta, n_max).matrix
    cos_part = 0.5 * (dp + dm)
    sin_part = (dp - dm) / 2j
    sx = collective_spin(m, 'x', params.phi).matrix
    sy = rotated_spin(m, 'y', params.psi, params.phi).matrix
    h = (np.kron(sx @ sx - sy @ sy, cos_part) + np.kron(sx @ sy + sy @ sx, sin_part))
    h = 0.5 * zz_couplings(params).omega_ms_residual * h
    return Operator(0.5 * (h + h.conj().T), HilbertSpace(m, n_max), hermitian=True)


#%% Ideal gates
def ms_ideal_gate(theta: float=TARGET_PHASE, num_ions: int=2, psi: float=0.0,
                  phi: float=0.0) -> Operator:
    '''exp(iθ S_{y,ψ}²) on the qubits, S built at optical phase φ.'''
    s = rotated_spin(num_ions, 'y', psi, phi)
    return hermitian_expm(s @ s, theta)


def ms_perturbative_angle(eta: float, omega: float, epsilon: float, loops: int=1) -> float:
    '''Gate angle 2πNη²Ω²/ε² that second-order perturbation theory predicts.'''
    return 2 * np.pi * loops * eta**2 * omega**2 / epsilon**2


#%% Thermal averages
def thermal_displacement_expectation(alpha: complex, n_bar: float) -> float:
    '''Σ_n p_n ⟨n|D(α)|n⟩ for a thermal state: exp(-|α|²(n̄+1/2)).'''
    if n_bar < 0:
        raise ValueError("Mean phonon number must be non-negative, got %g" % n_bar)
    return float(np.exp(-abs(alpha)**2 * (n_bar + 0.5)))


def thermal_displacement_sum(alpha: complex, n_bar: float, n_max: int=60) -> float:
    '''
    The same average by explicit summation over the truncated thermal
    distribution, with ⟨n|D(α)|n⟩ = exp(-|α|²/2) L_n(|α|²).
    '''
    p = thermal_state(n_bar, n_max).populations()
    a2 = abs(alpha)**2
    n = np.arange(n_max + 1)
    return float(np.sum(p * np.exp(-a2 / 2) * scipy.special.eval_genlaguerre(n, 0, a2)))


def _qubitDensity(initial, num_ions: int) -> DensityMatrix:
    space = HilbertSpace(num_ions)
    if initial is None:
        initial = "d" * num_ions
    if isinstance(initial, str):
        initial = StateVector.fromLabel(space, initial)
    if isinstance(initial, StateVector):
        initial = initial.toDensity()
    if not isinstance(initial, DensityMatrix) or initial.space != space:
        raise ValueError("Initial state must live on %s" % repr(space))
    return initial


def ms_thermal_qubit_state(params: GateParams, n_bar: float, t: float, initial=None) -> DensityMatrix:
    '''
    Qubit state at time t under the effective MS propagator, starting from
    initial ⊗ thermal(n̄), with the motion traced out analytically:

        ρ = C [Σ_{λ,λ'} e^{iγ(λ²-λ'²)} exp(-|α|²(λ-λ')²(n̄+1/2)) P_λ ρ0 P_λ'] C^dag

    C is the carrier rotation exp(-iF S_x). Valid for any ζ.
    '''
    params.requireMode("ms")
    m = params.num_ions
    rho0 = _qubitDensity(initial, m).matrix
    alpha = ms_alpha(params, t)
    gamma = ms_gamma(params, t)
    spec = _spectrum(rotated_spin(m, 'y', params.psi, params.phi).matrix)
    r = np.zeros_like(rho0)
    for lam, p in spec:
        for lam2, p2 in spec:
            w = (np.exp(1j * gamma * (lam**2 - lam2**2))
                 * thermal_displacement_expectation(alpha * (lam - lam2), n_bar))
            r += w * (p @ rho0 @ p2)
    c = hermitian_expm(collective_spin(m, 'x', params.phi), -carrier_phase_F(params, t)).matrix
    r = c @ r @ c.conj().T
    return DensityMatrix(0.5 * (r + r.conj().T), HilbertSpace(m))


def p_down_down(params: GateParams, n_bar: float, t: float) -> float:
    '''
    Population of |↓↓⟩ for two ions starting in |↓↓⟩ ⊗ thermal(n̄) at ζ = 0:

        (2 + cos²2F)/8 + (1/2)cos2F cos4γ e^{-4|α|²(n̄+1/2)} + (1/8)cos²2F e^{-16|α|²(n̄+1/2)}
    '''
    params.requireMode("ms")
    if params.num_ions != 2 or params.zeta != 0:
        raise ValueError("The closed form holds for two ions at zeta = 0.")
    c2 = np.cos(2 * carrier_phase_F(params, t))
    a2 = abs(ms_alpha(params, t))**2 * (n_bar + 0.5)
    g = ms_gamma(params, t)
    return float((2 + c2**2) / 8 + 0.5 * c2 * np.cos(4 * g) * np.exp(-4 * a2)
                 + c2**2 / 8 * np.exp(-16 * a2))


OBSERVABLES = ("p_down_down", "p_up_up", "re_coherence", "im_coherence")


def ms_thermal_observables(params: GateParams, n_bar: float, t: float, observable) -> float:
    '''
    Expectation value of a qubit observable at time t for two ions starting
    in |↓↓⟩ ⊗ thermal(n̄).

    observable is a qubit Operator or one of the names in OBSERVABLES; the
    coherence names refer to ρ_{↓↓,↑↑}. 'p_down_down' at ζ = 0 uses the
    explicit three-term formula, everything else the projector sum.
    '''
    if isinstance(observable, str):
        if observable not in OBSERVABLES:
            raise ValueError("Unknown observable '%s', expected one of %s" % (observable, OBSERVABLES))
        if observable == "p_down_down" and params.num_ions == 2 and params.zeta == 0:
            return p_down_down(params, n_bar, t)
        rho = ms_thermal_qubit_state(params, n_bar, t)
        d, u = "d" * params.num_ions, "u" * params.num_ions
        return {
            "p_down_down": lambda: rho.element(d, d).real,
            "p_up_up": lambda: rho.element(u, u).real,
            "re_coherence": lambda: rho.element(d, u).real,
            "im_coherence": lambda: rho.element(d, u).imag,
        }[observable]()
    if not isinstance(observable, Operator):
        raise TypeError("observable must be an Operator or a name, got %s" % type(observable).__name__)
    rho = ms_thermal_qubit_state(params, n_bar, t)
    return float(observable.expectation(rho).real)
