# -*- coding: utf-8 -*-
"""
Experiment runners. Each runner takes an ExperimentConfig (already merged
with the defaults of its experiment) and returns a ResultTable plus a
one-line summary.

    fig3       thermal MS dynamics from the effective propagator
    fig4       shaped two-pulse vs constant-amplitude MS gate over ζ
    fig5       process distances of the exact MS gate over ζ
    table1     figures of merit of the zz and MS gates
    sweep      MS gate infidelity over Ω, three ways
    calibrate  weak-drive seed and Bessel-corrected Ω_c
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import ExperimentConfig, EXPERIMENTS
from .results import ResultTable, library_versions
from .operators import StateVector
from .schedule import PulseSchedule
from .dynamics import GateSimulator, evolve_state
from .effective import (calibrate, ms_propagator, ms_thermal_qubit_state, ms_ideal_gate,
                        ms_perturbative_angle, gate_comparison_table, TARGET_PHASE)
from .analysis import (PSI_MAX, PSI_FIG4, state_fidelity, channel_from_unitary,
                       process_distance, mean_phonon_number)
from .sequences import shaped_envelope, two_pulse_sign_flip
from .errors import ConfigError

_log = logging.getLogger(__name__)

COMMON_DEFAULTS = {
    'nu': 1.0,
    'num_ions': 2,
    'n_max': 40,
    'steps_per_cycle': 256,
    'workers': 1,
}

DEFAULTS = {
    'fig3': {
        'gate_type': 'ms', 'eta': 0.1, 'omega': 0.0885, 'epsilon': 0.05,
        'zeta': 0.0, 'phi': 0.0, 'loops': 2, 'n_bar': 2.0,
        'time_grid': '0:260:131',
    },
    'fig4': {
        'gate_type': 'ms', 'eta': 0.05, 'epsilon': 0.04, 'phi': '0.5pi', 'loops': 2,
        'omega_max': 0.167, 'total_cycles': 50, 'ramp_cycles': 8, 'sign_flip': 'zeta',
        'zeta_grid': '0:2pi:33:open', 'n_max': 20,
    },
    'fig5': {
        'gate_type': 'ms', 'eta': 0.05, 'epsilon': 0.04, 'omega': 0.221,
        'phi': 0.0, 'loops': 1, 'zeta_grid': '0:1pi:17', 'n_max': 20,
    },
    'table1': {
        'eta': 0.1, 'n_t': 100,
    },
    'sweep': {
        'gate_type': 'ms', 'eta': 0.05, 'epsilon': 0.04, 'zeta': 0.0, 'phi': 0.0,
        'loops': 1, 'omega_grid': '0.15:0.25:11', 'n_max': 20,
    },
    'calibrate': {
        'gate_type': 'ms', 'eta': 0.05, 'epsilon': 0.04, 'loops': 1,
    },
}


def resolve_config(experiment: str, cfg: ExperimentConfig=None) -> ExperimentConfig:
    '''Defaults of the experiment with the given config on top.'''
    if experiment not in EXPERIMENTS:
        raise ConfigError("Unknown experiment '%s', expected one of %s" % (experiment, EXPERIMENTS))
    cfg = ExperimentConfig() if cfg is None else cfg
    declared = cfg.get('experiment')
    if declared is not None and declared != experiment:
        raise ConfigError("Config is for experiment '%s', not '%s'" % (declared, experiment))
    base = ExperimentConfig(dict(COMMON_DEFAULTS, **DEFAULTS[experiment]))
    return base.withOverrides(**dict(cfg.toDictionary(), experiment=experiment))


def _mapGrid(fn, grid, workers: int) -> list:
    '''fn over the grid, in grid order, optionally on a thread pool.'''
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, grid))
    return [fn(x) for x in grid]


def _finalState(params, schedule, initial, cfg, lamb_dicke=False) -> StateVector:
    sim = GateSimulator(params.num_ions, cfg['n_max'])
    u = sim.evolveUnitary(params, schedule, steps_per_cycle=cfg['steps_per_cycle'],
                          lamb_dicke=lamb_dicke, self_check_tol=cfg.get('self_check_tol'))
    return evolve_state(u, initial)


def _finalFidelity(params, schedule, initial, target, cfg, lamb_dicke=False) -> float:
    return state_fidelity(_finalState(params, schedule, initial, cfg, lamb_dicke), target)


#%% Runners
def run_fig3(cfg: ExperimentConfig) -> tuple:
    params = cfg.toGateParams()
    n_bar = cfg['n_bar']

    def point(nu_t):
        rho = ms_thermal_qubit_state(params, n_bar, nu_t / params.nu)
        coh = rho.element("dd", "uu")
        return (nu_t, rho.element("dd", "dd").real, rho.element("uu", "uu").real,
                coh.real, coh.imag, state_fidelity(rho, PSI_MAX))

    table = ResultTable(["nu_t", "p_dd", "p_uu", "re_coh", "im_coh", "fidelity"],
                        _mapGrid(point, cfg['time_grid'], cfg['workers']))
    fid = table.column("fidelity")
    k = int(np.argmax(fid))
    summary = "fig3: zeta=%.4g peak fidelity %.6f at nu_t=%.4g" % (
        params.zeta, fid[k], table.column("nu_t")[k])
    return table, summary


def run_fig4(cfg: ExperimentConfig) -> tuple:
    base = cfg.toGateParams(omega=cfg['omega_max'])
    cycles = cfg['total_cycles']
    pulse = shaped_envelope(cfg['omega_max'], cycles / 2, cfg['ramp_cycles'], base.nu)
    shaped = two_pulse_sign_flip(pulse, base.gate_type, cfg['sign_flip'])
    omega_c = cfg.get('omega_constant')
    if omega_c is None:
        omega_c = calibrate(base.gate_type, base.eta, base.epsilon, base.nu, base.loops).omega
    constant = PulseSchedule.constant(omega_c, cycles * 2 * np.pi / base.nu)
    initial = StateVector.fromLabel(GateSimulator(base.num_ions, cfg['n_max']).space, "uu", 0)

    def point(zeta):
        p = base.replace(zeta=float(zeta))
        final = _finalState(p, shaped, initial, cfg)
        f_shaped = state_fidelity(final, PSI_FIG4)
        f_const = _finalFidelity(p.replace(omega=omega_c), constant, initial, PSI_FIG4, cfg)
        _log.debug("fig4 zeta=%.4f: shaped %.3g constant %.3g", zeta, 1 - f_shaped, 1 - f_const)
        return (zeta, 1 - f_shaped, 1 - f_const, mean_phonon_number(final))

    table = ResultTable(["zeta", "infidelity_shaped", "infidelity_constant", "mean_phonon_shaped"],
                        _mapGrid(point, cfg['zeta_grid'], cfg['workers']))
    s, c = table.column("infidelity_shaped"), table.column("infidelity_constant")
    summary = "fig4: %d points, max shaped infidelity %.3g, constant (omega=%.4g) in [%.3g, %.3g]" % (
        len(table), s.max(), omega_c, c.min(), c.max())
    return table, summary


def run_fig5(cfg: ExperimentConfig) -> tuple:
    base = cfg.toGateParams()
    t_gate = base.gate_time
    pert = channel_from_unitary(ms_ideal_gate(
        ms_perturbative_angle(base.eta, base.omega, base.epsilon, base.loops), base.num_ions, 0.0, base.phi))
    ideal_y = channel_from_unitary(ms_ideal_gate(TARGET_PHASE, base.num_ions, 0.0, base.phi))

    def point(zeta):
        p = base.replace(zeta=float(zeta))
        sim = GateSimulator(p.num_ions, cfg['n_max'])
        exact = channel_from_unitary(sim.evolveUnitary(
            p, t_final=t_gate, steps_per_cycle=cfg['steps_per_cycle'],
            self_check_tol=cfg.get('self_check_tol')))
        effective = channel_from_unitary(ms_propagator(p, t_gate, cfg['n_max']))
        ideal_psi = channel_from_unitary(ms_ideal_gate(TARGET_PHASE, p.num_ions, p.psi, p.phi))
        return (zeta, process_distance(exact, effective), process_distance(exact, ideal_psi),
                process_distance(exact, ideal_y), process_distance(exact, pert))

    table = ResultTable(["zeta", "d_exact_vs_effective", "d_exact_vs_ideal_psi",
                         "d_exact_vs_ideal_y", "d_exact_vs_pert"],
                        _mapGrid(point, cfg['zeta_grid'], cfg['workers']))
    summary = "fig5: %d points, max d(exact, effective) %.3g, max d(exact, ideal_psi) %.3g" % (
        len(table), table.column("d_exact_vs_effective").max(),
        table.column("d_exact_vs_ideal_psi").max())
    return table, summary


def run_table1(cfg: ExperimentConfig) -> tuple:
    df = gate_comparison_table(cfg['eta'], cfg['n_t'])
    table = ResultTable(["quantity", "zz", "ms"],
                        [(q, row['zz'], row['ms']) for q, row in df.iterrows()])
    summary = "table1: eta=%g n_t=%g omega zz %.4g ms %.4g" % (
        cfg['eta'], cfg['n_t'], df.loc['omega', 'zz'], df.loc['omega', 'ms'])
    return table, summary


def run_sweep(cfg: ExperimentConfig) -> tuple:
    base = cfg.toGateParams(omega=float(cfg['omega_grid'][0]))
    t_gate = base.gate_time
    initial = StateVector.fromLabel(GateSimulator(base.num_ions, cfg['n_max']).space, "dd", 0)

    def point(omega):
        p = base.replace(omega=float(omega))
        drive = PulseSchedule.constant(p.omega, t_gate)
        f_ld = _finalFidelity(p, drive, initial, PSI_MAX, cfg, lamb_dicke=True)
        f_full = _finalFidelity(p, drive, initial, PSI_MAX, cfg)
        f_eff = state_fidelity(evolve_state(ms_propagator(p, t_gate, cfg['n_max']), initial), PSI_MAX)
        _log.debug("sweep omega=%.4f: %.3g %.3g %.3g", omega, 1 - f_ld, 1 - f_full, 1 - f_eff)
        return (omega, 1 - f_ld, 1 - f_full, 1 - f_eff)

    table = ResultTable(["omega", "infidelity_lamb_dicke", "infidelity_full", "infidelity_effective"],
                        _mapGrid(point, cfg['omega_grid'], cfg['workers']))
    cal = calibrate(base.gate_type, base.eta, base.epsilon, base.nu, base.loops)
    table.setMeta("omega_seed", "%.12g" % cal.seed)
    table.setMeta("omega_calibrated", "%.12g" % cal.omega)
    summary = "sweep: %d points, seed omega %.4f, calibrated omega %.4f" % (
        len(table), cal.seed, cal.omega)
    return table, summary


def run_calibrate(cfg: ExperimentConfig) -> tuple:
    gate = cfg['gate_type']
    loops = cfg['loops']
    cal = calibrate(gate, cfg['eta'], cfg['epsilon'], cfg['nu'], loops)
    table = ResultTable(["gate_type", "loops", "seed", "omega", "iterations", "residual"],
                        [(gate, loops, cal.seed, cal.omega, cal.iterations, cal.residual)])
    summary = "calibrate: %s seed %.4f converged %.4f (%d iterations)" % (
        gate, cal.seed, cal.omega, cal.iterations)
    return table, summary


RUNNERS = {
    'fig3': run_fig3,
    'fig4': run_fig4,
    'fig5': run_fig5,
    'table1': run_table1,
    'sweep': run_sweep,
    'calibrate': run_calibrate,
}


def run(cfg: ExperimentConfig, experiment: str=None) -> tuple:
    '''
    Runs one experiment and writes its CSV.

    Returns
    -------
    (path, summary) : tuple of str
    '''
    experiment = experiment or cfg.get('experiment')
    if experiment is None:
        raise ConfigError("No experiment given.")
    cfg = resolve_config(experiment, cfg)
    _log.info("Running %s (config %s)", experiment, cfg.digest[:12])
    table, summary = RUNNERS[experiment](cfg)
    table.setMeta("experiment", experiment)
    table.setMeta("config_sha256", cfg.digest)
    table.setMeta("versions", " ".join("%s=%s" % kv for kv in sorted(library_versions().items())))
    table.setMeta("n_max", cfg['n_max'])
    table.setMeta("steps_per_cycle", cfg['steps_per_cycle'])
    path = table.toCsv(cfg.get('out') or "%s.csv" % experiment)
    _log.info("Finished %s", experiment)
    return path, "%s -> %s" % (summary, path)
