# -*- coding: utf-8 -*-
"""
Robust gate constructions compiled to PulseSchedules: cos²-shaped pulses,
the two-pulse sign-flip scheme and spin echoes with instantaneous π-pulses.
"""

from dataclasses import dataclass

import numpy as np

from .operators import HilbertSpace, Operator
from ._core import OperatorBuilderMixin
from .schedule import PulseSchedule
from .dynamics import GATE_TYPES
from .errors import ModeError

PI_AXES = ("x", "y")
PLACEMENTS = ("between", "after", "both")
SIGN_FLIP_MECHANISMS = ("zeta", "omega")

# ζ shift that reverses the coupling sign of each gate
SIGN_FLIP_ZETA = {"zz": np.pi / 2, "ms": np.pi}


#%%
@dataclass(frozen=True)
class EchoSpec:
    """
    π-pulse axes for the two ions and where the pulses go.

    placement:
        'between'  one pair between the two gate halves
        'after'    one pair after the second half
        'both'     [half, π, half, π], the full echo
    """
    axis_ion1: str = "x"
    axis_ion2: str = "x"
    placement: str = "both"

    def __post_init__(self):
        for a in (self.axis_ion1, self.axis_ion2):
            if a not in PI_AXES:
                raise ValueError("π-pulse axis must be one of %s, got '%s'" % (PI_AXES, a))
        if self.placement not in PLACEMENTS:
            raise ValueError("Invalid echo placement '%s'." % self.placement)

    @property
    def pulse(self) -> Operator:
        return pi_pulse(self.axis_ion1, self.axis_ion2)

    @property
    def between(self) -> bool:
        return self.placement in ("between", "both")

    @property
    def after(self) -> bool:
        return self.placement in ("after", "both")


def pi_pulse(*axes) -> Operator:
    '''
    ⊗_k exp(-i(π/2)σ_{axis_k}) = ⊗_k (-iσ_{axis_k}), one axis per ion.
    '''
    if not axes:
        raise ValueError("Need one axis per ion.")
    m = np.ones((1, 1), dtype=np.complex128)
    for a in axes:
        if a not in PI_AXES:
            raise ValueError("π-pulse axis must be one of %s, got '%s'" % (PI_AXES, a))
        m = np.kron(m, -1j * OperatorBuilderMixin._makePauli(a))
    return Operator(m, HilbertSpace(len(axes)), unitary=True)


#%% Schedules
def shaped_envelope(omega_max: float, total_cycles: float, ramp_cycles: float,
                    nu: float=1.0) -> PulseSchedule:
    '''
    cos² rise over ramp_cycles trap periods, flat top at omega_max, cos² fall.

    Raises
    ------
    ValueError
        If the two ramps do not fit in total_cycles.
    '''
    if omega_max < 0:
        raise ValueError("omega_max must be non-negative, got %g" % omega_max)
    if ramp_cycles <= 0 or total_cycles <= 0:
        raise ValueError("Ramp and pulse lengths must be positive.")
    if 2 * ramp_cycles > total_cycles:
        raise ValueError("Pulse geometry: two ramps of %g cycles do not fit in %g cycles" % (
            ramp_cycles, total_cycles))
    period = 2 * np.pi / nu
    sched = PulseSchedule()
    sched.addSegment(ramp_cycles * period, "ramp_up", omega_max)
    flat = total_cycles - 2 * ramp_cycles
    if flat > 0:
        sched.addSegment(flat * period, "flat", omega_max)
    sched.addSegment(ramp_cycles * period, "ramp_down", omega_max)
    return sched


def two_pulse_sign_flip(base: PulseSchedule, gate_type: str, mechanism: str="zeta") -> PulseSchedule:
    '''
    base followed by a copy of base with the coupling sign reversed.

    mechanism 'zeta' shifts ζ by π/2 (zz) or π (ms) for the copy; 'omega'
    negates the amplitude. Both reverse the spin-dependent force, so the
    motion returns and the geometric phases of the two pulses add.
    '''
    if gate_type not in GATE_TYPES:
        raise ModeError("Unknown gate type '%s'" % gate_type)
    if mechanism not in SIGN_FLIP_MECHANISMS:
        raise ValueError("Unknown sign flip mechanism '%s'" % mechanism)
    if len(base) == 0 or not (base.isShaped or base.integral() == 0):
        raise ValueError("The sign-flip pair needs a base pulse that starts and ends at zero amplitude.")
    out = base.copy()
    if mechanism == "zeta":
        out.extend(base, zeta_offset=SIGN_FLIP_ZETA[gate_type])
    else:
        out.extend(base, scale=-1)
    return out


def spin_echo_zz(gate_half: PulseSchedule, echo: EchoSpec) -> PulseSchedule:
    '''
    [half, π-pulses, half, π-pulses] with the π-pulses as instantaneous qubit
    operations; echo.placement selects which pulse pairs are present.

    With differing axes (x on one ion, y on the other) the σ_y⊗σ_y part of
    the residual S_{y,ψ}² term changes sign in the second half, while S_z²
    is unaffected by either choice.
    '''
    if not isinstance(echo, EchoSpec):
        raise TypeError("Expected an EchoSpec, got %s" % type(echo).__name__)
    out = gate_half.copy()
    if echo.between:
        out.addInstant(echo.pulse, "pi %s%s" % (echo.axis_ion1, echo.axis_ion2))
    out.extend(gate_half)
    if echo.after:
        out.addInstant(echo.pulse, "pi %s%s" % (echo.axis_ion1, echo.axis_ion2))
    return out


def echo_compose(half: Operator, echo: EchoSpec) -> Operator:
    '''
    The same sequence for a qubit-level unitary of one half: P·V·P·V with
    the pairs P present as echo.placement says.
    '''
    if half.space != HilbertSpace(2):
        raise ValueError("echo_compose expects a two-qubit operator, got %s" % repr(half.space))
    p = echo.pulse
    u = half
    if echo.between:
        u = p @ u
    u = half @ u
    if echo.after:
        u = p @ u
    return u
