# -*- coding: utf-8 -*-
"""
Piecewise amplitude schedules for the bichromatic drive.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .operators import Operator


#%%
@dataclass(frozen=True)
class Segment:
    duration: float
    shape: str = "constant"
    amplitude: float = 0.0      # Rabi frequency at the top of the segment, units of nu
    scale: int = 1              # coupling sign, +1 or -1
    zeta_offset: float = 0.0
    phi_offset: float = 0.0

    def value(self, tau):
        '''Unsigned envelope at local time tau in [0, duration].'''
        tau = np.asarray(tau, dtype=np.float64)
        if self.shape == "ramp_up":
            return self.amplitude * np.sin(0.5 * np.pi * tau / self.duration)**2
        if self.shape == "ramp_down":
            return self.amplitude * np.cos(0.5 * np.pi * tau / self.duration)**2
        return self.amplitude * np.ones_like(tau)

    def integral(self) -> float:
        if self.shape in ("ramp_up", "ramp_down"):
            return 0.5 * self.amplitude * self.duration
        return self.amplitude * self.duration


#%%
class PulseSchedule:
    """
    Builder for the amplitude schedule of a gate.

    A schedule is an ordered list of segments plus an optional list of
    instantaneous qubit operations (e.g. echo π-pulses) that sit on segment
    boundaries.

    Each segment has:
        duration     positive, in units of 1/nu
        shape        'constant', 'flat', 'ramp_up' (cos² rise) or 'ramp_down' (cos² fall)
        amplitude    Rabi frequency Ω at the top of the segment
        scale        +1 or -1, the sign of the coupling
        zeta_offset  added to ζ during the segment
        phi_offset   added to φ during the segment

    Example:
    sched = PulseSchedule()
    sched.addSegment(16*np.pi, "ramp_up", 0.167)
    sched.addSegment(18*np.pi, "flat", 0.167)
    sched.addSegment(16*np.pi, "ramp_down", 0.167)

    The unsigned envelope has to be continuous across boundaries, so a
    'flat' after a 'ramp_up' must use the same amplitude.
    """

    shapes = ("constant", "flat", "ramp_up", "ramp_down")
    CONTINUITY_TOL = 1e-12

    # Constructor
    def __init__(self, segments: list=None, instants: list=None):
        self._segments = []
        self._instants = []
        for seg in segments or []:
            self.addSegment(**(asdict(seg) if isinstance(seg, Segment) else seg))
        for when, op, label in instants or []:
            self._instants.append((float(when), op, label))

    def __repr__(self):
        return str(self.generate())

    def __len__(self):
        return len(self._segments)

    def clear(self):
        self._segments = []
        self._instants = []

    @property
    def segments(self) -> list:
        return list(self._segments)

    @property
    def instants(self) -> list:
        return list(self._instants)

    @property
    def total_duration(self) -> float:
        return float(sum(s.duration for s in self._segments))

    def _endValue(self) -> float:
        if not self._segments:
            return None
        last = self._segments[-1]
        return float(last.value(last.duration))

    def addSegment(self, duration: float, shape: str="constant", amplitude: float=0.0,
                   scale: int=1, zeta_offset: float=0.0, phi_offset: float=0.0):
        if duration <= 0:
            raise ValueError("Segment duration must be positive, got %g" % duration)
        if shape not in self.shapes:
            raise ValueError("Invalid segment shape '%s'." % shape)
        if scale not in (1, -1):
            raise ValueError("Segment scale must be +1 or -1, got %s" % scale)
        if amplitude < 0:
            raise ValueError("Segment amplitude must be non-negative, got %g" % amplitude)
        seg = Segment(float(duration), shape, float(amplitude), int(scale),
                      float(zeta_offset), float(phi_offset))
        prev = self._endValue()
        start = float(seg.value(0.0))
        if prev is not None and abs(prev - start) > self.CONTINUITY_TOL:
            raise ValueError("Envelope jumps from %g to %g at t=%g" % (
                prev, start, self.total_duration))
        self._segments.append(seg)

    def addInstant(self, op: Operator, label: str=""):
        '''
        Appends an instantaneous qubit operation at the current end of the
        schedule. It is applied after every segment that ends at or before
        that time.
        '''
        if not isinstance(op, Operator):
            raise TypeError("Instant operations must be Operators.")
        if op.space.hasMotion:
            raise ValueError("Instant operations act on the qubits only.")
        self._instants.append((self.total_duration, op, label))

    def extend(self, other: PulseSchedule, zeta_offset: float=0.0, scale: int=1):
        '''
        Appends all segments and instants of another schedule, optionally
        shifting ζ and flipping the coupling sign of the copied segments.
        '''
        t0 = self.total_duration
        for s in other._segments:
            self.addSegment(s.duration, s.shape, s.amplitude, s.scale * scale,
                            s.zeta_offset + zeta_offset, s.phi_offset)
        for when, op, label in other._instants:
            self._instants.append((t0 + when, op, label))

    def copy(self) -> PulseSchedule:
        out = PulseSchedule()
        out.extend(self)
        return out

    def generate(self) -> dict:
        return {
            'segments': [asdict(s) for s in self._segments],
            'instants': [(t, label) for t, _, label in self._instants]
        }

    #%% Sampling
    def boundaries(self) -> np.ndarray:
        '''Start time of every segment, followed by the end time of the last one.'''
        return np.concatenate(([0.0], np.cumsum([s.duration for s in self._segments])))

    def locate(self, t: float) -> int:
        '''Index of the segment containing t (the last one for t at the end).'''
        b = self.boundaries()
        if t < 0 or t > b[-1] + 1e-12:
            raise ValueError("t=%g is outside the schedule [0, %g]" % (t, b[-1]))
        return int(min(np.searchsorted(b, t, side='right') - 1, len(self._segments) - 1))

    def envelope(self, t: float) -> float:
        '''Unsigned Ω(t).'''
        i = self.locate(t)
        return float(self._segments[i].value(t - self.boundaries()[i]))

    def sample(self, t: float) -> tuple:
        '''
        Returns (signed Ω(t), ζ offset, φ offset) at time t.
        '''
        i = self.locate(t)
        seg = self._segments[i]
        return (seg.scale * float(seg.value(t - self.boundaries()[i])),
                seg.zeta_offset, seg.phi_offset)

    def integral(self) -> float:
        '''∫|Ω(t)| dt over the whole schedule.'''
        return float(sum(s.integral() for s in self._segments))

    @property
    def isShaped(self) -> bool:
        '''True when the envelope starts and ends at zero amplitude.'''
        if not self._segments:
            return False
        return (abs(self.envelope(0.0)) < self.CONTINUITY_TOL
                and abs(self._endValue()) < self.CONTINUITY_TOL)

    #%% Factories
    @classmethod
    def constant(cls, omega: float, duration: float, zeta_offset: float=0.0) -> PulseSchedule:
        return cls([Segment(duration, "constant", omega, 1, zeta_offset)])
