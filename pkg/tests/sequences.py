# Load all imports using helper
from ._helpers import *

import unittest
import numpy as np
from numpy.testing import assert_allclose

#%%
class TestSequences(unittest.TestCase):
    def setUp(self):
        self.q2 = bichro.HilbertSpace(2)

    #%%
    def test_echo_spec(self):
        spec = bichro.EchoSpec("x", "y", "between")
        self.assertTrue(spec.between)
        self.assertFalse(spec.after)
        self.assertTrue(bichro.EchoSpec().after)
        with self.assertRaises(ValueError):
            bichro.EchoSpec("z", "x")
        with self.assertRaises(ValueError):
            bichro.EchoSpec("x", "x", "middle")

    #%%
    def test_pi_pulse(self):
        assert_allclose(bichro.pi_pulse("x", "x").matrix, -np.fliplr(np.eye(4)), atol=1e-15)
        # exp(-i(π/2)σ_x) flips one ion
        flip = bichro.pi_pulse("x")
        out = flip @ bichro.StateVector.fromLabel(bichro.HilbertSpace(1), "d")
        self.assertAlmostEqual(abs(out.amplitudes[1]), 1.0, places=15)
        self.assertTrue(bichro.pi_pulse("y", "x").isUnitary())
        with self.assertRaises(ValueError):
            bichro.pi_pulse()
        with self.assertRaises(ValueError):
            bichro.pi_pulse("x", "z")

    #%%
    def test_shaped_envelope(self):
        period = 2 * np.pi
        sched = bichro.shaped_envelope(0.167, 25, 8)
        self.assertEqual(len(sched), 3)
        self.assertAlmostEqual(sched.total_duration, 25 * period, places=10)
        self.assertTrue(sched.isShaped)
        self.assertAlmostEqual(sched.envelope(0.0), 0.0, places=15)
        self.assertAlmostEqual(sched.envelope(4 * period), 0.167 / 2, places=12)
        self.assertAlmostEqual(sched.envelope(12 * period), 0.167, places=15)
        self.assertAlmostEqual(sched.envelope(sched.total_duration), 0.0, places=12)
        self.assertAlmostEqual(sched.integral(), 0.167 * 17 * period, places=10)

        # No flat top when the ramps fill the pulse
        self.assertEqual(len(bichro.shaped_envelope(0.1, 16, 8)), 2)
        with self.assertRaises(ValueError):
            bichro.shaped_envelope(0.1, 10, 6)
        with self.assertRaises(ValueError):
            bichro.shaped_envelope(-0.1, 10, 2)

    #%%
    def test_schedule_from_segment_records(self):
        sched = bichro.shaped_envelope(0.167, 25, 8)
        rebuilt = bichro.PulseSchedule(sched.generate()['segments'])
        self.assertEqual(rebuilt.segments, sched.segments)
        self.assertAlmostEqual(rebuilt.integral(), sched.integral(), places=14)
        self.assertFalse(hasattr(bichro.PulseSchedule, "fromDictionary"))

        with self.assertRaises(ValueError):
            bichro.PulseSchedule([{'duration': 4.0, 'shape': "ramp_up", 'amplitude': 0.1},
                                  {'duration': 4.0, 'shape': "flat", 'amplitude': 0.2}])

    #%%
    def test_sign_flip_layout(self):
        base = bichro.shaped_envelope(0.1, 6, 2)
        flip = bichro.two_pulse_sign_flip(base, "ms")
        self.assertEqual(len(flip), 2 * len(base))
        self.assertAlmostEqual(flip.total_duration, 2 * base.total_duration, places=12)
        for seg in flip.segments[:3]:
            self.assertEqual(seg.zeta_offset, 0.0)
        for seg in flip.segments[3:]:
            self.assertAlmostEqual(seg.zeta_offset, np.pi, places=15)
            self.assertEqual(seg.scale, 1)

        zz = bichro.two_pulse_sign_flip(base, "zz")
        self.assertAlmostEqual(zz.segments[-1].zeta_offset, np.pi / 2, places=15)

        neg = bichro.two_pulse_sign_flip(base, "ms", mechanism="omega")
        self.assertEqual([s.scale for s in neg.segments], [1, 1, 1, -1, -1, -1])
        self.assertLess(neg.sample(neg.total_duration * 0.75)[0], 0.0)

    #%%
    def test_sign_flip_errors(self):
        base = bichro.shaped_envelope(0.1, 6, 2)
        with self.assertRaises(ValueError):
            bichro.two_pulse_sign_flip(bichro.PulseSchedule.constant(0.1, 10.0), "ms")
        with self.assertRaises(bichro.ModeError):
            bichro.two_pulse_sign_flip(base, "xx")
        with self.assertRaises(ValueError):
            bichro.two_pulse_sign_flip(base, "ms", mechanism="phi")

    #%%
    def test_sign_flip_zero_drive(self):
        p = bichro.GateParams.forGate("ms", 0.05, 0.0, 0.04)
        sched = bichro.two_pulse_sign_flip(bichro.shaped_envelope(0.0, 4, 1), "ms")
        u = bichro.GateSimulator(2, 4).evolveUnitary(p, sched)
        self.assertTrue(u.allclose(bichro.Operator.identity(u.space), atol=1e-12))

    #%%
    def test_ms_sign_flip_mechanisms_agree(self):
        # ζ + π reverses cos(δt + ζ) exactly, like a negated amplitude
        p = bichro.GateParams.forGate("ms", 0.05, 0.2, 0.04, zeta=0.3)
        base = bichro.shaped_envelope(0.2, 4, 1)
        sim = bichro.GateSimulator(2, 12)
        u_zeta = sim.evolveUnitary(p, bichro.two_pulse_sign_flip(base, "ms", "zeta"))
        u_omega = sim.evolveUnitary(p, bichro.two_pulse_sign_flip(base, "ms", "omega"))
        self.assertTrue(u_zeta.allclose(u_omega, atol=1e-10))

    #%%
    def test_spin_echo_zero_drive(self):
        p = bichro.GateParams.forGate("zz", 0.05, 0.0, 0.04)
        half = bichro.PulseSchedule.constant(0.0, 5.0)
        sim = bichro.GateSimulator(2, 3)
        eye_m = bichro.Operator.identity(bichro.HilbertSpace(0, 3))

        full = bichro.spin_echo_zz(half, bichro.EchoSpec("x", "x", "both"))
        self.assertEqual(len(full.instants), 2)
        self.assertAlmostEqual(full.total_duration, 10.0, places=14)
        u = sim.evolveUnitary(p, full)
        # The π-pulse pair squares to the identity
        self.assertTrue(u.allclose(bichro.Operator.identity(u.space), atol=1e-12))

        between = bichro.spin_echo_zz(half, bichro.EchoSpec("x", "y", "between"))
        self.assertAlmostEqual(between.instants[0][0], 5.0, places=14)
        u = sim.evolveUnitary(p, between)
        self.assertTrue(u.allclose(bichro.pi_pulse("x", "y").kron(eye_m), atol=1e-12))

        with self.assertRaises(TypeError):
            bichro.spin_echo_zz(half, "both")

    #%%
    def test_echo_same_axes(self):
        # σ_x⊗σ_x pulses cancel the linear S_z phase and keep S_y², S_z²
        sy = bichro.collective_spin(2, 'y')
        sz = bichro.collective_spin(2, 'z')
        a, b, c = 0.31, 0.7, -0.45
        half = (bichro.hermitian_expm(sy @ sy, a) @ bichro.hermitian_expm(sz @ sz, c))
        u = bichro.echo_compose(half, bichro.EchoSpec("x", "x"))
        expected = bichro.hermitian_expm(sy @ sy, 2 * a) @ bichro.hermitian_expm(sz @ sz, 2 * c)
        self.assertTrue(u.allclose(expected, atol=1e-12))

        half = bichro.hermitian_expm(sz, b) @ bichro.hermitian_expm(sz @ sz, c)
        u = bichro.echo_compose(half, bichro.EchoSpec("x", "x"))
        self.assertTrue(u.allclose(bichro.hermitian_expm(sz @ sz, 2 * c), atol=1e-12))

    #%%
    def test_echo_mixed_axes(self):
        # x on one ion and y on the other flip σ_y⊗σ_y and keep σ_z⊗σ_z
        sy = bichro.collective_spin(2, 'y')
        sz = bichro.collective_spin(2, 'z')
        a, c = 0.31, -0.45
        half = bichro.hermitian_expm(sy @ sy, a) @ bichro.hermitian_expm(sz @ sz, c)
        u = bichro.echo_compose(half, bichro.EchoSpec("x", "y"))
        expected = np.exp(4j * a) * bichro.hermitian_expm(sz @ sz, 2 * c).matrix
        assert_allclose(u.matrix, expected, atol=1e-12)

        with self.assertRaises(ValueError):
            bichro.echo_compose(bichro.pi_pulse("x"), bichro.EchoSpec())

    #%%
    def test_mixed_echo_suppresses_residual(self):
        # Each half is one loop carrying half the phase; ε = ν/49 returns the carrier
        eta, eps, n_max = 0.1, 1 / 49, 16
        omega = bichro.calibrate("zz", eta, eps, loops=2).omega
        p = bichro.GateParams.forGate("zz", eta, omega, eps)
        half = bichro.PulseSchedule.constant(omega, p.t_star)
        sim = bichro.GateSimulator(2, n_max)

        sz = bichro.collective_spin(2, 'z')
        ideal = bichro.hermitian_expm(sz @ sz, 2 * bichro.zz_phase(p, p.t_star))
        distance = {}
        for axes in (("x", "x"), ("x", "y")):
            sched = bichro.spin_echo_zz(half, bichro.EchoSpec(*axes, "both"))
            u = sim.evolveUnitary(p, sched, steps_per_cycle=128)
            distance[axes] = bichro.unitary_distance(u, ideal)
        self.assertGreaterEqual(distance[("x", "x")] / distance[("x", "y")], 5.0)


if __name__ == '__main__':
    unittest.main()
