# Load all imports using helper
from ._helpers import *

import unittest
import numpy as np
from numpy.testing import assert_allclose

#%%
class TestOperatorCore(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(1234)

    #%%
    def test_hilbert_space_dims_and_index(self):
        s = bichro.HilbertSpace(2, 40)
        self.assertEqual(s.dim, 164)
        self.assertEqual(s.index("dd", 0), 0)
        self.assertEqual(s.index("du", 0), 41)
        self.assertEqual(s.index("uu", 3), 3 * 41 + 3)
        self.assertEqual(bichro.HilbertSpace(2).dim, 4)
        self.assertEqual(bichro.HilbertSpace(0, 5).dim, 6)

        with self.assertRaises(ValueError):
            bichro.HilbertSpace(2, 0)
        with self.assertRaises(ValueError):
            s.index("dx", 0)
        with self.assertRaises(ValueError):
            s.index("dd", 41)

    #%%
    def test_fock_ops(self):
        a, ad, n = bichro.fock_ops(1)
        expected = np.zeros((2, 2))
        expected[0, 1] = 1
        assert_allclose(a.matrix, expected)

        a, ad, n = bichro.fock_ops(5)
        assert_allclose(ad.matrix, a.matrix.conj().T)
        comm = (a @ ad - ad @ a).matrix
        # Identity except for the truncation corner
        assert_allclose(comm[:5, :5], np.eye(5), atol=1e-14)
        self.assertNotAlmostEqual(comm[5, 5].real, 1.0)

        psi = bichro.StateVector.basis(n.space, 3)
        self.assertAlmostEqual(n.expectation(psi).real, 3.0, places=12)

    #%%
    def test_operator_space_checks(self):
        sx = bichro.collective_spin(2, 'x')
        a, _, _ = bichro.fock_ops(3)
        with self.assertRaises(ValueError):
            sx + a
        with self.assertRaises(TypeError):
            sx * sx
        with self.assertRaises(ValueError):
            bichro.Operator(np.eye(3), bichro.HilbertSpace(1))
        with self.assertRaises(ValueError):
            bichro.Operator(np.array([[0, 1], [0, 0]]), bichro.HilbertSpace(1), hermitian=True)

    #%%
    def test_displacement_ground_overlap(self):
        self.assertTrue(bichro.displacement(0, 10).allclose(
            bichro.Operator.identity(bichro.HilbertSpace(0, 10)), atol=1e-14))
        d = bichro.displacement(1.0, 40)
        self.assertAlmostEqual(d.matrix[0, 0].real, np.exp(-0.5), delta=1e-9)
        self.assertTrue(d.isUnitary())

    #%%
    def test_displacement_composition(self):
        # D(α)D(β) = D(α+β) exp(i Im(αβ*)), on the block away from the truncation edge
        pairs = [(0.3, 0.2j)]
        for _ in range(100):
            r = self.rng.uniform(0, 1, 2)
            th = self.rng.uniform(0, 2 * np.pi, 2)
            pairs.append(tuple(r * np.exp(1j * th)))
        for alpha, beta in pairs:
            lhs = (bichro.displacement(alpha, 40) @ bichro.displacement(beta, 40)).matrix
            rhs = bichro.displacement(alpha + beta, 40).matrix * np.exp(1j * np.imag(alpha * np.conj(beta)))
            self.assertLess(np.max(np.abs(lhs - rhs)[:20, :10]), 1e-9)

    #%%
    def test_displacement_guard(self):
        with self.assertRaises(bichro.CutoffError):
            bichro.displacement(3.0, 8)

    #%%
    def test_collective_spin(self):
        sz = bichro.collective_spin(2, 'z')
        assert_allclose(sz.matrix, np.diag([-2, 0, 0, 2]), atol=1e-15)

        sy = bichro.collective_spin(2, 'y')
        sx_phi = bichro.collective_spin(2, 'x', np.pi / 2)
        assert_allclose(sx_phi.matrix, sy.matrix, atol=1e-15)

        sx = bichro.collective_spin(2, 'x')
        assert_allclose(sx.commutator(sy).matrix, 2j * sz.matrix, atol=1e-14)

        # S_+ raises: |↓↓⟩ -> |↑↓⟩ + |↓↑⟩
        sp = bichro.collective_spin(2, 'plus')
        out = sp.matrix @ np.array([1, 0, 0, 0])
        assert_allclose(out, [0, 1, 1, 0])

        with self.assertRaises(ValueError):
            bichro.collective_spin(2, 'w')

    #%%
    def test_rotated_spin(self):
        sy = bichro.collective_spin(2, 'y')
        sz = bichro.collective_spin(2, 'z')
        sx = bichro.collective_spin(2, 'x')
        self.assertTrue(bichro.rotated_spin(2, 'y', 0.0).allclose(sy, atol=1e-15))
        self.assertTrue(bichro.rotated_spin(2, 'y', np.pi / 2).allclose(sz, atol=1e-12))

        for psi in (0.3, 1.1, -2.0):
            sy_p = bichro.rotated_spin(2, 'y', psi)
            sz_p = bichro.rotated_spin(2, 'z', psi)
            # Same Lie algebra as (S_x, S_y, S_z)
            assert_allclose(sx.commutator(sy_p).matrix, 2j * sz_p.matrix, atol=1e-12)
            assert_allclose(sy_p.commutator(sz_p).matrix, 2j * sx.matrix, atol=1e-12)
            assert_allclose(sz_p.commutator(sx).matrix, 2j * sy_p.matrix, atol=1e-12)
            # Orthogonal change of basis
            assert_allclose((sy_p @ sy_p + sz_p @ sz_p).matrix,
                            (sy @ sy + sz @ sz).matrix, atol=1e-12)

    #%%
    def test_thermal_state(self):
        rho = bichro.thermal_state(0.0, 10)
        expected = np.zeros((11, 11))
        expected[0, 0] = 1
        assert_allclose(rho.matrix, expected, atol=1e-15)

        rho = bichro.thermal_state(2.0, 40)
        self.assertAlmostEqual(rho.populations()[0], 1 / 3, delta=1e-6)
        self.assertAlmostEqual(rho.tail_mass, (2 / 3)**41, places=15)
        self.assertLess(rho.tail_mass, 1e-6)
        self.assertAlmostEqual(rho.trace(), 1.0, places=12)

        with self.assertRaises(bichro.CutoffError):
            bichro.thermal_state(2.0, 10)

    #%%
    def test_partial_traces(self):
        psi = bichro.StateVector.fromKets(bichro.HilbertSpace(2), {"dd": 1, "uu": -1j})
        rho_q = psi.toDensity()
        rho_m = bichro.thermal_state(0.5, 30)
        rho = rho_q.tensor(rho_m)

        out_q = bichro.partial_trace_motion(rho)
        assert_allclose(out_q.matrix, rho_q.matrix, atol=1e-10)
        self.assertAlmostEqual(out_q.trace(), rho.trace(), delta=1e-10)

        out_m = bichro.partial_trace_qubits(rho)
        assert_allclose(out_m.matrix, rho_m.matrix, atol=1e-10)

    #%%
    def test_matrix_sqrt_psd(self):
        assert_allclose(bichro.matrix_sqrt_psd(np.eye(4)), np.eye(4), atol=1e-14)

        a = self.rng.normal(size=(6, 6)) + 1j * self.rng.normal(size=(6, 6))
        m = a @ a.conj().T
        r = bichro.matrix_sqrt_psd(m)
        assert_allclose(r @ r, m, atol=1e-8)

        # Tiny negative eigenvalues are clamped
        r = bichro.matrix_sqrt_psd(np.diag([1.0, -1e-10]))
        assert_allclose(r, np.diag([1.0, 0.0]), atol=1e-12)

        with self.assertRaises(bichro.NonPSDError):
            bichro.matrix_sqrt_psd(np.diag([1.0, -1e-3]))

    #%%
    def test_hermitian_expm(self):
        sz = bichro.collective_spin(1, 'z')
        u = bichro.hermitian_expm(sz, np.pi / 2)
        # σz = diag(-1, 1) for (|↓⟩, |↑⟩)
        assert_allclose(u.matrix, np.diag([-1j, 1j]), atol=1e-15)

        h = bichro.collective_spin(2, 'x') @ bichro.collective_spin(2, 'x') + bichro.collective_spin(2, 'z')
        u = bichro.hermitian_expm(h, -0.7)
        self.assertLess(u.unitarityError(), 1e-10)

        with self.assertRaises(ValueError):
            bichro.hermitian_expm(bichro.collective_spin(2, 'plus'), 1.0)

    #%%
    def test_top_fock_guard(self):
        s = bichro.HilbertSpace(1, 5)
        u = bichro.Operator.identity(s)
        self.assertEqual(bichro.top_fock_population(u), 0.0)

        # Ground inputs sent straight to the top level
        perm = np.eye(s.dim)
        perm[:, [0, 5]] = perm[:, [5, 0]]
        with self.assertRaises(bichro.CutoffError):
            bichro.guard_top_fock(bichro.Operator(perm, s))


if __name__ == '__main__':
    unittest.main()
