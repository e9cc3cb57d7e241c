import unittest
from ._helpers import *
import time
import numpy as np

class TestBenchmarks(unittest.TestCase):
    def setUp(self):
        self.ms = bichro.GateParams.forGate("ms", eta=0.05, omega=0.221, epsilon=0.04)
        self.cycles = 5

    def _timeEvolve(self, n_max, lamb_dicke=False, order=4):
        sim = bichro.GateSimulator(2, n_max)
        t_final = self.cycles * 2 * np.pi
        t1 = time.time()
        sim.evolveUnitary(self.ms, t_final=t_final, lamb_dicke=lamb_dicke, order=order, guard=False)
        t2 = time.time()
        steps = self.cycles * 256
        print("dim %d (n_max=%d, %s, order %d): %d steps at %f steps/s." % (
            sim.space.dim, n_max, "Lamb-Dicke" if lamb_dicke else "full", order,
            steps, steps / (t2 - t1)))

    def test_benchmarks_evolve_unitary(self):
        for n_max in (10, 20, 40):
            self._timeEvolve(n_max)

        # Don't actually need to assert anything

    def test_benchmarks_evolve_variants(self):
        self._timeEvolve(20, lamb_dicke=True)
        self._timeEvolve(20, order=2)

    def test_benchmarks_effective(self):
        length = 200
        t1 = time.time()
        for t in np.linspace(0, self.ms.gate_time, length):
            bichro.ms_propagator(self.ms, t, n_max=40)
        t2 = time.time()
        print("%d effective MS propagators (n_max=40) at %f/s." % (length, length / (t2 - t1)))

        t1 = time.time()
        bichro.ms_thermal_qubit_state(self.ms, 2.0, self.ms.gate_time)
        t2 = time.time()
        print("Thermal qubit state (n_bar=2) in %f s." % (t2 - t1))


if __name__ == "__main__":
    unittest.main()
