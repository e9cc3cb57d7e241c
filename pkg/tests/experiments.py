# Load all imports using helper
from ._helpers import *

import unittest
import os
import io
import tempfile
import contextlib
import numpy as np
from numpy.testing import assert_allclose

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "configs")

#%%
class TestConfig(unittest.TestCase):
    #%%
    def test_parse_number(self):
        self.assertAlmostEqual(bichro.parse_number("0.5pi"), np.pi / 2, places=15)
        self.assertAlmostEqual(bichro.parse_number("pi"), np.pi, places=15)
        self.assertAlmostEqual(bichro.parse_number("-2pi"), -2 * np.pi, places=15)
        self.assertEqual(bichro.parse_number("1e-3"), 1e-3)
        self.assertEqual(bichro.parse_number(3), 3.0)
        with self.assertRaises(bichro.ConfigError):
            bichro.parse_number("abc")

    #%%
    def test_parse_grid(self):
        assert_allclose(bichro.parse_grid("0:1:5"), [0, 0.25, 0.5, 0.75, 1.0])
        assert_allclose(bichro.parse_grid("0:2pi:4:open"), [0, np.pi / 2, np.pi, 3 * np.pi / 2])
        assert_allclose(bichro.parse_grid("0, 0.5pi"), [0, np.pi / 2])
        assert_allclose(bichro.parse_grid("3,2,1"), [3, 2, 1])
        self.assertEqual(len(bichro.parse_grid("0.2")), 1)

        for bad in ("1,0.5,2", "0:1:0", "0:1", "0:1:3:closed", "", "0:1:x"):
            with self.assertRaises(bichro.ConfigError):
                bichro.parse_grid(bad)

    #%%
    def test_from_string(self):
        cfg = bichro.ExperimentConfig.fromString(
            "# MS gate\n"
            "gate_type = ms\n"
            "eta = 0.05  # Lamb-Dicke factor\n"
            "Omega = 0.221\n"
            "epsilon = 0.04\n"
            "zeta_grid = 0:1pi:3\n"
            "lamb_dicke = yes\n"
        )
        self.assertEqual(cfg['gate_type'], "ms")
        self.assertEqual(cfg['eta'], 0.05)
        self.assertEqual(cfg['omega'], 0.221)
        self.assertTrue(cfg['lamb_dicke'])
        assert_allclose(cfg['zeta_grid'], [0, np.pi / 2, np.pi])
        self.assertNotIn('delta', cfg)

        p = cfg.toGateParams()
        self.assertAlmostEqual(p.delta, 0.96, places=14)
        self.assertEqual(p.mode(), "ms")
        self.assertAlmostEqual(cfg.toGateParams(zeta=0.3).zeta, 0.3)

    #%%
    def test_invalid_configs(self):
        for text in ("bogus = 1", "eta = fast", "experiment = fig9", "gate_type = xx",
                     "n_max = 0", "steps_per_cycle = 32", "no equals sign here"):
            with self.assertRaises(bichro.ConfigError):
                bichro.ExperimentConfig.fromString(text)
        # Configuration errors are validation errors
        self.assertTrue(issubclass(bichro.ConfigError, ValueError))

        with self.assertRaises(bichro.ConfigError):
            bichro.ExperimentConfig.fromString("eta = 0.05\nepsilon = 0.04").toGateParams()
        with self.assertRaises(bichro.ConfigError):
            bichro.ExperimentConfig.fromString("eta = 0.05\nomega = 0.1\nepsilon = 0.04").toGateParams()
        with self.assertRaises(bichro.ConfigError):
            bichro.ExperimentConfig.fromConfig(os.path.join(CONFIG_DIR, "missing.ini"))

    #%%
    def test_digest(self):
        a = bichro.ExperimentConfig.fromString("eta = 0.05\nepsilon = 0.04\nzeta_grid = 0:1:3")
        b = bichro.ExperimentConfig.fromString("zeta_grid = 0,0.5,1\nepsilon = 0.04\neta = 5e-2")
        self.assertEqual(a.digest, b.digest)
        self.assertEqual(len(a.digest), 64)
        c = bichro.ExperimentConfig.fromString("eta = 0.05\nepsilon = 0.05\nzeta_grid = 0:1:3")
        self.assertNotEqual(a.digest, c.digest)

        # Output path and worker count do not enter the hash
        d = a.withOverrides(out="elsewhere/fig5.csv", workers=4)
        self.assertEqual(d.digest, a.digest)
        self.assertNotEqual(a.withOverrides(n_max=12).digest, a.digest)

    #%%
    def test_with_overrides(self):
        cfg = bichro.ExperimentConfig.fromDictionary({'n_max': 40, 'eta': 0.05})
        new = cfg.withOverrides(n_max=16, out=None)
        self.assertEqual(new['n_max'], 16)
        self.assertNotIn('out', new)
        self.assertEqual(cfg['n_max'], 40)
        with self.assertRaises(bichro.ConfigError):
            cfg.withOverrides(steps_per_cycle=10)

    #%%
    def test_shipped_configs(self):
        for name in ("calibrate", "fig3", "fig3_zeta", "fig4", "fig5", "sweep", "table1"):
            cfg = bichro.ExperimentConfig.fromConfig(os.path.join(CONFIG_DIR, name + ".ini"))
            self.assertIn(cfg['experiment'], bichro.EXPERIMENTS)
        cfg = bichro.ExperimentConfig.fromConfig(os.path.join(CONFIG_DIR, "fig4.ini"))
        self.assertEqual(len(cfg['zeta_grid']), 33)
        self.assertAlmostEqual(cfg['phi'], np.pi / 2, places=15)

    #%%
    def test_resolve_config(self):
        cfg = bichro.experiments.resolve_config("fig5")
        self.assertEqual(cfg['experiment'], "fig5")
        self.assertEqual(cfg['n_max'], 20)
        self.assertEqual(cfg['steps_per_cycle'], 256)
        self.assertEqual(len(cfg['zeta_grid']), 17)

        own = bichro.ExperimentConfig({'experiment': 'fig5', 'n_max': 12})
        self.assertEqual(bichro.experiments.resolve_config("fig5", own)['n_max'], 12)
        with self.assertRaises(bichro.ConfigError):
            bichro.experiments.resolve_config("fig3", own)
        with self.assertRaises(bichro.ConfigError):
            bichro.experiments.resolve_config("fig6")


#%%
class TestResults(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    #%%
    def test_rows_and_columns(self):
        t = bichro.ResultTable(["zeta", "infidelity"])
        t.addRow(0.0, 1e-6)
        t.addRows([[0.1, 2e-6], [0.2, 3e-6]])
        self.assertEqual(len(t), 3)
        assert_allclose(t.column("infidelity"), [1e-6, 2e-6, 3e-6])
        with self.assertRaises(ValueError):
            t.addRow(0.3)
        with self.assertRaises(ValueError):
            bichro.ResultTable(["a", "a"])
        with self.assertRaises(ValueError):
            bichro.ResultTable([])

    #%%
    def test_csv_round_trip(self):
        path = os.path.join(self.tmp.name, "sub", "t.csv")
        t = bichro.ResultTable(["omega", "d"], [(0.2, 1 / 3), (0.25, 2e-9)])
        t.setMeta("experiment", "fig5")
        t.setMeta("config_sha256", "ab" * 32)
        self.assertEqual(t.toCsv(path), path)

        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().split("\n")
        # Header sorted by key, then the column row
        self.assertEqual(lines[0], "# config_sha256: " + "ab" * 32)
        self.assertEqual(lines[1], "# experiment: fig5")
        self.assertEqual(lines[2], "omega,d")
        self.assertEqual(lines[3], "0.2,0.333333333333")

        back = bichro.ResultTable.fromCsv(path)
        self.assertEqual(back.columns, ["omega", "d"])
        self.assertEqual(back.meta, {'config_sha256': "ab" * 32, 'experiment': "fig5"})
        assert_allclose(back.column("d"), [1 / 3, 2e-9], rtol=1e-11)


#%%
class TestExperiments(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def _run(self, experiment, **values):
        values['out'] = os.path.join(self.tmp.name, "%s.csv" % experiment)
        path, summary = bichro.experiments.run(bichro.ExperimentConfig(values), experiment)
        return bichro.ResultTable.fromCsv(path), summary

    #%%
    def test_calibrate(self):
        table, summary = self._run("calibrate")
        self.assertIn("calibrate: ms seed 0.2000", summary)
        self.assertTrue(summary.endswith(".csv"))
        self.assertEqual(len(table), 1)
        self.assertTrue(0.216 < table.column("omega")[0] < 0.226)
        self.assertEqual(table.meta['experiment'], "calibrate")
        self.assertEqual(len(table.meta['config_sha256']), 64)
        self.assertIn("numpy=", table.meta['versions'])

    #%%
    def test_table1(self):
        table, summary = self._run("table1")
        self.assertEqual(summary.split(" -> ")[0], "table1: eta=0.1 n_t=100 omega zz 0.07906 ms 0.025")
        self.assertEqual(list(table.column("quantity")), ["omega", "saturation", "coupling_ratio"])
        assert_allclose(table.column("zz"), [1 / (4 * np.sqrt(10)), 2 / 30, 0.8 / 3], rtol=1e-11)
        assert_allclose(table.column("ms"), [0.025, 0.0025, 1 / 60000], rtol=1e-11)

    #%%
    def test_reproducible_output(self):
        # Same physics, different output path and worker count
        a = bichro.experiments.run(bichro.ExperimentConfig(
            {'out': os.path.join(self.tmp.name, "a.csv"), 'time_grid': "0:20:3"}), "fig3")[0]
        b = bichro.experiments.run(bichro.ExperimentConfig(
            {'out': os.path.join(self.tmp.name, "sub", "b.csv"), 'time_grid': "0:20:3",
             'workers': 2}), "fig3")[0]
        with open(a, "rb") as fa, open(b, "rb") as fb:
            self.assertEqual(fa.read(), fb.read())

    #%%
    def test_workers_match_serial(self):
        serial, _ = self._run("fig3", time_grid="0:30:4", workers=1)
        pooled, _ = self._run("fig3", time_grid="0:30:4", workers=3)
        for col in serial.columns:
            assert_allclose(pooled.column(col), serial.column(col), rtol=0, atol=0)

    #%%
    def test_fig3_carrier_phase(self):
        peaks = []
        for zeta in ("0", "0.5pi"):
            table, summary = self._run("fig3", zeta=zeta, time_grid="240:260:41")
            self.assertTrue(summary.startswith("fig3: zeta="))
            fid = table.column("fidelity")
            self.assertTrue(np.all((fid >= 0) & (fid <= 1 + 1e-12)))
            self.assertTrue(np.all(table.column("p_dd") + table.column("p_uu") <= 1 + 1e-12))
            peaks.append(fid.max())
        self.assertGreater(peaks[0], 0.95)
        self.assertLess(peaks[1], peaks[0])

    #%%
    def test_fig5_two_points(self):
        table, _ = self._run("fig5", zeta_grid="0,0.5pi")
        self.assertEqual(table.columns, ["zeta", "d_exact_vs_effective", "d_exact_vs_ideal_psi",
                                         "d_exact_vs_ideal_y", "d_exact_vs_pert"])
        self.assertTrue(np.all(table.column("d_exact_vs_effective") < 1e-2))
        self.assertTrue(np.all(table.column("d_exact_vs_ideal_psi")
                               <= table.column("d_exact_vs_ideal_y") + 1e-6))
        # At ζ = π/2 the rotated axis matters
        self.assertGreaterEqual(table.column("d_exact_vs_ideal_y")[1],
                                3 * table.column("d_exact_vs_ideal_psi")[1])

    #%%
    def test_fig4_zeta_robustness(self):
        # Every π/4 in ζ; 0:2pi:9 adds only 2π, the same point as 0
        table, summary = self._run("fig4", zeta_grid="0:2pi:8:open", workers=4)
        self.assertTrue(summary.startswith("fig4: 8 points"))
        self.assertEqual(table.columns, ["zeta", "infidelity_shaped", "infidelity_constant",
                                         "mean_phonon_shaped"])
        self.assertTrue(np.all(table.column("infidelity_shaped") <= 1e-4))
        self.assertTrue(np.all(table.column("mean_phonon_shaped") < 1e-4))
        constant = table.column("infidelity_constant")
        self.assertLessEqual(constant.min(), 1e-3)
        self.assertGreaterEqual(constant.max(), 0.15)

    #%%
    def test_run_needs_experiment(self):
        with self.assertRaises(bichro.ConfigError):
            bichro.experiments.run(bichro.ExperimentConfig())


#%%
class TestCli(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def _main(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = bichro.cli.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    #%%
    def test_success(self):
        path = os.path.join(self.tmp.name, "table1.csv")
        code, out, _ = self._main("table1", "--config", os.path.join(CONFIG_DIR, "table1.ini"),
                                  "--out", path)
        self.assertEqual(code, bichro.cli.EXIT_OK)
        self.assertEqual(out.strip(), "table1: eta=0.1 n_t=100 omega zz 0.07906 ms 0.025 -> %s" % path)
        self.assertTrue(os.path.isfile(path))

        path = os.path.join(self.tmp.name, "calibrate.csv")
        code, out, _ = self._main("calibrate", "--config", os.path.join(CONFIG_DIR, "calibrate.ini"),
                                  "--out", path)
        self.assertEqual(code, bichro.cli.EXIT_OK)
        self.assertTrue(out.startswith("calibrate: ms seed 0.2000 converged "))
        self.assertTrue(0.216 < bichro.ResultTable.fromCsv(path).column("omega")[0] < 0.226)

    #%%
    def test_invalid_config(self):
        cfg = os.path.join(self.tmp.name, "bad.ini")
        with open(cfg, "w") as f:
            f.write("eta = 0.05\nbogus = 1\n")
        code, out, err = self._main("calibrate", "--config", cfg)
        self.assertEqual(code, bichro.cli.EXIT_INVALID)
        self.assertEqual(out, "")
        self.assertIn("bogus", err)

        code, _, _ = self._main("calibrate", "--steps-per-cycle", "16",
                                "--out", os.path.join(self.tmp.name, "c.csv"))
        self.assertEqual(code, bichro.cli.EXIT_INVALID)

        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                bichro.cli.main(["fig9"])

    #%%
    def test_numerical_guard(self):
        cfg = os.path.join(self.tmp.name, "fig5.ini")
        with open(cfg, "w") as f:
            f.write("experiment = fig5\nzeta_grid = 0\n")
        code, out, err = self._main("fig5", "--config", cfg, "--fock-cutoff", "1",
                                    "--out", os.path.join(self.tmp.name, "fig5.csv"))
        self.assertEqual(code, bichro.cli.EXIT_NUMERICAL)
        self.assertEqual(out, "")
        self.assertIn("numerical failure", err)


if __name__ == '__main__':
    unittest.main()
