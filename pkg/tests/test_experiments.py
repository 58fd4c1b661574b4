import json
import os

import pytest

from diracwalk import ConfigError, SimConfig
from diracwalk.cli import main
from diracwalk.experiments import (run_convergence, run_gatecount, run_klein,
                                   run_zb1d, run_zb3d)


class TestSimConfig:
    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError):
            SimConfig.from_dict({"experiment": "zb1d", "bogus": 1})

    def test_unknown_experiment_rejected(self):
        with pytest.raises(ConfigError):
            SimConfig.from_dict({"experiment": "frobnicate"})

    def test_defaults_merge(self):
        cfg = SimConfig.from_dict({"experiment": "klein", "n": 256})
        assert cfg.n == 256
        assert cfg.omega == pytest.approx(1.4)  # preset survives the override
        assert cfg.unit_system == "atomic"

    def test_hash_deterministic_and_sensitive(self):
        a = SimConfig.from_dict({"experiment": "zb1d"})
        b = SimConfig.from_dict({"experiment": "zb1d"})
        c = SimConfig.from_dict({"experiment": "zb1d", "n": 512})
        assert a.config_hash() == b.config_hash()
        assert a.config_hash() != c.config_hash()


SMALL_ZB = {"experiment": "zb1d", "n": 64, "r": 10, "masses": (0.0, 20.0)}
SMALL_KLEIN = {"experiment": "klein", "n": 128, "r": 16, "T": 2e-4}


class TestRunners:
    def test_zb1d_outputs(self, tmp_path):
        cfg = SimConfig.from_dict({**SMALL_ZB, "out_dir": str(tmp_path)})
        summary = run_zb1d(cfg)
        assert (tmp_path / "zb1d_m0.csv").exists()
        assert (tmp_path / "zb1d_m20.csv").exists()
        assert (tmp_path / "resolved_config.json").exists()
        per = summary["per_mass"]
        assert per["0"]["max_dx_circuit_vs_split"] < 1e-8
        header = (tmp_path / "zb1d_m0.csv").read_text().splitlines()
        assert header[0] == f"# config_sha256: {cfg.config_hash()}"
        assert header[1].startswith("step,time,norm,x_circuit,x_split")

    def test_klein_outputs(self, tmp_path):
        cfg = SimConfig.from_dict({**SMALL_KLEIN, "out_dir": str(tmp_path)})
        summary = run_klein(cfg, density_steps=(0, 16))
        assert len(summary["transmissions"]) == 4
        for fac in ("0", "1", "2", "4"):
            assert (tmp_path / f"klein_V{fac}_trace.csv").exists()
            assert (tmp_path / f"klein_V{fac}_density.csv").exists()

    def test_klein_determinism_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            cfg = SimConfig.from_dict({**SMALL_KLEIN, "out_dir": str(out)})
            run_klein(cfg, density_steps=(0, 16))
        for name in sorted(os.listdir(out1)):
            if name.endswith(".csv"):
                assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_convergence_outputs(self, tmp_path):
        cfg = SimConfig.from_dict({"experiment": "convergence", "n": 32,
                                   "out_dir": str(tmp_path)})
        summary = run_convergence(cfg, r_values=(16, 32, 64), orders=(2,))
        assert "2" in summary["fits"]
        assert (tmp_path / "convergence.csv").exists()

    def test_gatecount_outputs(self, tmp_path):
        cfg = SimConfig.from_dict({"experiment": "gatecount",
                                   "out_dir": str(tmp_path)})
        summary = run_gatecount(cfg, q_values=(4, 5, 6))
        assert summary["per_q"]["4"]["mass_rz"] == 1
        assert summary["per_q"]["6"]["step_potential_rz"] == 1
        assert summary["n_exp_bound_k1_eps1e-3"] > 0

    def test_zb3d_small(self, tmp_path):
        cfg = SimConfig.from_dict({"experiment": "zb3d", "n": 8, "omega": 10.0,
                                   "sigma": 2.5, "r": 8, "T": 0.1,
                                   "out_dir": str(tmp_path)})
        summary = run_zb3d(cfg, check_n=8, check_r=16)
        assert (tmp_path / "zb3d_xy_t0.csv").exists()
        assert (tmp_path / "zb3d_yz_tT.csv").exists()
        assert (tmp_path / "zb3d_agreement.json").exists()
        assert 0.0 < summary["agreement"]["fidelity"] <= 1.0 + 1e-12

    def test_summary_embeds_config_hash(self, tmp_path):
        cfg = SimConfig.from_dict({"experiment": "gatecount",
                                   "out_dir": str(tmp_path)})
        run_gatecount(cfg, q_values=(4,))
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["config_sha256"] == cfg.config_hash()
        resolved = json.loads((tmp_path / "resolved_config.json").read_text())
        assert resolved["experiment"] == "gatecount"


class TestCli:
    def test_success_exit_code(self, tmp_path, capsys):
        code = main(["gatecount", "--out", str(tmp_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert json.loads(out)["experiment"] == "gatecount"

    def test_config_file_with_overrides(self, tmp_path):
        cfg_file = tmp_path / "cfg.json"
        cfg_file.write_text(json.dumps({"n": 64, "r": 4, "masses": [0.0]}))
        code = main(["zb1d", "--config", str(cfg_file), "--r", "6",
                     "--out", str(tmp_path / "run")])
        assert code == 0
        resolved = json.loads((tmp_path / "run" / "resolved_config.json").read_text())
        assert resolved["n"] == 64
        assert resolved["r"] == 6  # flag wins over file

    def test_config_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["zb1d", "--config", str(bad)]) == 2
        good = tmp_path / "unknown.json"
        good.write_text(json.dumps({"frob": 1}))
        assert main(["zb1d", "--config", str(good)]) == 2

    def test_resource_cap_exit_code(self, tmp_path):
        assert main(["zb1d", "--n", str(2**28),
                     "--out", str(tmp_path)]) == 3
