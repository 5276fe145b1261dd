import csv
import json
import math

import pytest

from fluxcat.cli import EXPERIMENTS, main, run_sweep, validate_config, write_results
from fluxcat.errors import ConfigError
from fluxcat.meanfield import phase_boundary


def cfg(**kw):
    return json.dumps(kw)


class TestValidate:
    def test_minimal_bitflip_defaults(self):
        c = validate_config(cfg(fixed={"E_c": 0.1, "E_l": 0.1}, sweep={"name": "E_j", "values": [3.0]}), "bitflip")
        assert c.fixed["kT"] == 1.0
        assert c.fixed["x2"] == 1e-5
        assert c.fixed["delta_phi_e"] == pytest.approx(0.03 * math.pi)
        assert c.numerics["n_points"] == 801

    def test_units(self):
        c = validate_config(cfg(fixed={"E_c": "100 MHz", "E_l": 0.1, "delta_phi_e": "0.05 pi"},
                                sweep={"name": "E_j", "values": ["3 GHz"]}), "bitflip")
        assert c.fixed["E_c"] == pytest.approx(0.1)
        assert c.fixed["delta_phi_e"] == pytest.approx(0.05 * math.pi)
        assert c.axes[0].values == (3.0,)

    def test_range_and_log(self):
        c = validate_config(cfg(fixed={"E_l": 1.0, "E_c": 0.1},
                                sweep={"name": "E_j", "start": 1, "stop": 100, "count": 3, "scale": "log"}),
                            "splitting")
        assert c.axes[0].values == pytest.approx((1, 10, 100))

    def test_negative_energy_named(self):
        with pytest.raises(ConfigError) as exc:
            validate_config(cfg(fixed={"E_c": -0.1, "E_l": 0.1}, sweep={"name": "E_j", "values": [1]}), "bitflip")
        assert any("E_c" in e for e in exc.value.errors)

    def test_foreign_sweep_parameter(self):
        with pytest.raises(ConfigError) as exc:
            validate_config(cfg(fixed={"E_c": 0.1, "E_l": 0.1, "E_j": 1.0}, sweep={"name": "n_max", "values": [1]}),
                            "bitflip")
        assert any("n_max" in e for e in exc.value.errors)

    def test_empty_values(self):
        with pytest.raises(ConfigError) as exc:
            validate_config(cfg(fixed={"E_c": 0.1, "E_l": 0.1}, sweep={"name": "E_j", "values": []}), "bitflip")
        assert any("nonempty" in e for e in exc.value.errors)

    def test_all_errors_at_once(self):
        text = cfg(fixed={"E_c": -0.1, "E_l": "3 ns", "foo": 1}, sweep={"name": "E_j", "values": []}, bogus=1)
        with pytest.raises(ConfigError) as exc:
            validate_config(text, "bitflip")
        joined = "\n".join(exc.value.errors)
        for needle in ("bogus", "E_c", "'ns'", "foo", "nonempty"):
            assert needle in joined
        assert len(exc.value.errors) >= 5

    def test_experiment_mismatch(self):
        with pytest.raises(ConfigError):
            validate_config(cfg(experiment="overlap", fixed={}, sweep={"name": "E_j", "values": [1]}), "bitflip")

    def test_bad_json(self):
        with pytest.raises(ConfigError):
            validate_config("{", "bitflip")

    def test_numerics_checked(self):
        with pytest.raises(ConfigError):
            validate_config(cfg(fixed={"E_c": 0.1, "E_l": 0.1}, sweep={"name": "E_j", "values": [1]},
                                numerics={"n_points": "many", "dims": 3}), "bitflip")

    def test_every_experiment_has_runner_defaults(self):
        assert len(EXPERIMENTS) == 9
        for exp in EXPERIMENTS.values():
            assert exp.primary


class TestRunSweep:
    def test_phase_diagram_tracks_boundary(self):
        ratios = [0.0, 0.5, 1.0, 2.0]
        ej = [round(0.5 + 0.05 * i, 4) for i in range(71)]
        c = validate_config(cfg(fixed={"E_l": 1.0}, sweep=[{"name": "E_c", "values": [max(r, 1e-6) for r in ratios]},
                                                           {"name": "E_j", "values": ej}]), "phase_diagram")
        res = run_sweep(c)
        assert res.n_failed == 0
        for r in ratios:
            rows = [row for row in res.rows if row["E_c"] == max(r, 1e-6)]
            onset = min(row["E_j"] for row in rows if row["alpha_opt"] > 1e-3)
            assert abs(onset / phase_boundary(r) - 1) <= 0.1

    def test_splitting_slope(self):
        c = validate_config(cfg(fixed={"E_l": 1.0, "E_c": 0.1}, sweep={"name": "E_j", "start": 0.1, "stop": 1.0,
                                                                        "count": 6}), "splitting")
        rows = run_sweep(c).rows
        n = [r["N"] for r in rows]
        le = [r["log_eps01"] for r in rows]
        slope = (le[-1] - le[0]) / (n[-1] - n[0])
        assert slope < 0

    def test_parallel_matches_serial(self, tmp_path):
        text = cfg(fixed={"E_c_node": 1.0, "E_j": 5.0}, sweep={"name": "E_q", "values": [0.025, 0.05, 0.1]},
                   numerics={"n_max": 6})
        c = validate_config(text, "qps_pair")
        a, b = run_sweep(c, jobs=1), run_sweep(c, jobs=2)
        pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
        write_results(a, pa)
        write_results(b, pb)
        assert pa.read_bytes() == pb.read_bytes()
        assert a.manifest["config_sha256"] == b.manifest["config_sha256"]

    def test_failed_point_recorded(self):
        c = validate_config(cfg(fixed={"E_c": 0.5, "E_l": 0.5}, sweep={"name": "E_j", "values": [0.3, 10.0]}),
                            "phaseflip")
        res = run_sweep(c)
        assert res.rows[0]["error"]  # no localized well states in the trivial phase
        assert not res.rows[1]["error"]

    def test_verify_convergence(self):
        c = validate_config(cfg(fixed={"E_c": 0.5, "E_l": 0.5, "E_j_min": 0.1},
                                sweep={"name": "E_j_max", "values": [10.0]}), "xgate")
        row = run_sweep(c, verify_convergence=True).rows[0]
        assert row["error"] == ""
        assert row["gate_error"] <= 1e-3
        assert row["converged"] == 1


class TestMain:
    def test_end_to_end(self, tmp_path, capsys):
        conf = tmp_path / "c.json"
        conf.write_text(cfg(fixed={"E_c": 0.1, "E_l": 1.0}, sweep={"name": "E_j", "values": [2.0, 5.0]}))
        out = tmp_path / "o.csv"
        assert main(["overlap", "--config", str(conf), "--out", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert [float(r["E_j"]) for r in rows] == [2.0, 5.0]
        assert all(r["error"] == "" for r in rows)
        manifest = json.loads(out.with_suffix(".manifest.json").read_text())
        assert manifest["n_points"] == 2 and len(manifest["config_sha256"]) == 64

    def test_config_error_exit(self, tmp_path, capsys):
        conf = tmp_path / "c.json"
        conf.write_text(cfg(fixed={"E_c": -1}, sweep={"name": "E_j", "values": []}))
        assert main(["overlap", "--config", str(conf)]) == 2
        assert "E_c" in capsys.readouterr().err

    def test_failure_exit(self, tmp_path):
        conf = tmp_path / "c.json"
        conf.write_text(cfg(fixed={"E_c": 0.5, "E_l": 0.5}, sweep={"name": "E_j", "values": [0.3]}))
        assert main(["phaseflip", "--config", str(conf), "--out", str(tmp_path / "p.csv")]) == 1

    def test_env_jobs(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FLUXCAT_JOBS", "2")
        conf = tmp_path / "c.json"
        conf.write_text(cfg(fixed={"E_c_node": 1.0, "E_j": 5.0}, sweep={"name": "E_q", "values": [0.05, 0.1]},
                            numerics={"n_max": 6}))
        out = tmp_path / "q.csv"
        assert main(["qps_pair", "--config", str(conf), "--out", str(out)]) == 0
        assert json.loads(out.with_suffix(".manifest.json").read_text())["jobs"] == 2
