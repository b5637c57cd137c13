import json

import numpy as np

from levy_expfun.cli import (
    EXIT_CONFIG,
    EXIT_DEGENERATE,
    EXIT_IO,
    EXIT_OK,
    SAMPLES_HEADER,
    main,
)


def run(argv):
    return main(argv)


def simulate(tmp_path, name="s.csv", n=500, seed=7, extra=()):
    out = tmp_path / name
    code = run(
        ["simulate", "--model", "exp-jump", "--n", str(n),
         "--seed", str(seed), "--out", str(out), *extra]
    )
    assert code == EXIT_OK
    return out


class TestSimulate:
    def test_writes_header_and_values(self, tmp_path):
        out = simulate(tmp_path, n=10)
        lines = out.read_text().splitlines()
        assert lines[0] == SAMPLES_HEADER
        vals = np.array([float(x) for x in lines[1:]])
        assert vals.size == 10
        assert np.all(vals > 0)

    def test_deterministic_given_seed(self, tmp_path):
        a = simulate(tmp_path, "a.csv", seed=11).read_text()
        b = simulate(tmp_path, "b.csv", seed=11).read_text()
        assert a == b

    def test_env_seed_overrides_flag(self, tmp_path, monkeypatch):
        a = simulate(tmp_path, "a.csv", seed=1)
        monkeypatch.setenv("LEVY_EXPFUN_SEED", "1")
        b = simulate(tmp_path, "b.csv", seed=999)
        assert a.read_text() == b.read_text()

    def test_bad_env_seed_is_config_error(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LEVY_EXPFUN_SEED", "not-a-number")
        code = run(["simulate", "--model", "exp-jump", "--n", "5",
                    "--out", str(tmp_path / "x.csv")])
        assert code == EXIT_CONFIG

    def test_geom_cpp_model(self, tmp_path):
        out = tmp_path / "g.csv"
        code = run(["simulate", "--model", "geom-cpp", "--n", "50",
                    "--seed", "3", "--out", str(out)])
        assert code == EXIT_OK

    def test_bad_model_parameters(self, tmp_path):
        code = run(["simulate", "--model", "exp-jump", "--c", "-1",
                    "--n", "5", "--out", str(tmp_path / "x.csv")])
        assert code == EXIT_CONFIG

    def test_unwritable_output_is_io_error(self, tmp_path):
        code = run(["simulate", "--model", "exp-jump", "--n", "5",
                    "--out", str(tmp_path / "no" / "such" / "dir.csv")])
        assert code == EXIT_IO


class TestEstimate:
    def test_recovers_drift_near_truth(self, tmp_path, capsys):
        src = simulate(tmp_path, n=5000, seed=42)
        out = tmp_path / "est.json"
        code = run(["estimate", "--in", str(src), "--out", str(out)])
        assert code == EXIT_OK
        result = json.loads(out.read_text())
        assert abs(result["c_hat"] - 1.8) < 0.1
        assert abs(result["a_hat"] - 0.7) < 0.3
        printed = capsys.readouterr().out
        assert "c_hat" in printed and "a_hat" in printed

    def test_missing_input_is_io_error(self, tmp_path):
        code = run(["estimate", "--in", str(tmp_path / "nope.csv")])
        assert code == EXIT_IO

    def test_nonnumeric_input_is_config_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a_infinity\nhello\n")
        assert run(["estimate", "--in", str(bad)]) == EXIT_CONFIG

    def test_nonpositive_samples_rejected(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a_infinity\n1.0\n-0.5\n")
        assert run(["estimate", "--in", str(bad)]) == EXIT_CONFIG

    def test_too_few_samples_rejected(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a_infinity\n1.0\n")
        assert run(["estimate", "--in", str(bad)]) == EXIT_CONFIG

    def test_degenerate_denominator_exit_code(self, tmp_path):
        # two samples engineered to cancel at v = pi: ln(a2/a1) = 1
        bad = tmp_path / "cancel.csv"
        bad.write_text(f"a_infinity\n1.0\n{np.e!r}\n")
        code = run(["estimate", "--in", str(bad), "--u", "0",
                    "--epsilon", "0.5", "--v-max", str(np.pi),
                    "--grid-points", "3"])
        assert code == EXIT_DEGENERATE

    def test_bad_grid_flag_is_config_error(self, tmp_path):
        src = simulate(tmp_path, n=10)
        code = run(["estimate", "--in", str(src), "--epsilon", "2.0"])
        assert code == EXIT_CONFIG


class TestInvert:
    def test_writes_density_csv(self, tmp_path):
        src = simulate(tmp_path, n=2000, seed=5)
        out = tmp_path / "dens.csv"
        code = run(["invert", "--in", str(src), "--u", "2", "--v-max", "8",
                    "--grid-points", "101", "--x-min", "0.5", "--x-max", "5",
                    "--x-points", "30", "--out", str(out)])
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "x,nu_hat_real,nu_hat_imag"
        assert len(lines) == 31

    def test_clip_negative_flag(self, tmp_path):
        src = simulate(tmp_path, n=500, seed=6)
        out = tmp_path / "dens.csv"
        code = run(["invert", "--in", str(src), "--u", "2", "--v-max", "8",
                    "--grid-points", "51", "--x-min", "0.5", "--x-max", "5",
                    "--x-points", "20", "--clip-negative", "--out", str(out)])
        assert code == EXIT_OK
        vals = np.loadtxt(out, delimiter=",", skiprows=1, usecols=1)
        assert np.all(vals >= 0)


class TestExperiment:
    def test_parameters_experiment_end_to_end(self, tmp_path, capsys):
        cfg = {
            "experiment": "parameters",
            "model": {"kind": "exp_jump", "c": 1.8, "a": 0.7, "b": 0.2},
            "n_values": [300], "runs": 2, "u": 30.0, "v_max": 10.0,
            "grid_points": 51, "master_seed": 4,
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        out_dir = tmp_path / "out"
        code = run(["experiment", "--config", str(cfg_path),
                    "--out-dir", str(out_dir)])
        assert code == EXIT_OK
        assert (out_dir / "parameters_exp_jump_300.csv").exists()
        assert (out_dir / "manifest.json").exists()
        assert "c_median" in capsys.readouterr().out

    def test_unknown_experiment_kind(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({
            "experiment": "bogus",
            "model": {"kind": "exp_jump", "c": 1.8, "a": 0.7, "b": 0.2},
        }))
        assert run(["experiment", "--config", str(cfg_path)]) == EXIT_CONFIG

    def test_invalid_json_is_config_error(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text("{not json")
        assert run(["experiment", "--config", str(cfg_path)]) == EXIT_CONFIG

    def test_missing_config_is_io_error(self, tmp_path):
        assert run(["experiment", "--config",
                    str(tmp_path / "nope.json")]) == EXIT_IO

    def test_unknown_config_key_is_config_error(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({
            "model": {"kind": "exp_jump", "c": 1.8, "a": 0.7, "b": 0.2},
            "bogus_knob": 3,
        }))
        assert run(["experiment", "--config", str(cfg_path)]) == EXIT_CONFIG


class TestArgParsing:
    def test_bad_flag_is_config_error(self, capsys):
        assert run(["simulate", "--model", "weird", "--n", "5",
                    "--out", "x"]) == EXIT_CONFIG
        capsys.readouterr()

    def test_missing_subcommand_is_config_error(self, capsys):
        assert run([]) == EXIT_CONFIG
        capsys.readouterr()
