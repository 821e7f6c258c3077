import json
import math

from iabsim.cli import ResultBundle, main, write_results
from iabsim.config import config_document, parse_config
from iabsim.simulate import aggregate, empirical_cdf, run_campaign


def run_cli(argv):
    return main(argv)


def read_bytes(path):
    return path.read_bytes()


class TestWriteResults:
    def make_bundle(self, reps=12, seed=3, policies=("HQF", "WF")):
        cfg = parse_config({"policies": list(policies), "run": {"repetitions": reps, "master_seed": seed}})
        summary = aggregate(cfg, run_campaign(cfg))
        return ResultBundle(config_document(cfg), cfg.master_seed, "0.1.0", summary)

    def test_file_count_two_policies(self, tmp_path):
        bundle = self.make_bundle()
        written = write_results(bundle, tmp_path)
        names = sorted(p.name for p in written)
        assert names == [
            "HQF_hops_cdf.csv",
            "HQF_snr_cdf.csv",
            "WF_hops_cdf.csv",
            "WF_snr_cdf.csv",
            "summary.json",
        ]

    def test_singleton_cdf_exact_bytes(self, tmp_path):
        # one success with 2 hops must produce exactly "2,1.000000"
        bundle = self.make_bundle(policies=("HQF",))
        bundle.summary.policies["HQF"].hops_cdf = empirical_cdf([2])
        write_results(bundle, tmp_path)
        text = (tmp_path / "HQF_hops_cdf.csv").read_text()
        assert text.splitlines()[0] == "value,cdf"
        assert text.splitlines()[1] == "2,1.000000"
        assert text.endswith("\n") and "\r" not in text

    def test_csv_parses_back_to_valid_cdf(self, tmp_path):
        bundle = self.make_bundle(reps=40)
        write_results(bundle, tmp_path)
        for path in tmp_path.glob("*_cdf.csv"):
            lines = path.read_text().splitlines()
            assert lines[0] == "value,cdf"
            rows = [tuple(map(float, line.split(","))) for line in lines[1:]]
            if not rows:
                continue  # a policy without successes ships an empty table
            values = [r[0] for r in rows]
            probs = [r[1] for r in rows]
            assert values == sorted(values)
            assert all(b >= a for a, b in zip(probs, probs[1:]))
            assert math.isclose(probs[-1], 1.0, abs_tol=5e-7)  # 6-decimal formatting

    def test_rewrite_is_byte_identical(self, tmp_path):
        bundle = self.make_bundle()
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        write_results(bundle, out_a)
        write_results(bundle, out_b)
        for path_a in out_a.iterdir():
            assert read_bytes(path_a) == read_bytes(out_b / path_a.name)

    def test_summary_embeds_reproducible_config(self, tmp_path):
        bundle = self.make_bundle()
        write_results(bundle, tmp_path)
        doc = json.loads((tmp_path / "summary.json").read_text())
        cfg = parse_config(doc["metadata"]["config"])
        assert config_document(cfg) == bundle.config_doc
        assert doc["metadata"]["master_seed"] == 3
        for policy_doc in doc["policies"].values():
            assert 0.0 <= policy_doc["failure_probability"] <= 1.0


class TestMain:
    def test_deterministic_outputs(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        args = ["--reps", "50", "--seed", "7", "--policies", "HQF,WF", "--oracle"]
        assert run_cli(args + ["--out", str(a)]) == 0
        assert run_cli(args + ["--out", str(b)]) == 0
        for path_a in sorted(a.iterdir()):
            assert read_bytes(path_a) == read_bytes(b / path_a.name)
        assert "wrote" in capsys.readouterr().out

    def test_four_policies_four_rows(self, tmp_path):
        out = tmp_path / "o"
        assert run_cli(["--reps", "10", "--seed", "1", "--policies", "HQF,WF,PA,MLR", "--out", str(out)]) == 0
        doc = json.loads((out / "summary.json").read_text())
        assert sorted(doc["policies"]) == ["HQF", "MLR", "PA", "WF"]

    def test_unknown_policy_lists_valid_names(self, tmp_path, capsys):
        code = run_cli(["--policies", "HQF,BOGUS", "--out", str(tmp_path)])
        assert code == 1
        err = capsys.readouterr().err
        for name in ("HQF", "WF", "PA", "MLR"):
            assert name in err

    def test_invalid_config_value_exits_1(self, tmp_path, capsys):
        cfg_path = tmp_path / "bad.json"
        cfg_path.write_text(json.dumps({"deployment": {"p_w": 2.0}}))
        assert run_cli(["--config", str(cfg_path), "--out", str(tmp_path / "o")]) == 1
        assert "p_w" in capsys.readouterr().err

    def test_missing_config_file_exits_2(self, tmp_path, capsys):
        code = run_cli(["--config", str(tmp_path / "absent.json"), "--out", str(tmp_path / "o")])
        assert code == 2
        assert "config" in capsys.readouterr().err

    def test_unwritable_output_exits_2(self, tmp_path, capsys):
        blocker = tmp_path / "results"
        blocker.write_text("a file, not a directory")
        code = run_cli(["--reps", "2", "--out", str(blocker)])
        assert code == 2

    def test_preset_wbf_applies_to_policies(self, tmp_path):
        out = tmp_path / "o"
        code = run_cli([
            "--reps", "10", "--seed", "4", "--policies", "HQF",
            "--preset-wbf", "aggressive_exp", "--out", str(out),
        ])
        assert code == 0
        doc = json.loads((out / "summary.json").read_text())
        assert list(doc["policies"]) == ["HQF_aggressive_exp"]
        wbf_doc = doc["metadata"]["config"]["policies"][0]["wbf"]
        assert wbf_doc["kind"] == "exponential"
        assert wbf_doc["gamma"] == 3.0

    def test_unknown_flag_exits_1(self, capsys):
        assert run_cli(["--bogus-flag"]) == 1

    def test_config_file_drives_run(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(
            json.dumps(
                {
                    "policies": [{"policy": "WF", "wbf": "conservative_poly"}],
                    "run": {"repetitions": 8, "master_seed": 11},
                }
            )
        )
        out = tmp_path / "o"
        assert run_cli(["--config", str(cfg_path), "--out", str(out)]) == 0
        doc = json.loads((out / "summary.json").read_text())
        assert list(doc["policies"]) == ["WF_conservative_poly"]
        assert doc["policies"]["WF_conservative_poly"]["repetitions"] == 8
