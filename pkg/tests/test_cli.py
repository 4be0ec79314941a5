"""Command line behavior: wiring, files, exit codes, reproducibility."""

import json
import subprocess
import sys

import pytest

from endonet.cli import main


def config_file(tmp_path, text, name="config.toml"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


M1_SMALL = """
model = "reinforcement"
[params]
n = 10
shocks = 4
periods = 3
master_seed = 21
"""

M2_SMALL = """
model = "tribes"
[params]
n = 12
shocks = 5
periods = 4
master_seed = 22
"""


class TestUsageErrors:
    def test_unknown_command_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_config_and_preset(self, capsys):
        assert main(["model1-run"]) == 2
        assert "--preset or --config" in capsys.readouterr().err

    def test_config_and_preset_together(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        code = main(["model1-run", "--config", cfg, "--preset", "m1-fixed-shocks"])
        assert code == 2

    def test_unknown_preset_lists_known_names(self, capsys):
        assert main(["model1-run", "--preset", "nope"]) == 2
        assert "m1-fixed-shocks" in capsys.readouterr().err

    def test_malformed_set_flag(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        assert main(["model1-run", "--config", cfg, "--set", "n12"]) == 2

    def test_model_mismatch(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        code = main(["model2-run", "--config", cfg, "--out", str(tmp_path)])
        assert code == 2
        assert "tribes" in capsys.readouterr().err

    def test_unreadable_config_is_a_runtime_error(self, tmp_path, capsys):
        assert main(["model1-run", "--config", str(tmp_path)]) == 1


class TestModel1Run:
    def test_writes_files_and_prints_seed(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        out = tmp_path / "out"
        code = main(["model1-run", "--config", cfg, "--out", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "master seed: 21" in stdout
        assert (out / "model1_run.json").is_file()
        assert (out / "model1_run.csv").is_file()

    def test_payload_contents(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        out = tmp_path / "out"
        main(["model1-run", "--config", cfg, "--out", str(out)])
        payload = json.loads((out / "model1_run.json").read_text())
        assert payload["metadata"]["config"]["model"] == "reinforcement"
        assert payload["metadata"]["master_seed"] == 21
        # sure-win identity: mean = 1 + 2*S*T*r/n
        expected = 1.0 + 2 * 4 * 3 * 0.05 / 10
        assert payload["summary"]["mean"] == pytest.approx(expected, abs=1e-12)
        assert len(payload["per_period_mean"]) == 4
        assert len(payload["final_fitness"]) == 10

    def test_csv_has_one_row_per_period_boundary(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        out = tmp_path / "out"
        main(["model1-run", "--config", cfg, "--out", str(out)])
        lines = (out / "model1_run.csv").read_text().splitlines()
        assert lines[0] == "period,mean,max,median,min"
        assert len(lines) == 1 + 4

    def test_json_format_skips_the_csv(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        out = tmp_path / "out"
        main(["model1-run", "--config", cfg, "--out", str(out), "--format", "json"])
        assert not (out / "model1_run.csv").exists()

    def test_seed_flag_overrides(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        out = tmp_path / "out"
        main(["model1-run", "--config", cfg, "--out", str(out), "--seed", "99"])
        assert "master seed: 99" in capsys.readouterr().out
        payload = json.loads((out / "model1_run.json").read_text())
        assert payload["metadata"]["master_seed"] == 99

    def test_set_flag_overrides_and_is_echoed(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        out = tmp_path / "out"
        main(["model1-run", "--config", cfg, "--out", str(out), "--set", "n=14"])
        payload = json.loads((out / "model1_run.json").read_text())
        assert payload["metadata"]["config"]["n"] == 14
        assert len(payload["final_fitness"]) == 14

    def test_no_timestamp_reruns_byte_identical(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name
            main(["model1-run", "--config", cfg, "--out", str(out), "--no-timestamp"])
            outs.append((out / "model1_run.json").read_bytes())
        assert outs[0] == outs[1]


class TestModel2Run:
    def test_writes_files_and_summary(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M2_SMALL)
        out = tmp_path / "out"
        code = main(["model2-run", "--config", cfg, "--out", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "master seed: 22" in stdout
        assert "final groups" in stdout
        payload = json.loads((out / "model2_run.json").read_text())
        assert len(payload["per_period"]["deaths"]) == 4
        assert payload["final"]["group_count"] >= 1
        lines = (out / "model2_run.csv").read_text().splitlines()
        assert lines[0] == "period,deaths,successes,groups,components,collisions"
        assert len(lines) == 1 + 4

    def test_sum_rule_flag_recorded(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M2_SMALL)
        out = tmp_path / "out"
        main(["model2-run", "--config", cfg, "--out", str(out), "--sum-rule"])
        payload = json.loads((out / "model2_run.json").read_text())
        assert payload["metadata"]["config"]["sum_rule"] is True


class TestSweeps:
    def test_model1_sweep_files_and_stdout(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL + """
[sweep]
replications = 3
[sweep.axes]
n = [10, 12]
""")
        out = tmp_path / "out"
        code = main(["model1-sweep", "--config", cfg, "--out", str(out), "--jobs", "1"])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "n=10" in stdout and "n=12" in stdout
        assert "average_fitness" in stdout
        records = json.loads((out / "records.json").read_text())
        assert len(records["records"]) == 6
        results = (out / "results.csv").read_text().splitlines()
        assert results[0] == "# endonet 0.1.0 results"

    def test_sweep_json_format(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M2_SMALL + """
[sweep]
replications = 2
[sweep.axes]
epsilon = [0.2, 1.0]
""")
        out = tmp_path / "out"
        code = main([
            "model2-sweep", "--config", cfg, "--out", str(out),
            "--jobs", "1", "--format", "json",
        ])
        assert code == 0
        payload = json.loads((out / "results.json").read_text())
        points = {row["point"]["epsilon"] for row in payload["rows"]}
        assert points == {0.2, 1.0}

    def test_plain_config_runs_as_single_point_sweep(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M2_SMALL)
        out = tmp_path / "out"
        code = main(["model2-sweep", "--config", cfg, "--out", str(out), "--jobs", "1"])
        assert code == 0
        records = json.loads((out / "records.json").read_text())
        assert len(records["records"]) == 1


class TestExportGraph:
    def test_exports_three_files(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M2_SMALL)
        out = tmp_path / "out"
        code = main(["export-graph", "--config", cfg, "--out", str(out)])
        assert code == 0
        dot = (out / "graph.dot").read_text()
        assert dot.startswith("graph social {")
        edges = (out / "graph_edges.txt").read_text().splitlines()
        assert len(edges) > 0
        meta = json.loads((out / "graph_meta.json").read_text())
        assert meta["final"]["component_count"] >= 1

    def test_rejects_reinforcement_config(self, tmp_path, capsys):
        cfg = config_file(tmp_path, M1_SMALL)
        assert main(["export-graph", "--config", cfg, "--out", str(tmp_path)]) == 2


class TestPresets:
    def test_lists_every_preset_with_config(self, capsys):
        assert main(["presets"]) == 0
        stdout = capsys.readouterr().out
        for name in (
            "m1-fixed-shocks", "m1-fixed-ratio", "m2-threshold-sweep",
            "m2-snapshot-reciprocal",
        ):
            assert name in stdout
        assert "not canonical" in stdout

    def test_preset_runs_end_to_end(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = main([
            "model2-run", "--preset", "m2-snapshot-reciprocal-eps05",
            "--set", "periods=3", "--set", "n=20",
            "--out", str(out),
        ])
        assert code == 0
        payload = json.loads((out / "model2_run.json").read_text())
        assert payload["metadata"]["config"]["periods"] == 3
        assert payload["metadata"]["config"]["growth"]["m0"] == 16


def test_installed_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "endonet.cli"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2  # missing subcommand is a usage error
