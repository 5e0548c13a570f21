import json

import pytest

from mvis import generate, read_edge_list, write_edge_list
from mvis.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestGen:
    def test_round_trip(self, tmp_path, capsys):
        out = str(tmp_path / "g.el")
        code, _ = run(capsys, "gen", "grid:4x3", out)
        assert code == 0
        g = read_edge_list(out)
        ref = generate("grid:4x3")
        assert g.edges() == ref.edges()
        assert g.labels == ref.labels
        assert g.name == ref.name

    def test_gn_gen(self, tmp_path, capsys):
        out = str(tmp_path / "gn.el")
        code, _ = run(capsys, "gen", "gn:2", out)
        assert code == 0
        assert read_edge_list(out).n == 8

    def test_gprime_gen_from_file(self, tmp_path, capsys):
        base = str(tmp_path / "p5.el")
        out = str(tmp_path / "gp.el")
        write_edge_list(generate("path:5"), base)
        code, _ = run(capsys, "gen", f"gprime:{base}:t=3", out)
        assert code == 0
        assert read_edge_list(out).n == 25

    def test_bad_spec_usage_error(self, tmp_path, capsys):
        code = main(["gen", "blorp:9", str(tmp_path / "x.el")])
        assert code == 2


class TestCheck:
    def test_c6_adjacent_dual(self, capsys):
        code, payload = run_json(capsys, "check", "cycle:6", "--set", "0,1", "--json")
        assert code == 0
        assert payload["is_dual"] is True
        assert payload["is_total"] is False

    def test_path_endpoints_total(self, capsys):
        code, payload = run_json(capsys, "check", "path:5", "--set", "0,4", "--json")
        assert payload["is_total"] is True

    def test_coordinate_input(self, tmp_path, capsys):
        out = str(tmp_path / "g.el")
        main(["gen", "grid:4x3", out])
        capsys.readouterr()
        code, payload = run_json(
            capsys, "check", out,
            "--set", "(1,1),(2,1),(4,2),(4,3),(1,3)", "--json",
        )
        assert code == 0
        assert payload["is_dual"] is True
        assert sorted(payload["set"]) == payload["set"]

    def test_violations_reported(self, capsys):
        code, payload = run_json(capsys, "check", "cycle:5", "--set", "0", "--json")
        assert payload["is_dual"] is False
        assert "dual" in payload["violations"]


class TestSolve:
    def test_torus_dual(self, capsys):
        code, payload = run_json(
            capsys, "solve", "torus:5x3", "--variant", "dual", "--json"
        )
        assert code == 0
        assert payload["value"] == 2

    def test_grid_outer(self, capsys):
        code, payload = run_json(
            capsys, "solve", "grid:6x6", "--variant", "outer", "--json"
        )
        assert payload["value"] == 8

    def test_ht_outer(self, capsys):
        code, payload = run_json(
            capsys, "solve", "ht:2", "--variant", "outer", "--json"
        )
        assert payload["value"] == 8

    def test_budget_exhaustion_exit_code(self, capsys):
        code, payload = run_json(
            capsys, "solve", "grid:5x5", "--variant", "mutual",
            "--budget-nodes", "40", "--json",
        )
        assert code == 3
        assert payload["incomplete"] is True
        assert payload["value_lower_bound"] <= 10

    def test_env_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("MVIS_BUDGET_MS", "1")
        code, payload = run_json(
            capsys, "solve", "grid:6x6", "--variant", "mutual", "--json"
        )
        assert code == 3


class TestOracleCmd:
    def test_oracle(self, capsys):
        code, payload = run_json(
            capsys, "oracle", "torus:7x5", "--variant", "outer", "--json"
        )
        assert payload["kind"] == "upper_bound" and payload["value"] == 10


class TestReduce:
    def test_p3_identity(self, tmp_path, capsys):
        out = str(tmp_path / "gp.el")
        code, payload = run_json(
            capsys, "reduce", "path:3", "--t", "3", "--out", out, "--json"
        )
        assert code == 0
        assert payload["gprime_order"] == 15
        assert payload["alpha"] == 2
        assert payload["expected_value"] == 11
        assert payload["witness_is_total"] is True
        assert payload["solved_total"] == 11
        assert payload["identity_certified"] is True
        assert read_edge_list(out).n == 15

    def test_k3_witness_size(self, capsys):
        code, payload = run_json(
            capsys, "reduce", "complete:3", "--t", "3", "--json"
        )
        assert payload["alpha"] == 1
        assert payload["witness_size"] == (3 + 1) * 3 + 1  # 13


class TestVerify:
    def test_cycles_and_paths_agree(self, capsys):
        code, report = run_json(
            capsys, "verify", "--families", "cycles,paths",
            "--max-cycle", "8", "--json",
        )
        assert code == 0
        assert report["summary"]["disagreements"] == 0
        assert report["summary"]["instances"] > 40
        assert report["format_version"] == 1

    def test_full_cycle_sweep_agreement_count(self, capsys):
        code, report = run_json(
            capsys, "verify", "--families", "cycles", "--max-cycle", "10", "--json"
        )
        assert code == 0
        assert report["summary"]["instances"] == 32
        assert report["summary"]["agreements"] == 32

    def test_records_sorted_and_cited(self, capsys):
        code, report = run_json(
            capsys, "verify", "--families", "cycles", "--max-cycle", "5", "--json"
        )
        keys = [(r["instance"], r["variant"]) for r in report["records"]]
        assert keys == sorted(keys)
        assert all(r["oracle"]["source"] for r in report["records"])

    def test_gn_discrepancy_flagged(self, capsys):
        code, report = run_json(capsys, "verify", "--families", "gn", "--json")
        assert code == 1
        bad = [r for r in report["records"] if r["agree"] is False]
        assert bad and all(r["variant"] == "dual" for r in bad)

    def test_parallel_matches_sequential(self, capsys):
        _, seq = run_json(
            capsys, "verify", "--families", "cycles", "--max-cycle", "6", "--json"
        )
        _, par = run_json(
            capsys, "verify", "--families", "cycles", "--max-cycle", "6",
            "--parallel", "2", "--json",
        )
        strip = lambda rep: [
            {k: v for k, v in r.items() if k != "stats"} for r in rep["records"]
        ]
        assert strip(seq) == strip(par)

    def test_report_written_to_file(self, tmp_path, capsys):
        out = str(tmp_path / "report.json")
        code, _ = run(
            capsys, "verify", "--families", "paths", "--out", out
        )
        with open(out) as fh:
            report = json.load(fh)
        assert report["summary"]["disagreements"] == 0


class TestUsageErrors:
    def test_unknown_graph_arg(self, capsys):
        assert main(["solve", "no_such_file.el", "--variant", "dual"]) == 2

    def test_unknown_variant_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "cycle:5", "--variant", "median"])
        assert exc.value.code == 2
