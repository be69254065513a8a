import json
from fractions import Fraction

import pytest

from hyperspectra import cli, digraphs


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCharpolyCommand:
    def test_k2_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "charpoly", "--graph", "2 1\\n0 1", "--k", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["mu0"] == "3"
        assert payload["k"] == 3
        assert payload["degree_check"] is True
        assert len(payload["factors"]) == 1
        factor = payload["factors"][0]
        assert factor["sigma_sq"] == 1.0
        assert factor["mu"] == "3"
        assert factor["residual"] <= 1e-6

    def test_text_output(self, capsys):
        code, out, _ = run_cli(capsys, "charpoly", "--graph", "path:2", "--k", "3")
        assert code == 0
        assert out.strip() == "λ^3 (λ^3 - 1)^3"

    def test_deterministic_output(self, capsys):
        args = ("charpoly", "--graph", "cycle:3", "--k", "3", "--format", "json")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_deterministic_across_processes(self):
        # byte-identical output regardless of hash randomization
        import os
        import subprocess
        import sys

        outputs = set()
        for seed in ("1", "2031"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            result = subprocess.run(
                [
                    sys.executable, "-m", "hyperspectra", "charpoly",
                    "--graph", "cycle:4", "--k", "3", "--format", "json",
                ],
                capture_output=True,
                env=env,
                check=True,
            )
            outputs.add(result.stdout)
        assert len(outputs) == 1


class TestBetaCommand:
    def test_cycle3_json(self, capsys):
        code, out, _ = run_cli(capsys, "beta", "--graph", "cycle:3", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        factors = [(f["sigma_sq"], f["mu"]) for f in payload["factors"]]
        assert factors == [[1.0, "1"], [4.0, "1/2"]] or factors == [
            (1.0, "1"),
            (4.0, "1/2"),
        ]
        assert payload["mu0"] == "0"

    def test_cycle3_text(self, capsys):
        code, out, _ = run_cli(capsys, "beta", "--graph", "cycle:3")
        assert code == 0
        assert out.strip() == "(λ^2 - 1) (λ^2 - 4)^1/2"


class TestWalksCommand:
    def test_json_counts_are_strings(self, capsys):
        code, out, _ = run_cli(
            capsys, "walks", "--graph", "cycle:3", "--d", "4", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["count"] == "18"

    def test_covering(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "walks", "--graph", "path:3", "--d", "4", "--covering",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["count"] == "4"

    def test_methods_agree(self, capsys):
        _, dp, _ = run_cli(
            capsys, "walks", "--graph", "cycle:4", "--d", "6", "--format", "json"
        )
        _, mean, _ = run_cli(
            capsys,
            "walks", "--graph", "cycle:4", "--d", "6",
            "--method", "signed_mean", "--format", "json",
        )
        assert json.loads(dp)["count"] == json.loads(mean)["count"]


class TestOtherCommands:
    def test_census_schema(self, capsys):
        code, out, _ = run_cli(
            capsys, "census", "--graph", "cycle:3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert [entry["count"] for entry in payload] == [3, 3, 1]

    def test_signed_listing(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "signed", "--graph", "cycle:3", "--up-to-switching", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload) == 2
        assert {p["balanced"] for p in payload} == {True, False}

    def test_oracle(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "--graph", "2 1\\n0 1", "--d", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["trace"] == "9"
        assert payload["agree"] is True

    def test_oracle_best_check(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "oracle", "--graph", "cycle:3", "--d", "6", "--best-check",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["trace"] == "540"
        assert payload["best_checks"]
        assert all(c["agree"] for c in payload["best_checks"])
        assert all("arcs" in c["digraph"] for c in payload["best_checks"])

    def test_graph_from_file(self, capsys, tmp_path):
        path = tmp_path / "graph.txt"
        path.write_text("3 2\n0 1\n1 2\n")
        code, out, _ = run_cli(
            capsys, "walks", "--graph", str(path), "--d", "4", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["count"] == "8"

    def test_radius_mult(self, capsys):
        code, out, _ = run_cli(
            capsys, "radius-mult", "--graph", "cycle:3", "--k", "3", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["multiplicity"] == "9"

    def test_matching(self, capsys):
        code, out, _ = run_cli(capsys, "matching", "--graph", "cycle:3")
        assert code == 0
        assert out.strip() == "λ^3 - 3λ"

    def test_geomean(self, capsys):
        code, out, _ = run_cli(
            capsys, "geomean", "--graph", "path:3", "--at", "2", "--format", "json"
        )
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(4.0)

    def test_amgm(self, capsys):
        code, out, _ = run_cli(
            capsys, "amgm", "--graph", "cycle:3", "--at", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["status"] == "pass"
        assert payload["alpha"] == "18"


class TestVerifyCommand:
    def test_quick_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--scope", "quick", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is True
        assert len(payload["checks"]) >= 11
        assert all(c["status"] != "fail" for c in payload["checks"])

    def test_corrupted_moment_scale_fails_integrality(self, capsys, monkeypatch):
        honest = digraphs.power_moment_prefactor

        def corrupted(v_count, e_count, k):
            return honest(v_count, e_count, k) * Fraction(3, 2)

        monkeypatch.setattr(digraphs, "power_moment_prefactor", corrupted)
        code, out, _ = run_cli(
            capsys,
            "verify", "--scope", "quick", "--graph", "path:2", "--format", "json",
        )
        assert code != 0
        payload = json.loads(out)
        statuses = {c["name"]: c["status"] for c in payload["checks"]}
        assert statuses["spectrum/multiplicities"] == "fail"

    def test_seed_restriction_still_runs_digraph_groups(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--graph", "path:2", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        by_name = {c["name"]: c for c in payload["checks"]}
        assert by_name["digraphs/best-vs-brute"]["status"] == "pass"
        assert by_name["digraphs/tree-reduction"]["status"] == "pass"


class TestErrors:
    def test_unknown_subcommand_exits_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["frobnicate"])
        assert err.value.code == 2

    def test_unknown_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as err:
            cli.main(["walks", "--graph", "cycle:3", "--d", "2", "--nope"])
        assert err.value.code == 2

    def test_computation_error_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "walks", "--graph", "3 2\\n0 1\\n1 1", "--d", "2")
        assert code == 1
        assert "loop" in err

    def test_missing_graph_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "walks", "--d", "2")
        assert code == 1
        assert "graph" in err
