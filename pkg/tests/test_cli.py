import json

import pytest

from cubicrigid import cli, rigidity


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_pass_text(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "1", "--m", "1")
        assert code == 0
        assert "overall: PASS" in out
        assert "degree 3 (expected 3)" in out

    def test_json_roundtrip(self, capsys):
        code, out, _ = run_cli(capsys, "--emit", "json",
                               "verify", "--n", "1", "--m", "1")
        assert code == 0
        parsed = rigidity.TransversalityReport.from_json_dict(json.loads(out))
        fresh = rigidity.transversality_report(1, 1)
        assert parsed == fresh

    def test_csv_row(self, capsys):
        code, out, _ = run_cli(capsys, "--emit", "csv",
                               "verify", "--n", "1", "--m", "1")
        assert code == 0
        header, row = out.strip().split("\n")
        assert header == ",".join(cli.SWEEP_COLUMNS)
        assert row.startswith("1,1,0,0,3,3,0,True,3,")

    def test_tail_flags(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "1", "--m", "1",
                               "--tail-i", "1", "--tail-j", "1")
        assert code == 0
        assert "tails=(1,1)" in out

    def test_no_solve(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "1", "--m", "1",
                               "--no-solve")
        assert code == 0
        assert "solutions: 0" in out

    def test_byte_identical_reruns(self, capsys):
        args = ("--emit", "json", "--seed", "5", "verify", "--n", "2", "--m", "1")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2


class TestExitCodes:
    def test_unknown_flag(self, capsys):
        assert run_cli(capsys, "verify", "--n", "1", "--m", "1", "--bogus")[0] == 2

    def test_missing_subcommand(self, capsys):
        assert run_cli(capsys)[0] == 2

    def test_bad_choice(self, capsys):
        assert run_cli(capsys, "verify", "--n", "1", "--m", "1",
                       "--tail-i", "3")[0] == 2

    def test_resource_limit_is_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--n", "8", "--m", "2")
        assert code == 2
        assert "resource limit" in err

    def test_max_n_flag_enforced(self, capsys):
        code, _, err = run_cli(capsys, "--max-n", "2",
                               "verify", "--n", "3", "--m", "1")
        assert code == 2

    def test_env_limit_and_flag_precedence(self, capsys, monkeypatch):
        monkeypatch.setenv("CUBICRIGID_MAX_N", "2")
        assert run_cli(capsys, "verify", "--n", "3", "--m", "1")[0] == 2
        # explicit flag wins over the environment
        assert run_cli(capsys, "--max-n", "4",
                       "verify", "--n", "3", "--m", "1")[0] == 0


class TestResultant:
    def test_json_fields(self, capsys):
        code, out, _ = run_cli(capsys, "--emit", "json", "resultant",
                               "--n", "1", "--m", "1", "--method", "both")
        assert code == 0
        payload = json.loads(out)
        assert payload == {
            "n": 1, "m": 1, "degree": 3, "lead_coeff": "-64", "ord3_lead": 0,
            "mod3_leading_term": "2*y^3", "method_agreement": True,
        }

    def test_full_text(self, capsys):
        code, out, _ = run_cli(capsys, "resultant", "--n", "1", "--m", "1",
                               "--full")
        assert code == 0
        assert "R(y) = -64*y^3" in out

    @pytest.mark.parametrize("method", ["ff", "ei", "auto"])
    def test_methods_agree(self, capsys, method):
        code, out, _ = run_cli(capsys, "--emit", "json", "resultant",
                               "--n", "1", "--m", "2", "--method", method)
        assert code == 0
        assert json.loads(out)["degree"] == 9


class TestArtinSchreier:
    def test_closed_form(self, capsys):
        code, out, _ = run_cli(capsys, "artin-schreier", "--p", "3",
                               "--n", "1", "--m", "2")
        assert code == 0
        assert "A^9 + A^3 + 2*B^3" in out

    def test_oracle_sign(self, capsys):
        code, out, _ = run_cli(capsys, "--emit", "json", "artin-schreier",
                               "--p", "3", "--n", "1", "--m", "2", "--oracle")
        assert code == 0
        payload = json.loads(out)
        assert payload["matched_sign"] in (1, -1)
        assert payload["closed_form"] == "A^9 + A^3 + 2*B^3"

    def test_oracle_budget_exit(self, capsys):
        code, _, err = run_cli(capsys, "--max-size", "4", "artin-schreier",
                               "--p", "5", "--n", "2", "--m", "2", "--oracle")
        assert code == 2


class TestProfile:
    def test_n2_table(self, capsys):
        code, out, _ = run_cli(capsys, "profile", "--n", "2")
        assert code == 0
        assert "all bounds hold: True" in out
        lines = out.splitlines()
        k_rows = [l.split() for l in lines if l.strip() and l.strip()[0].isdigit()]
        bounds = [int(r[1]) for r in k_rows]
        assert bounds[:7] == [0, -1, -2, 1, 0, -1, 2]

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "--emit", "json", "profile", "--n", "1")
        payload = json.loads(out)
        assert payload["ok"] is True
        assert [r["bound"] for r in payload["rows"]] == [0, -1, -2, 1]


class TestSolve:
    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "--n", "1", "--m", "1")
        assert code == 0
        assert out.count("alpha=") == 3

    def test_json_solutions(self, capsys):
        code, out, _ = run_cli(capsys, "--emit", "json", "solve",
                               "--n", "1", "--m", "1")
        sols = json.loads(out)
        assert len(sols) == 3
        assert all(s["multiplicity_hint"] == 3 for s in sols)


class TestSweep:
    def test_four_passing_rows(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n-range", "1:2",
                               "--m-range", "1:2")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == ",".join(cli.SWEEP_COLUMNS)
        assert len(lines) == 5
        assert all(line.endswith("True") for line in lines[1:])

    def test_tail_rows(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n-range", "1",
                               "--m-range", "1", "--tails", "all")
        assert code == 0
        assert len(out.strip().splitlines()) == 5

    def test_empty_range(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n-range", "2:1",
                               "--m-range", "1:1")
        assert code == 0
        assert out.strip() == ",".join(cli.SWEEP_COLUMNS)

    def test_json_rows(self, capsys):
        code, out, _ = run_cli(capsys, "--emit", "json", "sweep",
                               "--n-range", "1", "--m-range", "1:2")
        rows = json.loads(out)
        assert [r["m"] for r in rows] == [1, 2]
        assert all(r["overall"] for r in rows)

    def test_parallel_matches_serial(self, capsys):
        serial = run_cli(capsys, "sweep", "--n-range", "1:2", "--m-range", "1")
        parallel = run_cli(capsys, "--jobs", "2", "sweep", "--n-range", "1:2",
                           "--m-range", "1")
        assert serial == parallel


class TestOutputFile:
    def test_out_path(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "--emit", "json", "--out", str(target),
                               "verify", "--n", "1", "--m", "1")
        assert code == 0
        assert out == ""
        payload = json.loads(target.read_text())
        assert payload["overall"] is True
