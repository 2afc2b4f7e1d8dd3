"""Command-line interface: formats, round trips, exit codes, goldens."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from bellkit import cli, lists, sampler
from bellkit.lists import Bell3Sides, Chsh4Sides

PI = math.pi

GOLDEN_RUN_JSON = ('{"format_version":1,"theta_a":0.5,"theta_b":0.25,'
                   '"n":4,"seed":42,"pairs":[[1,-1],[-1,1],[-1,1],[-1,1]]}\n')

FIG2_HEADER = "alpha,alpha_prime,beta,n,empirical,theoretical,abs_error"
GOLDEN_FIG2_ROW = "1.57079633,1.57079633,0,50,-0.16,3.74939946e-33,0.16"


def run_cli(*argv):
    return cli.main([str(a) for a in argv])


class TestGenerate:
    def test_anticorrelated_at_equal_angles(self, tmp_path, capsys):
        out = tmp_path / "run.json"
        code = run_cli("generate", "--theta-a", 0, "--theta-b", 0,
                       "--n", 5, "--out", out)
        assert code == 0
        record = json.loads(out.read_text())
        assert all(a == -b for a, b in record["pairs"])
        assert "correlation(a,b) = -1" in capsys.readouterr().out

    def test_golden_record_bytes(self, tmp_path):
        out = tmp_path / "run.json"
        run_cli("generate", "--theta-a", 0.5, "--theta-b", 0.25,
                "--n", 4, "--seed", 42, "--out", out)
        assert out.read_text() == GOLDEN_RUN_JSON

    def test_repeat_is_byte_identical(self, tmp_path):
        args = ("generate", "--theta-a", 0.3, "--theta-b", 1.1,
                "--n", 200, "--seed", 9)
        run_cli(*args, "--out", tmp_path / "one.json")
        run_cli(*args, "--out", tmp_path / "two.json")
        assert ((tmp_path / "one.json").read_bytes()
                == (tmp_path / "two.json").read_bytes())

    def test_round_trip_exact(self, tmp_path):
        out = tmp_path / "run.json"
        run_cli("generate", "--theta-a", 0.3, "--theta-b", 1.1,
                "--n", 200, "--seed", 9, "--out", out)
        loaded = cli.load_run_record(str(out))
        direct = sampler.sample_pair_run(sampler.RunSpec(0.3, 1.1, 200, 9))
        assert loaded.spec == direct.spec
        assert np.array_equal(loaded.a, direct.a)
        assert np.array_equal(loaded.b, direct.b)

    def test_degrees_flag(self, tmp_path):
        out = tmp_path / "run.json"
        run_cli("generate", "--theta-a", 90, "--theta-b", 0,
                "--n", 3, "--degrees", "--out", out)
        record = json.loads(out.read_text())
        assert record["theta_a"] == 90.0 * (math.pi / 180.0)
        assert record["theta_b"] == 0.0

    def test_convergence_summary(self, tmp_path, capsys):
        run_cli("generate", "--theta-a", PI / 3, "--theta-b", 0,
                "--n", 100000, "--seed", 1, "--out", tmp_path / "r.json")
        line = [ln for ln in capsys.readouterr().out.splitlines()
                if ln.startswith("correlation")][0]
        got = float(line.split("=")[1])
        assert abs(got - (-0.5)) < 0.013

    def test_unwritable_path(self, tmp_path):
        code = run_cli("generate", "--theta-a", 0, "--theta-b", 0,
                       "--n", 2, "--out", tmp_path / "no" / "dir" / "x.json")
        assert code == 3


class TestRunRecordLoading:
    def write(self, tmp_path, payload):
        path = tmp_path / "r.json"
        path.write_text(json.dumps(payload))
        return str(path)

    def base(self):
        return {"format_version": 1, "theta_a": 0.0, "theta_b": 0.0,
                "n": 2, "seed": 1, "pairs": [[1, -1], [-1, 1]]}

    def test_not_json(self, tmp_path):
        path = tmp_path / "r.json"
        path.write_text("not json at all")
        with pytest.raises(cli.FormatError, match="not valid JSON"):
            cli.load_run_record(str(path))

    def test_wrong_version(self, tmp_path):
        payload = self.base() | {"format_version": 99}
        with pytest.raises(cli.FormatError, match="format_version"):
            cli.load_run_record(self.write(tmp_path, payload))

    def test_missing_field(self, tmp_path):
        payload = self.base()
        del payload["theta_b"]
        with pytest.raises(cli.FormatError, match="malformed field"):
            cli.load_run_record(self.write(tmp_path, payload))

    def test_pair_count_mismatch(self, tmp_path):
        payload = self.base() | {"n": 3}
        with pytest.raises(cli.FormatError, match="3 pairs|2 pairs"):
            cli.load_run_record(self.write(tmp_path, payload))

    def test_non_pm1_values(self, tmp_path):
        payload = self.base() | {"pairs": [[1, 0], [-1, 1]]}
        with pytest.raises(cli.FormatError, match=r"\+1/-1"):
            cli.load_run_record(self.write(tmp_path, payload))

    def test_seedless_record_accepted(self, tmp_path):
        payload = self.base() | {"seed": None}
        run = cli.load_run_record(self.write(tmp_path, payload))
        assert run.spec.seed is None


class TestMatchCommands:
    def gen(self, tmp_path, name, theta_a, theta_b, n, seed):
        out = tmp_path / name
        assert run_cli("generate", "--theta-a", theta_a, "--theta-b", theta_b,
                       "--n", n, "--seed", seed, "--out", out) == 0
        return out

    def test_match3_zero_pi_case(self, tmp_path, capsys):
        ab = self.gen(tmp_path, "ab.json", 0.0, 0.0, 10000, 1)
        apb = self.gen(tmp_path, "apb.json", PI, 0.0, 10000, 2)
        out = tmp_path / "tri.json"
        assert run_cli("match3", ab, apb, "--out", out) == 0
        doc = json.loads(out.read_text())
        assert doc["kind"] == "matched_triple"
        assert doc["identity"]["holds"] is True
        assert doc["bound3"]["lhs"] <= 1.0
        assert doc["theory"]["aap_matched"] == pytest.approx(-1.0)
        text = capsys.readouterr().out
        assert "aligned" in text and "bound form" in text

    def test_match3_identical_files(self, tmp_path):
        ab = self.gen(tmp_path, "ab.json", 0.7, 0.2, 500, 5)
        out = tmp_path / "tri.json"
        assert run_cli("match3", ab, ab, "--out", out) == 0
        doc = json.loads(out.read_text())
        assert doc["correlations"]["aap"] == 1.0
        assert doc["report"]["dropped_reference"] == 0

    def test_match3_shorter_candidate_trims(self, tmp_path):
        ab = self.gen(tmp_path, "ab.json", 0.7, 0.2, 800, 5)
        apb = self.gen(tmp_path, "apb.json", 1.1, 0.2, 500, 6)
        out = tmp_path / "tri.json"
        assert run_cli("match3", ab, apb, "--out", out) == 0
        doc = json.loads(out.read_text())
        assert doc["report"]["dropped_reference"] > 0
        assert (doc["report"]["matched"]
                + doc["report"]["dropped_reference"] == 800)

    def test_match3_angle_mismatch_exit_2(self, tmp_path):
        ab = self.gen(tmp_path, "ab.json", 0.7, 0.2, 50, 5)
        apb = self.gen(tmp_path, "apb.json", 1.1, 0.9, 50, 6)
        assert run_cli("match3", ab, apb, "--out", tmp_path / "x.json") == 2

    def test_match3_malformed_file_exit_3(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{]")
        ab = self.gen(tmp_path, "ab.json", 0.7, 0.2, 50, 5)
        assert run_cli("match3", bad, ab, "--out", tmp_path / "x.json") == 3

    def test_match3_missing_file_exit_3(self, tmp_path):
        ab = self.gen(tmp_path, "ab.json", 0.7, 0.2, 50, 5)
        assert run_cli("match3", tmp_path / "absent.json", ab,
                       "--out", tmp_path / "x.json") == 3

    def test_match4_all_equal_angles(self, tmp_path):
        files = [self.gen(tmp_path, f"r{k}.json", 0.4, 0.4, 2000, k)
                 for k in (1, 2, 3)]
        out = tmp_path / "quad.json"
        assert run_cli("match4", *files, "--out", out) == 0
        doc = json.loads(out.read_text())
        assert doc["kind"] == "matched_quad"
        assert doc["correlations"]["apbp"] == -1.0
        assert doc["identity"]["holds"] is True

    def test_match4_chsh_point(self, tmp_path):
        ab = self.gen(tmp_path, "ab.json", 0.0, PI / 4, 10000, 11)
        apb = self.gen(tmp_path, "apb.json", PI / 2, PI / 4, 10000, 12)
        abp = self.gen(tmp_path, "abp.json", 0.0, -PI / 4, 10000, 13)
        out = tmp_path / "quad.json"
        assert run_cli("match4", ab, apb, abp, "--out", out) == 0
        doc = json.loads(out.read_text())
        assert doc["identity"]["lhs"] <= 2.0
        want = -math.sqrt(2) / 4
        assert doc["correlations"]["apbp"] == pytest.approx(want, abs=0.06)
        assert doc["theory"]["apbp_matched"] == pytest.approx(want, abs=1e-12)

    def test_match_output_lists_are_pm1(self, tmp_path):
        ab = self.gen(tmp_path, "ab.json", 0.3, 0.0, 300, 1)
        apb = self.gen(tmp_path, "apb.json", 1.0, 0.0, 300, 2)
        out = tmp_path / "tri.json"
        run_cli("match3", ab, apb, "--out", out)
        doc = json.loads(out.read_text())
        for key in ("a", "b", "ap"):
            assert set(doc["lists"][key]) <= {-1, 1}
        assert (len(doc["lists"]["a"]) == doc["report"]["matched"])


class TestScanCommands:
    def test_fig2_golden_header_and_row(self, tmp_path):
        out = tmp_path / "f.csv"
        code = run_cli("scan", "fig2",
                       "--alpha-range", PI / 2, PI, 2,
                       "--alpha-prime-range", PI / 2, PI, 2,
                       "--n", 50, "--seed", 42, "--out", out)
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == FIG2_HEADER
        assert lines[1] == GOLDEN_FIG2_ROW
        assert len(lines) == 5

    def test_fig2_rerun_and_workers_byte_identical(self, tmp_path):
        base = ("scan", "fig2", "--alpha-range", 0, PI, 3,
                "--alpha-prime-range", 0, PI, 3, "--n", 400, "--seed", 5)
        run_cli(*base, "--out", tmp_path / "a.csv")
        run_cli(*base, "--out", tmp_path / "b.csv")
        run_cli(*base, "--workers", 4, "--out", tmp_path / "c.csv")
        a = (tmp_path / "a.csv").read_bytes()
        assert a == (tmp_path / "b.csv").read_bytes()
        assert a == (tmp_path / "c.csv").read_bytes()

    def test_fig2_exact_origin_row(self, tmp_path):
        out = tmp_path / "f.csv"
        run_cli("scan", "fig2", "--alpha-range", 0, PI, 2,
                "--alpha-prime-range", 0, PI, 2, "--n", 60,
                "--seed", 0, "--out", out)
        first = out.read_text().splitlines()[1]
        assert first == "0,0,0,60,1,1,0"

    def test_bell3_unmatched_violation_row(self, tmp_path):
        out = tmp_path / "b3.csv"
        assert run_cli("scan", "bell3", "--range", 0, 2 * PI, 3,
                       "--mode", "unmatched", "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "theta_a,theta_ap,theta_b,mode,lhs,bound,violated"
        target = [ln for ln in lines
                  if ln.startswith("0,3.14159265,")]
        assert target == ["0,3.14159265,0,unmatched-stationary,2,1,true"]

    def test_bell3_matched_no_violations(self, tmp_path, capsys):
        out = tmp_path / "b3.csv"
        assert run_cli("scan", "bell3", "--range", 0, 2 * PI, 31,
                       "--out", out) == 0
        assert "violations=0" in capsys.readouterr().out
        assert ",true" not in out.read_text()

    def test_chsh4_matched_no_violations(self, tmp_path):
        out = tmp_path / "c4.csv"
        assert run_cli("scan", "chsh4", "--range", 0, 2 * PI, 9,
                       "--out", out) == 0
        text = out.read_text()
        assert text.splitlines()[0] == ("theta_a,theta_ap,theta_b,theta_bp,"
                                        "mode,lhs,bound,violated")
        assert ",true" not in text

    def test_chsh4_unmatched_has_violations(self, tmp_path, capsys):
        out = tmp_path / "c4.csv"
        assert run_cli("scan", "chsh4", "--range", 0, 2 * PI, 9,
                       "--mode", "unmatched", "--out", out) == 0
        summary = capsys.readouterr().out
        assert "violations=0" not in summary
        assert ",true" in out.read_text()

    def test_degrees_ranges(self, tmp_path):
        rad = tmp_path / "rad.csv"
        deg = tmp_path / "deg.csv"
        run_cli("scan", "bell3", "--range", 0, 2 * PI, 5, "--out", rad)
        run_cli("scan", "bell3", "--range", 0, 360, 5, "--degrees",
                "--out", deg)
        # same grid up to float rounding of the degree conversion
        rows_r = rad.read_text().splitlines()[1:]
        rows_d = deg.read_text().splitlines()[1:]
        for row_r, row_d in zip(rows_r, rows_d):
            lhs_r = float(row_r.split(",")[4])
            lhs_d = float(row_d.split(",")[4])
            assert lhs_d == pytest.approx(lhs_r, abs=1e-9)

    def test_invalid_grid_exit_2(self, tmp_path):
        assert run_cli("scan", "bell3", "--range", 1, 0, 5,
                       "--out", tmp_path / "x.csv") == 2

    def test_non_integer_steps_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            run_cli("scan", "bell3", "--range", 0, 1, 2.5,
                    "--out", tmp_path / "x.csv")
        assert err.value.code == 2


class TestCheck:
    def write_lists(self, tmp_path, *columns):
        paths = []
        for k, values in enumerate(columns):
            path = tmp_path / f"l{k}.txt"
            path.write_text(" ".join(str(v) for v in values) + "\n")
            paths.append(path)
        return paths

    def test_three_random_files_hold(self, tmp_path, rand, capsys):
        cols = [list(rand.choice([-1, 1], size=40)) for _ in range(3)]
        paths = self.write_lists(tmp_path, *cols)
        assert run_cli("check", *paths) == 0
        assert "holds = true" in capsys.readouterr().out

    def test_hand_case_equality(self, tmp_path, capsys):
        paths = self.write_lists(tmp_path, [1, 1], [1, -1], [-1, -1])
        assert run_cli("check", *paths) == 0
        text = capsys.readouterr().out
        assert "lhs = 1" in text and "rhs = 1" in text

    def test_four_identical_files(self, tmp_path, capsys):
        paths = self.write_lists(tmp_path, *([[1, -1, 1]] * 4))
        assert run_cli("check", *paths) == 0
        text = capsys.readouterr().out
        assert "lhs = 2" in text and "holds = true" in text

    def test_length_mismatch_exit_2(self, tmp_path):
        paths = self.write_lists(tmp_path, [1, 1], [1, -1], [-1])
        assert run_cli("check", *paths) == 2

    def test_bad_token_exit_2(self, tmp_path):
        paths = self.write_lists(tmp_path, [1, 1], [1, -1], [2, -1])
        assert run_cli("check", *paths) == 2

    def test_non_integer_token_exit_2(self, tmp_path):
        path = tmp_path / "l.txt"
        path.write_text("1 x -1\n")
        good = self.write_lists(tmp_path, [1, 1, 1], [1, -1, 1])
        assert run_cli("check", good[0], good[1], path) == 2

    def test_missing_file_exit_3(self, tmp_path):
        paths = self.write_lists(tmp_path, [1, 1], [1, -1])
        assert run_cli("check", *paths, tmp_path / "gone.txt") == 3

    def test_wrong_file_count_usage_error(self, tmp_path):
        paths = self.write_lists(tmp_path, [1], [1])
        with pytest.raises(SystemExit) as err:
            run_cli("check", *paths)
        assert err.value.code == 2


class TestIdentityViolationTrap:
    """Exit code 1 is unreachable unless the arithmetic itself breaks, so
    trigger it by sabotaging the computation and confirm the trap fires."""

    def test_check_bell3_mutation(self, tmp_path, monkeypatch, capsys):
        paths = []
        for k in range(3):
            p = tmp_path / f"l{k}.txt"
            p.write_text("1 -1 1\n")
            paths.append(p)

        def corrupted(a, b, bp):
            return Bell3Sides(Fraction(3), Fraction(1), False)

        monkeypatch.setattr(lists, "bell3_sides", corrupted)
        assert run_cli("check", *paths) == 1
        assert "software defect" in capsys.readouterr().err

    def test_check_chsh4_mutation(self, tmp_path, monkeypatch):
        paths = []
        for k in range(4):
            p = tmp_path / f"l{k}.txt"
            p.write_text("1 -1\n")
            paths.append(p)

        def corrupted(a, b, ap, bp):
            return Chsh4Sides(Fraction(5), 2, False)

        monkeypatch.setattr(lists, "chsh4_sides", corrupted)
        assert run_cli("check", *paths) == 1

    def test_match3_mutation(self, tmp_path, monkeypatch):
        for name, seed in (("ab.json", 1), ("apb.json", 2)):
            run_cli("generate", "--theta-a", 0.3, "--theta-b", 0,
                    "--n", 50, "--seed", seed, "--out", tmp_path / name)

        def corrupted(a, b, bp):
            return Bell3Sides(Fraction(3), Fraction(1), False)

        monkeypatch.setattr(lists, "bell3_sides", corrupted)
        assert run_cli("match3", tmp_path / "ab.json", tmp_path / "apb.json",
                       "--out", tmp_path / "t.json") == 1


class TestFloatFormatting:
    def test_nine_significant_digits(self):
        assert cli._fmt(1 / 3) == "0.333333333"
        assert cli._fmt(2.0) == "2"
        assert cli._fmt(-math.sqrt(2) / 4) == "-0.353553391"
        assert cli._fmt(3.74939945665464e-33) == "3.74939946e-33"
