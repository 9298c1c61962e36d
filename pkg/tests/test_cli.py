"""CLI behaviour: formats, determinism, exit codes, golden files."""

import json
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


def run_cli(*args, env_extra=None):
    import os

    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "apostol.cli", *args],
        capture_output=True, text=True, env=env,
    )


class TestExpand:
    def test_euler_symbolic_entries(self):
        out = run_cli("expand", "--family", "atp", "--m", "1", "--lambda", "1",
                      "--mu", "1", "--nu", "0", "--base", "unit", "--x", "sym",
                      "--n", "1", "--format", "json")
        assert out.returncode == 0
        assert json.loads(out.stdout)["entries"] == ["1", "x - 1/2"]

    def test_order_zero(self):
        out = run_cli("expand", "--family", "atp", "--m", "0", "--lambda", "2",
                      "--mu", "1", "--nu", "0", "--n", "0", "--format", "json")
        assert out.returncode == 0
        assert json.loads(out.stdout)["entries"] == ["1"]

    def test_bernoulli_symbolic(self):
        out = run_cli("expand", "--family", "bernoulli", "--m", "1", "--lambda", "1",
                      "--x", "sym", "--n", "2", "--format", "json")
        assert out.returncode == 0
        assert json.loads(out.stdout)["entries"] == ["1", "x - 1/2", "x^2 - x + 1/6"]

    def test_text_format_one_entry_per_line(self):
        out = run_cli("expand", "--family", "euler", "--m", "1", "--x", "sym", "--n", "1")
        assert out.returncode == 0
        assert out.stdout == "1\nx - 1/2\n"

    def test_csv_numeric(self):
        out = run_cli("expand", "--family", "genocchi", "--m", "1", "--lambda", "3",
                      "--x", "1/2", "--n", "2", "--format", "csv")
        assert out.returncode == 0
        lines = out.stdout.splitlines()
        assert lines[0] == "n,value"
        assert lines[1] == "0,0"
        assert F(lines[2].split(",")[1]) == F(1, 2)

    def test_singular_combination_exit_3(self):
        out = run_cli("expand", "--family", "atp", "--m", "1", "--lambda", "-1",
                      "--mu", "1", "--nu", "0", "--n", "2")
        assert out.returncode == 3
        assert "domain error" in out.stderr

    def test_atp_requires_mu_nu(self):
        out = run_cli("expand", "--family", "atp", "--m", "1", "--n", "2")
        assert out.returncode == 2

    def test_classical_rejects_mu(self):
        out = run_cli("expand", "--family", "euler", "--mu", "1", "--n", "2")
        assert out.returncode == 2

    def test_bad_rational_exit_2(self):
        out = run_cli("expand", "--family", "euler", "--x", "1/0", "--n", "1")
        assert out.returncode == 2
        out = run_cli("expand", "--family", "euler", "--x", "0.5", "--n", "1")
        assert out.returncode == 2


class TestSums:
    def test_plain(self):
        assert run_cli("sums", "--kind", "S", "--k", "2", "--n", "3").stdout == "14\n"
        assert run_cli("sums", "--kind", "M", "--k", "2", "--n", "3").stdout == "-6\n"

    def test_generalized(self):
        out = run_cli("sums", "--kind", "genS", "--k", "1", "--n", "1", "--lambda", "2")
        assert out.stdout == "2\n"
        out = run_cli("sums", "--kind", "genM", "--k", "0", "--n", "2", "--lambda", "5",
                      "--format", "json")
        payload = json.loads(out.stdout)
        assert payload["value"] == "1" and payload["lambda"] == "5"

    def test_round_trip_rational_output(self):
        out = run_cli("sums", "--kind", "genS", "--k", "5", "--n", "7",
                      "--lambda=-2/3", "--format", "json")
        value = F(json.loads(out.stdout)["value"])
        from apostol.families import gen_power_sum

        assert value == gen_power_sum("S", 5, 7, F(-2, 3))

    def test_lambda_validation(self):
        assert run_cli("sums", "--kind", "genS", "--k", "1", "--n", "1").returncode == 2
        assert run_cli("sums", "--kind", "S", "--k", "1", "--n", "1",
                       "--lambda", "2").returncode == 2

    def test_alternating_pole_exit_3(self):
        out = run_cli("sums", "--kind", "genM", "--k", "0", "--n", "1", "--lambda", "-1")
        assert out.returncode == 3


class TestVerify:
    def test_unknown_identity_exit_2(self):
        out = run_cli("verify", "--identity", "nosuch")
        assert out.returncode == 2

    def test_grid_file_pass(self, tmp_path):
        grid = [{"n": n, "m": 1, "c": 2, "d": 3, "lambda": "2", "mu": 1, "nu": 0,
                 "base": "unit"} for n in range(4)]
        path = tmp_path / "grid.json"
        path.write_text(json.dumps(grid))
        out = run_cli("verify", "--identity", "thm21", "--grid-file", str(path))
        assert out.returncode == 0
        report = json.loads(out.stdout)
        assert report["schema"] == 1
        assert report["summary"] == {"total": 4, "passed": 4, "failed": 0, "errored": 0}
        for record in report["points"]:
            assert F(record["lhs"]) == F(record["rhs"])

    def test_grid_file_error_point_exit_1(self, tmp_path):
        grid = [{"n": 2, "m": 1, "c": 1, "d": 2, "lambda": "-1", "mu": 1, "nu": 0,
                 "base": "unit"}]
        path = tmp_path / "grid.json"
        path.write_text(json.dumps(grid))
        out = run_cli("verify", "--identity", "thm21", "--grid-file", str(path))
        assert out.returncode == 1
        report = json.loads(out.stdout)
        assert report["summary"]["errored"] == 1
        assert report["points"][0]["pass"] is False
        assert "error" in report["points"][0]

    def test_table_tag_grid_file_expands_both_shapes(self, tmp_path):
        grid = [{"n": 2, "m": 1, "c": 3, "d": 3, "lambda": "2", "base": "exp"}]
        path = tmp_path / "grid.json"
        path.write_text(json.dumps(grid))
        out = run_cli("verify", "--identity", "tbl21_E", "--grid-file", str(path))
        assert out.returncode == 0
        report = json.loads(out.stdout)
        shapes = {record["point"]["shape"] for record in report["points"]}
        assert shapes == {"thm21", "thm22"}

    def test_product_shape_even_parity_report(self, tmp_path):
        # even c and d are permitted; the report documents the behaviour
        grid = [{"shape": "thm22", "n": 2, "m": 1, "c": 2, "d": 2, "lambda": "2",
                 "mu": 1, "nu": 0, "base": "unit"}]
        path = tmp_path / "grid.json"
        path.write_text(json.dumps(grid))
        out = run_cli("verify", "--identity", "thm22", "--grid-file", str(path))
        assert out.returncode in (0, 1)
        report = json.loads(out.stdout)
        assert report["summary"]["total"] == 1
        assert report["summary"]["errored"] == 0


class TestList:
    def test_contains_tags_sorted(self):
        out = run_cli("list")
        assert out.returncode == 0
        for tag in ("thm21", "cor31", "tbl21_B"):
            assert tag in out.stdout
        tags = [json.loads(run_cli("list", "--format", "json").stdout)[i]["tag"]
                for i in range(3)]
        assert tags == sorted(tags)

    def test_json_catalogue_complete(self):
        catalogue = json.loads(run_cli("list", "--format", "json").stdout)
        assert len(catalogue) == 23
        assert [entry["tag"] for entry in catalogue] == sorted(
            entry["tag"] for entry in catalogue)


class TestDeterminism:
    COMMANDS = (
        ("expand", "--family", "euler", "--m", "2", "--lambda", "1/2",
         "--base", "laguerre", "--degree", "2", "--x", "1/3", "--y", "2/7",
         "--n", "6", "--format", "json"),
        ("sums", "--kind", "genM", "--k", "4", "--n", "6", "--lambda=-3/5",
         "--format", "csv"),
        ("list", "--format", "json"),
    )

    @pytest.mark.parametrize("command", COMMANDS, ids=lambda c: c[0])
    def test_byte_identical_runs(self, command):
        first = run_cli(*command)
        second = run_cli(*command)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout

    def test_verify_byte_identical_and_thread_invariant(self, tmp_path):
        grid = [{"n": n, "m": 1, "c": c, "d": 1, "lambda": "1/2", "mu": 1, "nu": 1,
                 "base": "gould_hopper", "degree": 2}
                for n in range(3) for c in (1, 3)]
        path = tmp_path / "grid.json"
        path.write_text(json.dumps(grid))
        args = ("verify", "--identity", "thm21", "--grid-file", str(path))
        first = run_cli(*args)
        second = run_cli(*args)
        threaded = run_cli(*args, env_extra={"APX_THREADS": "4"})
        assert first.stdout == second.stdout == threaded.stdout
        assert first.returncode == threaded.returncode == 0

    def test_output_file_matches_stdout(self, tmp_path):
        target = tmp_path / "out.json"
        piped = run_cli("expand", "--family", "bernoulli", "--x", "sym", "--n", "3",
                        "--format", "json")
        run_cli("expand", "--family", "bernoulli", "--x", "sym", "--n", "3",
                "--format", "json", "--output", str(target))
        assert target.read_text() == piped.stdout


class TestGoldenFiles:
    CASES = (
        ("expand_euler_sym", ("expand", "--family", "euler", "--m", "1",
                              "--lambda", "1", "--x", "sym", "--n", "4")),
        ("expand_bernoulli_sym", ("expand", "--family", "bernoulli", "--m", "1",
                                  "--lambda", "1", "--x", "sym", "--n", "4")),
        ("expand_gh_genocchi", ("expand", "--family", "genocchi", "--m", "2",
                                "--lambda", "2", "--base", "gould_hopper",
                                "--degree", "2", "--x", "1/2", "--y", "1/3",
                                "--n", "6")),
    )

    @pytest.mark.parametrize("name,args", CASES, ids=lambda c: c if isinstance(c, str) else "")
    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_matches_golden(self, name, args, fmt):
        out = run_cli(*args, "--format", fmt)
        assert out.returncode == 0
        golden = (GOLDEN / f"{name}.{fmt}").read_text()
        assert out.stdout == golden
