import csv
import io
import json
import subprocess
import sys

import pytest

from zetawallis.cli import CSV_COLUMNS, format_decimal, main, parse_complex, parse_int_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_proc(*argv):
    return subprocess.run([sys.executable, "-m", "zetawallis.cli", *argv], capture_output=True, timeout=300)


def test_zeta_text(capsys):
    code, out, _ = run(capsys, "zeta", "--s", "2", "--tol", "1e-10")
    assert code == 0
    assert out.startswith("zeta(2) = 1.6449340668")


def test_zeta_pole_exit(capsys):
    code, _, err = run(capsys, "zeta", "--s", "1")
    assert code == 3
    assert "pole at s=1" in err


def test_zeta_region_exit(capsys):
    code, _, _ = run(capsys, "zeta", "--s", "-2", "--k", "2", "--N", "10")
    assert code == 3


@pytest.mark.parametrize("argv", [["zeta", "--s", "abc"], ["zeta"], ["verify", "--identity", "nope"], ["exact", "--m", "-1"],
                                  ["exact", "--m", "2", "--c", "1"], ["study", "--s", "2", "--k", "x"]])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_negative_complex_argument(capsys):
    code, out, _ = run(capsys, "zeta", "--s", "-0.5,3", "--tol", "1e-8", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["inputs"]["s"] == "-0.5,3"


def test_cross_modulus_from_cli(capsys):
    vals = []
    for c in ("2", "3"):
        _, out, _ = run(capsys, "zeta", "--s", "-0.5", "--tol", "1e-8", "--c", c, "--json")
        rec = json.loads(out)
        vals.append((float(rec["value"]), float(rec["est_error"])))
    assert abs(vals[0][0] - vals[1][0]) <= vals[0][1] + vals[1][1]


@pytest.mark.parametrize("argv,expected", [(["--m", "0"], "-1/2\n"), (["--m", "1", "--check"], "-1/12 MATCH\n"),
                                           (["--m", "6"], "0\n")])
def test_exact_golden(capsys, argv, expected):
    code, out, _ = run(capsys, "exact", *argv)
    assert code == 0 and out == expected


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "zeta", "--s", "3,1", "--json")
    rec = json.loads(out)
    assert set(rec) == {"command", "inputs", "value", "est_error", "metadata", "extra"}
    assert rec["metadata"]["elapsed_ms"] is None
    assert json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n" == out
    assert complex(*map(float, rec["value"].split(","))) == pytest.approx(complex(1.1072, 0), abs=0.5)


def test_csv_columns(capsys):
    _, out, _ = run(capsys, "zeta", "--s", "2", "--csv", "--timing")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == CSV_COLUMNS
    assert rows[1][0] == "zeta" and rows[1][-1] != ""


def test_timing_only_on_request(capsys):
    _, out, _ = run(capsys, "zeta", "--s", "2", "--csv")
    assert list(csv.reader(io.StringIO(out)))[1][-1] == ""


def test_half_even_formatting():
    assert format_decimal(0.125, 2) == "0.12"
    assert format_decimal(0.375, 2) == "0.38"
    assert format_decimal(2.5, 1) == "2"
    assert format_decimal(0.0, 5) == "0"
    assert format_decimal(1.23456e-9, 3) == "1.23e-9"


def test_parsers():
    assert parse_complex("1.5,-2") == complex(1.5, -2)
    assert parse_int_list("1,4..6") == [1, 4, 5, 6]


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "gen1", "--N", "100000", "--tol", "1e-3")
    assert code == 0
    assert out.rstrip().endswith("PASS")
    assert "target_log = 0.18995863" in out


def test_verify_csv_and_out_file(tmp_path, capsys):
    target = tmp_path / "w.csv"
    code, out, _ = run(capsys, "verify", "--identity", "wallis", "--N", "1000", "--csv", "--out", str(target))
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.splitlines()[0] == "block,log_partial,gap"


def test_study_statuses(capsys):
    code, out, _ = run(capsys, "study", "--s", "-1.5", "--c", "2", "--k", "1..3", "--N", "10,100", "--json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    status = {(r["k"], r["N"]): r["status"] for r in rows}
    assert status[(1, 10)] == "region"
    assert status[(2, 10)] == "conditional regime"
    assert status[(3, 100)] == "ok"


@pytest.mark.parametrize(
    "argv",
    [
        ["zeta", "--s", "0.5,14.1", "--json"],
        ["exact", "--m", "11", "--check", "--csv"],
        ["verify", "--identity", "second", "--N", "20000"],
        ["study", "--s", "-2.5,3", "--k", "2..6", "--N", "10,100,1000", "--jobs", "4", "--csv"],
    ],
)
def test_determinism(argv):
    a, b = run_proc(*argv), run_proc(*argv)
    assert a.returncode == 0
    assert a.stdout == b.stdout and a.stdout


def test_parallel_study_matches_serial():
    base = ["study", "--s", "0.5,7", "--c", "2..4", "--k", "2..5", "--N", "10,100,1000"]
    assert run_proc(*base).stdout == run_proc(*base, "--jobs", "8").stdout
