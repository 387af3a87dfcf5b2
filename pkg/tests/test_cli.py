import csv
import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from staircase.cli import main
from staircase.foundation import parse_rational


@pytest.fixture
def run():
    runner = CliRunner()
    return lambda *args: runner.invoke(main, list(args))


def test_eval_midpoint_zero(run):
    res = run("eval", "--spec", "midpoint", "--x", "0/1", "--eps-bits", "40")
    assert res.exit_code == 0
    lo, hi = (parse_rational(t) for t in res.output.strip().strip("[]").split(", "))
    assert lo <= 0 <= hi and hi - lo <= Fraction(1, 2 ** 40)


def test_eval_approx_is_labelled(run):
    res = run("eval", "--spec", "endpoints", "--x", "1/3", "--eps-bits", "20", "--approx")
    assert res.exit_code == 0 and "not certified" in res.output


def test_deriv(run):
    res = run("deriv", "--spec", "midpoint", "--a", "1/2")
    assert res.exit_code == 0 and res.output.strip() == "level=2 derivative=1/2"
    res = run("deriv", "--spec", "midpoint", "--a", "1/3")
    assert res.exit_code == 3 and "NotInM" in res.output


def test_usage_errors(run):
    assert run("eval", "--spec", "midpoint", "--x", "0.5").exit_code == 2
    assert run("eval", "--spec", "midpoint").exit_code == 2
    assert run("frobnicate").exit_code == 2
    assert run("verify", "--spec", "midpoint", "--suite", "nope").exit_code == 2


def test_presets(run):
    res = run("presets")
    names = [line.split(":")[0] for line in res.output.splitlines()]
    assert names == ["endpoints", "midpoint", "cantor-chain", "rationals-dense"]


def test_spec_file(run, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({
        "levels": [{"points": ["0", "1"]}, {"points": ["1/3"], "cantors": [{"a": "1/2", "b": "5/9"}]}],
        "densify": False,
    }))
    res = run("deriv", "--spec", str(spec), "--a", "1/3")
    assert res.output.strip() == "level=2 derivative=1/2"
    res = run("deriv", "--spec", str(spec), "--a", "1/2")
    assert res.output.strip() == "level=2 derivative=1/2"


@pytest.mark.parametrize("doc, field", [
    ({"levels": [{"points": ["0", "2"]}]}, "levels[0].points[1]"),
    ({"levels": [{"points": ["1/2"]}]}, "levels[0].points"),
    ({"levels": [{"points": ["0", "1"], "cantors": [{"a": "1", "b": "0"}]}]}, "levels[0].cantors[0]"),
    ({"levels": [{"points": ["0", "1"]}], "stream": {"kind": "primes"}}, "stream.kind"),
    ({"levels": [{"points": ["0", "1"]}], "caps": {"scan_depth_cap": 0}}, "caps.scan_depth_cap"),
    ({"levels": [{"points": [0, 1]}]}, "levels[0].points[0]"),
])
def test_spec_validation(run, tmp_path, doc, field):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps(doc))
    res = run("eval", "--spec", str(spec), "--x", "1/2")
    assert res.exit_code == 3
    assert field in res.output


def test_spec_syntax_error_reports_line(run, tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text('{\n  "levels": [\n}\n')
    res = run("eval", "--spec", str(spec), "--x", "1/2")
    assert res.exit_code == 3 and "line 3" in res.output
    assert run("eval", "--spec", "no-such-preset", "--x", "1/2").exit_code == 3


def test_plot_data(run, tmp_path):
    out = tmp_path / "f.csv"
    res = run("plot-data", "--spec", "midpoint", "--grid-bits", "6", "--eps-bits", "30",
              "--out", str(out))
    assert res.exit_code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["x", "f_lo", "f_hi"]
    xs = [parse_rational(r[0]) for r in rows[1:]]
    assert xs == sorted(set(xs)) and len(xs) == 65
    eps = Fraction(1, 2 ** 30)
    lows = [parse_rational(r[1]) for r in rows[1:]]
    assert all(b >= a - 2 * eps for a, b in zip(lows, lows[1:]))


def test_verify_report_schema(run, tmp_path):
    out = tmp_path / "r.json"
    res = run("verify", "--spec", "midpoint", "--suite", "growth", "--count", "10", "--out", str(out))
    assert res.exit_code == 0
    payload = json.loads(out.read_text())
    assert payload["summary"]["verdict"] == "pass"
    rep = payload["reports"][0]
    assert set(rep) == {"check", "params", "seed", "cases", "summary"}
    assert set(rep["cases"][0]) == {"input", "bound", "observed", "verdict"}


def test_verify_failure_exit_code(run):
    # the singularity heuristic misses its quota on cantor-chain at these scales
    res = run("verify", "--spec", "cantor-chain", "--suite", "singular", "--count", "40",
              "--seed", "7")
    payload = json.loads(res.output)
    assert payload["summary"] == {"heuristic": True, "verdict": "fail"}
    assert res.exit_code == 1
