"""Command-line interface: ``staircase eval|deriv|verify|plot-data|presets``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 spec
validation error or a point outside ``M``.
"""

from __future__ import annotations

import csv
import json
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional

import click

from .construction import SingularFunction
from .errors import NotInM, SpecError, StaircaseError
from .foundation import parse_rational, render_rational
from .specfile import PRESET_NOTES, PRESETS, chain_to_dict, load_spec
from .verify import (Report, check_derivative, check_growth_bound, check_monotone,
                     check_partition, check_singular, derivative_points, random_pairs)

SUITES = ("growth", "derivative", "singular", "monotone", "partition")

EXIT_FAIL = 1
EXIT_SPEC = 3


class RationalType(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


RATIONAL = RationalType()


def _load(spec: str, densify: Optional[bool]) -> SingularFunction:
    try:
        return SingularFunction(load_spec(spec, densify))
    except SpecError as exc:
        click.echo(f"spec error: {exc}", err=True)
        sys.exit(EXIT_SPEC)


def _approx(q: Fraction) -> str:
    return f"{float(q):.17g}"


spec_option = click.option("--spec", "spec", required=True,
                           help="Preset name or path to a JSON spec file.")
densify_option = click.option("--densify/--no-densify", default=None,
                              help="Override the spec's densify flag.")


@click.group()
def main():
    """Evaluate and verify a strictly increasing singular function."""


@main.command("eval")
@spec_option
@densify_option
@click.option("--x", "x", type=RATIONAL, required=True, help="Query point p/q in [0, 1].")
@click.option("--eps-bits", type=click.IntRange(1, 4096), default=40, show_default=True)
@click.option("--approx", is_flag=True, help="Also print approximate decimals.")
def eval_cmd(spec, densify, x, eps_bits, approx):
    """Print a certified enclosure [lo, hi] of f(x)."""
    sf = _load(spec, densify)
    if not 0 <= x <= 1:
        raise click.BadParameter("x must lie in [0, 1]", param_hint="--x")
    enc = sf.f_eval(x, Fraction(1, 2 ** eps_bits))
    click.echo(enc.render())
    if approx:
        click.echo(f"approx (not certified): [{_approx(enc.lo)}, {_approx(enc.hi)}]")


@main.command()
@spec_option
@densify_option
@click.option("--a", "a", type=RATIONAL, required=True, help="Point of M.")
def deriv(spec, densify, a):
    """Print the level of a and the derivative f'(a) = 2^(1-level)."""
    sf = _load(spec, densify)
    try:
        level = sf.level_of(a)
    except NotInM as exc:
        click.echo(f"NotInM: {exc}", err=True)
        sys.exit(EXIT_SPEC)
    click.echo(f"level={level} derivative={render_rational(sf.claimed_derivative(a))}")


def run_suite(sf: SingularFunction, suite: str, seed: int, count: int) -> List[Report]:
    chain = sf.chain
    if suite == "growth":
        return [check_growth_bound(sf, n, count, seed) for n in range(1, 9)]
    if suite == "derivative":
        return [check_derivative(sf, a, range(8, 21))
                for a in derivative_points(sf, seed)]
    if suite == "singular":
        return [check_singular(sf, count, seed)]
    if suite == "monotone":
        dense = chain.densify or chain.stream == "rationals"
        return [check_monotone(sf, random_pairs(seed, count), require_strict=dense)]
    if suite == "partition":
        return [check_partition(sf, range(1, 9), count, seed)]
    raise ValueError(suite)


def build_payload(sf: SingularFunction, suite: str, seed: int, count: int) -> Dict[str, Any]:
    suites = SUITES if suite == "all" else (suite,)
    reports = []
    for name in suites:
        reports.extend(run_suite(sf, name, seed, count))
    passed = all(r.passed for r in reports)
    return {
        "suite": suite,
        "seed": seed,
        "count": count,
        "spec": chain_to_dict(sf.chain),
        "reports": [r.to_dict() for r in reports],
        "summary": {"verdict": "pass" if passed else "fail",
                    "heuristic": any(r.heuristic for r in reports)},
    }


@main.command()
@spec_option
@densify_option
@click.option("--suite", type=click.Choice(SUITES + ("all",)), default="all", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--count", type=click.IntRange(min=1), default=100, show_default=True,
              help="Samples per check (pairs for monotone).")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report here instead of stdout.")
def verify(spec, densify, suite, seed, count, out):
    """Run verification checks and emit a JSON report; exit 1 on failure."""
    sf = _load(spec, densify)
    try:
        payload = build_payload(sf, suite, seed, count)
    except StaircaseError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_SPEC)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        for r in payload["reports"]:
            tag = " (heuristic)" if r["summary"]["heuristic"] else ""
            click.echo(f"{r['check']}: {r['summary']['verdict']}{tag} {r['summary']['counts']}")
    else:
        click.echo(text, nl=False)
    if payload["summary"]["verdict"] != "pass":
        sys.exit(EXIT_FAIL)


@main.command("plot-data")
@spec_option
@densify_option
@click.option("--grid-bits", type=click.IntRange(0, 24), required=True)
@click.option("--eps-bits", type=click.IntRange(1, 4096), default=40, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--approx", is_flag=True, help="Add approximate decimal columns.")
def plot_data(spec, densify, grid_bits, eps_bits, out, approx):
    """Write x,f_lo,f_hi over the dyadic grid k/2^G as CSV."""
    sf = _load(spec, densify)
    eps = Fraction(1, 2 ** eps_bits)
    size = 2 ** grid_bits
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        header = ["x", "f_lo", "f_hi"]
        if approx:
            header += ["x_approx", "f_lo_approx", "f_hi_approx"]
        writer.writerow(header)
        for k in range(size + 1):
            x = Fraction(k, size)
            enc = sf.f_eval(x, eps)
            row = [render_rational(x), render_rational(enc.lo), render_rational(enc.hi)]
            if approx:
                row += [_approx(x), _approx(enc.lo), _approx(enc.hi)]
            writer.writerow(row)


@main.command()
def presets():
    """List the built-in specs."""
    for name in PRESETS:
        click.echo(f"{name}: {PRESET_NOTES[name]}")


if __name__ == "__main__":
    main()
