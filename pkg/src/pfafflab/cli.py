"""Command line front end.

Every subcommand defaults to the built-in instances, so
``pfafflab verify paper-suite`` or ``pfafflab k3 census --prime 29`` work
without any input files; files produced by ``export-fixture`` round-trip
through the ``--group`` / ``--poly`` options.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import geometry, io as fio, representations
from .errors import PfafflabError, UnknownFixture
from .fields import ReductionContext
from .fixtures import agl7_cubic, export_fixture
from .pfaffians import build_family
from .report import SuiteConfig, SuiteConfigError, SuiteContext, run_suite, render_text
from .report import check_fiber_round_trip, check_lines


@click.group()
def main():
    """Exact verification toolkit for equivariant skew families."""


def _echo_json(doc, out: str | None):
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
        click.echo(f"wrote {out}")
    else:
        click.echo(text)


def _suite_context(prime: int, parameter: str, seed: int) -> SuiteContext:
    primes = (prime, 43 if prime != 43 else 29)
    return SuiteContext(SuiteConfig(primes=primes, seed=seed, parameter=parameter))


# -- pfaffian ----------------------------------------------------------------


@main.group()
def pfaffian():
    """Skew family construction."""


@pfaffian.command("build")
@click.option("--group", "group_path", required=True, type=click.Path(exists=True))
@click.option("--pencil-lambda", "pencil_lambda", default="2", show_default=True)
@click.option("--out", default="family.json", show_default=True)
def pfaffian_build(group_path, pencil_lambda, out):
    """Enumerate a group file, average to the invariant pencil, and emit the
    skew family of the chosen pencil member."""
    doc = json.loads(Path(group_path).read_text())
    field, generators, names = fio.group_from_json(doc)
    cache = fio.DiskCache.from_environment()
    rep = fio.cached_enumerate_group(field, generators, names, cache)
    chi = representations.character(rep)
    chi2 = representations.exterior_square_character(chi, rep.squares)
    predicted = representations.multiplicity(chi2, chi, rep)
    ext = representations.exterior_square(rep)
    pencil = representations.equivariant_hom_basis(rep, ext.matrices, ext.dim, predicted)
    lam = field.parse(pencil_lambda)
    member = representations.pencil_member(pencil, lam)
    fam = build_family(member, rep.dim, field)
    _echo_json(fio.family_to_json(fam), out)
    click.echo(
        f"group order {rep.order}, pencil rank {pencil.rank}, member dimension {member.dim}",
        err=True,
    )


# -- smooth --------------------------------------------------------------------


@main.group()
def smooth():
    """Smoothness certification."""


@smooth.command("check")
@click.option("--poly", "poly_path", type=click.Path(exists=True), default=None,
              help="Polynomial file; defaults to the built-in family pfaffian.")
@click.option("--lambda", "parameter", default="2", show_default=True)
@click.option("--prime", "primes", multiple=True, type=int, default=(29,), show_default=True)
@click.option("--power-bound", default=24, show_default=True)
def smooth_check(poly_path, parameter, primes, power_bound):
    """Jacobian-criterion verdict at one or more primes."""
    strata = {}
    if poly_path:
        form = fio.polynomial_from_json(json.loads(Path(poly_path).read_text()))
        if form.nvars == 7 and parameter is not None:
            value = form.field.parse(parameter)
            form = form.substitute_values({6: value}).remove_variable(6)
    else:
        fx = agl7_cubic()
        value = fx.field.from_rational(Fraction(parameter))
        sign = fx.field.from_int(fx.pfaffian_sign)
        form = fx.cubic_at(value).scale(sign * value)
        for p in primes:
            ctx = ReductionContext(p, fx.field)
            strata[p] = [
                [[ctx.reduce(x) for x in row] for row in m] for m in fx.group.elements[1:]
            ]
    results = {}
    for p in primes:
        verdict = geometry.smoothness_check(
            form, p, power_bound=power_bound, strata_matrices=strata.get(p, ())
        )
        results[str(p)] = {
            "status": verdict.status,
            "variable_powers": verdict.variable_powers,
            "witness": [str(w) for w in verdict.witness] if verdict.witness else None,
            "witness_field": verdict.witness_field,
            "notes": verdict.notes,
        }
    _echo_json({"parameter": parameter, "verdicts": results}, None)
    if any(r["status"] == "unknown" for r in results.values()):
        sys.exit(0)


# -- k3 --------------------------------------------------------------------------


@main.group()
def k3():
    """Point census of the associated degree-two locus."""


@k3.command("census")
@click.option("--prime", default=29, show_default=True, type=int)
@click.option("--lambda", "parameter", default="2", show_default=True)
@click.option("--samples", default=50, show_default=True, type=int)
@click.option("--seed", default=7, show_default=True, type=int)
@click.option("--out", default=None, help="Write the JSON report here.")
@click.option("--points-out", default=None, help="Binary cache of corank-two points (.npy).")
def k3_census_cmd(prime, parameter, samples, seed, out, points_out):
    fx = agl7_cubic()
    value = fx.field.from_rational(Fraction(parameter))
    fam = fx.family.specialize([value])
    ctx = ReductionContext(prime, fx.field)
    b_int = fam.reduce_mod_p(ctx)
    cache_path = points_out
    if cache_path is None:
        cache = fio.DiskCache.from_environment()
        if cache.enabled:
            key = fio.content_hash({"family": fio.family_to_json(fam), "p": prime})
            cache_path = cache.path_for(f"census-{key}", suffix=".npy")
    census = geometry.k3_census(
        b_int, prime, parameter=parameter, samples=samples, seed=seed, cache_path=cache_path
    )
    doc = {
        "p": census.p,
        "lambda": census.parameter,
        "n2": census.n2,
        "n3": census.n3,
        "surface_count": census.surface_count,
        "weil_ok": census.weil_ok,
        "corank_counts": {str(k): v for k, v in census.corank_counts.items()},
        "samples": census.samples,
        "seconds": round(census.elapsed, 1),
        "points_cache": str(cache_path) if cache_path else None,
    }
    _echo_json(doc, out)


# -- lines / fiber -----------------------------------------------------------------


@main.group()
def lines():
    """Lines on the hypersurface from pairs of surface planes."""


@lines.command("sample")
@click.option("--pairs", default=50, show_default=True, type=int)
@click.option("--prime", default=29, show_default=True, type=int)
@click.option("--lambda", "parameter", default="2", show_default=True)
@click.option("--seed", default=7, show_default=True, type=int)
def lines_sample(pairs, prime, parameter, seed):
    ctx = _suite_context(prime, parameter, seed)
    ctx.config.line_pairs = pairs
    status, artifacts = check_lines(ctx)
    _echo_json({"status": status, **artifacts}, None)
    sys.exit(0 if status == "pass" else 1)


@main.group()
def fiber():
    """Kernel fibers of the family."""


@fiber.command("roundtrip")
@click.option("--samples", default=200, show_default=True, type=int)
@click.option("--prime", default=29, show_default=True, type=int)
@click.option("--lambda", "parameter", default="2", show_default=True)
@click.option("--seed", default=7, show_default=True, type=int)
def fiber_roundtrip(samples, prime, parameter, seed):
    ctx = _suite_context(prime, parameter, seed)
    ctx.config.fiber_samples = samples
    ctx.config.roundtrip_samples = samples
    status, artifacts = check_fiber_round_trip(ctx)
    _echo_json({"status": status, **artifacts}, None)
    sys.exit(0 if status == "pass" else 1)


# -- weights -------------------------------------------------------------------------


@main.command("weights")
@click.option("--element", default="g", show_default=True,
              help="Diagonal generator name; optionally g^k.")
@click.option("--lambda", "parameter", default="2", show_default=True)
@click.option("--all-coordinate-points", is_flag=True, default=False)
def weights_cmd(element, parameter, all_coordinate_points):
    """Tangent weights at the coordinate fixed points of the diagonal action."""
    fx = agl7_cubic()
    power = 1
    if element.startswith("g^"):
        power = int(element[2:])
        element = "g"
    if element != "g":
        raise click.UsageError("only the diagonal generator g (or g^k) has isolated fixed points")
    exponents = tuple(a * power % 7 for a in fx.exponents)
    value = fx.field.from_rational(Fraction(parameter))
    form = fx.cubic_at(value)
    weights = geometry.fixed_point_weights(form, exponents, 7, fx.field)
    rows = [
        {
            "point": f"e{w.point_index + 1}",
            "normal": f"x{w.normal_index + 1}" if w.normal_index is not None else None,
            "ambient": list(w.ambient_weights),
            "tangent": list(w.tangent_weights) if w.tangent_weights else None,
        }
        for w in weights
    ]
    if not all_coordinate_points:
        rows = rows[:1]
    _echo_json({"element": element if power == 1 else f"g^{power}", "weights": rows}, None)


# -- verify ----------------------------------------------------------------------------


@main.group()
def verify():
    """Run the full verification suite."""


@verify.command("paper-suite")
@click.option("--only", "only", multiple=True, help="Run a subset of checks by name.")
@click.option("--prime", "primes", multiple=True, type=int,
              help="Working primes (first drives the census); defaults to 29 and 43.")
@click.option("--seed", default=7, show_default=True, type=int)
@click.option("--parameter", "--lambda", "parameter", default="2", show_default=True)
@click.option("--out", default=None, help="Write the JSON report here.")
def verify_paper_suite(only, primes, seed, parameter, out):
    config = SuiteConfig(
        primes=tuple(primes) if primes else (29, 43),
        seed=seed,
        parameter=parameter,
        only=tuple(only) if only else None,
    )
    if len(config.primes) == 1:
        config.primes = (config.primes[0], 43 if config.primes[0] != 43 else 29)
    try:
        report = run_suite(config)
    except SuiteConfigError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(2)
    click.echo(render_text(report))
    if out:
        Path(out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
        click.echo(f"wrote {out}")
    sys.exit(0 if report["summary"]["fail"] == 0 else 1)


# -- export-fixture ------------------------------------------------------------------------


@main.command("export-fixture")
@click.argument("name")
@click.option("--dir", "directory", default=".", show_default=True)
def export_fixture_cmd(name, directory):
    """Write a named fixture (group / family / polynomial files)."""
    try:
        paths = export_fixture(name, directory)
    except UnknownFixture as exc:
        click.echo(str(exc), err=True)
        sys.exit(2)
    for path in paths:
        click.echo(path)


def entry_point():
    try:
        main()
    except PfafflabError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    entry_point()
