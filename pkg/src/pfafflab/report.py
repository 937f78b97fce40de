"""The one-shot verification suite: every acceptance check, run in dependency
order against the built-in instances, emitting machine-readable JSON and a
plain text table.

Checks return pass / fail / unknown; search budgets that run out surface as
unknown, never as silent retries.  All randomness derives from one seed.
"""

from __future__ import annotations

import random
import time
import traceback
from dataclasses import dataclass
from fractions import Fraction

from . import geometry, linalg, representations
from .errors import NoRoot, BudgetExceeded, PfafflabError, DegenerateSpan, UnexpectedSolutionDim
from .fields import ReductionContext, find_root_of_unity
from .fixtures import (
    agl5_quadric,
    agl7_cubic,
    agl8_abstract_actions,
    agl8_fivefold,
    agl8_quadric,
    agl9_quartic,
    dihedral_quadric,
    segre_substitution,
    _perm_matrix,
)
from .io import DiskCache, content_hash, family_to_json
from .pfaffians import congruence_semi_invariance, determinant, pfaffian
from .polynomials import LinearSubstitution, SparsePolynomial, find_equivariant_labeling, semi_invariance

SCHEMA_VERSION = 1


class SuiteConfigError(PfafflabError):
    pass


@dataclass
class SuiteConfig:
    primes: tuple[int, ...] = (29, 43)
    seed: int = 7
    parameter: str = "2"
    census_samples: int = 60
    power_bound: int = 24
    pair_cap: int = 1_000_000
    corank_samples: int = 500
    fiber_samples: int = 200
    roundtrip_samples: int = 200
    line_pairs: int = 50
    pencil_count: int = 20
    freeness_samples: int = 25
    only: tuple[str, ...] | None = None
    cache_dir: str | None = None

    def validate(self):
        if len(self.primes) < 2:
            raise SuiteConfigError("two working primes are required")
        for p in self.primes:
            try:
                find_root_of_unity(p, 7)
            except NoRoot as exc:
                raise SuiteConfigError(
                    f"prime {p} has no seventh root of unity: {exc}"
                ) from exc


class SuiteContext:
    """Lazy shared artifacts so any check subset can run on its own."""

    def __init__(self, config: SuiteConfig):
        config.validate()
        self.config = config
        self.cache = DiskCache(config.cache_dir) if config.cache_dir else DiskCache.from_environment()
        self.fx = agl7_cubic()
        self.param = self.fx.field.from_rational(Fraction(config.parameter))
        self._census = None
        self._b_int = {}
        self._x_points = {}
        self._pencil = None

    # -- families reduced mod p ----------------------------------------------

    def b_int(self, p: int):
        if p not in self._b_int:
            fam = self.fx.family.specialize([self.param])
            ctx = ReductionContext(p, self.fx.field)
            self._b_int[p] = fam.reduce_mod_p(ctx)
        return self._b_int[p]

    def strata_matrices(self, p: int):
        ctx = ReductionContext(p, self.fx.field)
        return [
            [[ctx.reduce(x) for x in row] for row in m]
            for m in self.fx.group.elements[1:]
        ]

    # -- expensive shared artifacts --------------------------------------------

    @property
    def census(self) -> geometry.K3Census:
        if self._census is None:
            p = self.config.primes[0]
            cache_path = None
            if self.cache.enabled:
                key = content_hash(
                    {"family": family_to_json(self.fx.family.specialize([self.param])), "p": p}
                )
                cache_path = self.cache.path_for(f"census-{key}", suffix=".npy")
            self._census = geometry.k3_census(
                self.b_int(p),
                p,
                parameter=self.config.parameter,
                samples=self.config.census_samples,
                seed=self.config.seed,
                cache_path=cache_path,
            )
        return self._census

    def x_points(self, count: int, seed: int):
        key = (count, seed)
        if key not in self._x_points:
            self._x_points[key] = geometry.sample_hypersurface_points(
                self.b_int(self.config.primes[0]), self.config.primes[0], count, seed
            )
        return self._x_points[key]

    @property
    def pencil(self):
        if self._pencil is None:
            rep = self.fx.group
            chi = representations.character(rep)
            chi2 = representations.exterior_square_character(chi, rep.squares)
            predicted = representations.multiplicity(chi2, chi, rep)
            ext = representations.exterior_square(rep)
            self._pencil = (
                representations.equivariant_hom_basis(rep, ext.matrices, ext.dim, predicted),
                ext,
                predicted,
            )
        return self._pencil

    def pfaffian_form_at(self, value) -> SparsePolynomial:
        """The specialized hypersurface form: the pfaffian of the family at the
        given parameter (vanishes identically at parameter zero)."""
        sign = self.fx.field.from_int(self.fx.pfaffian_sign)
        return self.fx.cubic_at(value).scale(sign * value)


# ---------------------------------------------------------------------------
# individual checks: return (status, artifacts)


def check_pfaffian_identity(ctx: SuiteContext):
    fx = ctx.fx
    entries = fx.family.entry_matrix()
    zero = SparsePolynomial.zero(7, fx.field)
    pf = pfaffian(entries, zero)
    lamvar = SparsePolynomial.variable(7, fx.field, 6)
    target = lamvar * fx.cubic
    sign = None
    if pf == target:
        sign = 1
    elif pf == -target:
        sign = -1
    ok = sign is not None and sign == fx.pfaffian_sign
    return ("pass" if ok else "fail"), {"sign": sign, "terms": len(pf.terms)}


def check_pfaffian_square(ctx: SuiteContext):
    fx = ctx.fx
    entries = fx.family.entry_matrix()
    zero = SparsePolynomial.zero(7, fx.field)
    one = SparsePolynomial.constant(7, fx.field, fx.field.one)
    pf = pfaffian(entries, zero)
    ok_main = pf * pf == determinant(entries, zero, one)

    dq = dihedral_quadric(3)
    e4 = dq.family.entry_matrix()
    zero4 = SparsePolynomial.zero(4, dq.field)
    one4 = SparsePolynomial.constant(4, dq.field, dq.field.one)
    pf4 = pfaffian(e4, zero4)
    ok_dihedral = pf4 * pf4 == determinant(e4, zero4, one4)
    ok = ok_main and ok_dihedral
    return ("pass" if ok else "fail"), {"six_by_six": ok_main, "four_by_four": ok_dihedral}


def check_multiplicity(ctx: SuiteContext):
    rep = ctx.fx.group
    chi = representations.character(rep)
    chi2 = representations.exterior_square_character(chi, rep.squares)
    m_wedge = representations.multiplicity(chi2, chi, rep)
    m_self = representations.multiplicity(chi, chi, rep)
    ok = m_wedge == 2 and m_self == 1
    return ("pass" if ok else "fail"), {"wedge_multiplicity": m_wedge, "self_multiplicity": m_self}


def check_hom_pencil(ctx: SuiteContext):
    fx = ctx.fx
    pencil, ext, predicted = ctx.pencil
    rng = random.Random(ctx.config.seed + 5)
    degenerate = []
    stable = True
    gen_indices = [fx.group.index[fx.g_matrix], fx.group.index[fx.h_matrix]]
    for k in range(ctx.config.pencil_count):
        lam = fx.field.random_element(rng, 4)
        member = representations.pencil_member(pencil, lam)
        if member.dim != 6:
            degenerate.append(str(lam))
            continue
        for gi in gen_indices:
            w = ext.matrices[gi]
            image = linalg.Subspace(
                fx.field, ext.dim, [linalg.mat_vec(w, v) for v in member.basis]
            )
            if image != member:
                stable = False
    fam = fx.family.specialize([ctx.param])
    target = linalg.Subspace(fx.field, ext.dim, fam.bivector_basis())
    matching = representations.match_pencil_parameter(pencil, target)
    ok = predicted == 2 and stable and matching is not None and not degenerate
    return ("pass" if ok else "fail"), {
        "hom_dimension": predicted,
        "degenerate_parameters": degenerate,
        "stability": "verified on generators, which generate the group",
        "matching_parameter": [str(x) for x in matching] if matching else None,
    }


def check_segre(ctx: SuiteContext):
    seg = segre_substitution()
    K = seg.field
    linear_image = seg.substitution.apply(seg.sum_linear)
    expected_linear = SparsePolynomial(
        7, K, {(1, 0, 0, 0, 0, 0, 0): K.from_int(7)}
    )
    first = linear_image == expected_linear

    cube_image = (
        seg.substitution.apply(seg.sum_cubes).substitute_values({0: K.zero}).remove_variable(0)
    )
    second = cube_image == seg.displayed_form.scale(K.from_int(21))

    relabeled = seg.displayed_form.substitute_linear(_perm_matrix(K, seg.relabel))
    target = ctx.fx.cubic_with_squared_parameter(ctx.fx.field.from_int(2))
    third = relabeled == target
    ok = first and second and third
    return ("pass" if ok else "fail"), {
        "linear_form_to_seven_x0": first,
        "cubes_to_displayed_times_21": second,
        "relabeling_scalar": "1" if third else None,
        "squared_parameter": 2,
    }


def check_semi_invariance(ctx: SuiteContext):
    fx = ctx.fx
    art = {}
    rg = semi_invariance(fx.cubic, fx.substitution(fx.g_matrix, "g"))
    rh = semi_invariance(fx.cubic, fx.substitution(fx.h_matrix, "h"))
    art["cubic_scalar_g"] = str(rg.scalar) if rg.is_semi_invariant else None
    art["cubic_scalar_h"] = str(rh.scalar) if rh.is_semi_invariant else None
    ok = (
        rg.is_semi_invariant
        and rg.scalar == fx.field.one
        and rh.is_semi_invariant
        and rh.scalar == -fx.field.one
    )

    dq = dihedral_quadric(3)
    swap_coords = LinearSubstitution(dq.field, _perm_matrix(dq.field, (0, 2, 1, 3)), "swap")
    rep_swap = congruence_semi_invariance(dq.family, swap_coords, dq.swap)
    art["dihedral_swap_scalar"] = str(rep_swap.scalar) if rep_swap.holds else None
    ok = ok and rep_swap.holds and rep_swap.scalar == -dq.field.one

    for fixture in (agl5_quadric(), agl8_quadric(), agl9_quartic()):
        stats = []
        for form in fixture.forms:
            for gen in fixture.generators:
                r = semi_invariance(form, LinearSubstitution(fixture.field, gen))
                stats.append(bool(r.is_semi_invariant and r.scalar == fixture.field.one))
        art[fixture.name] = all(stats)
        ok = ok and all(stats)

    fivefold = agl8_fivefold()
    mult, translate = agl8_abstract_actions()
    labeling = find_equivariant_labeling(fivefold.forms[0], [mult, translate])
    art["fivefold_labeling"] = list(labeling) if labeling else None
    ok = ok and labeling is not None
    return ("pass" if ok else "fail"), art


def check_smoothness(ctx: SuiteContext):
    fx = ctx.fx
    art = {}
    failed = False
    budget_hit = False
    cases = {
        "working": ctx.pfaffian_form_at(ctx.param),
        "zero": ctx.pfaffian_form_at(fx.field.zero),
        "unit": ctx.pfaffian_form_at(fx.field.one),
        "fermat_restricted": segre_substitution().fermat_restricted,
    }
    expectations = {
        "working": "smooth",
        "zero": "not_smooth",
        "unit": "not_smooth",
        "fermat_restricted": "smooth",
    }
    for label, form in cases.items():
        statuses = {}
        for p in ctx.config.primes[:2]:
            strata = ctx.strata_matrices(p) if label in ("zero", "unit") else ()
            try:
                verdict = geometry.smoothness_check(
                    form,
                    p,
                    power_bound=ctx.config.power_bound,
                    pair_cap=ctx.config.pair_cap,
                    strata_matrices=strata,
                )
            except BudgetExceeded:
                statuses[p] = "budget-exhausted"
                budget_hit = True
                continue
            statuses[p] = verdict.status
            if verdict.witness is not None:
                art[f"{label}_witness_p{p}"] = [str(w) for w in verdict.witness]
        art[label] = {str(p): s for p, s in statuses.items()}
        decided = [v for v in statuses.values() if v != "budget-exhausted"]
        if expectations[label] == "smooth":
            # irrelevance must certify at every decided prime
            if any(v != "smooth" for v in decided):
                failed = True
        else:
            # a smooth certificate at either prime contradicts the expectation
            if any(v == "smooth" for v in decided):
                failed = True
    if failed:
        return "fail", art
    if budget_hit:
        return "unknown", art
    return "pass", art


def check_kernel_genericity(ctx: SuiteContext):
    from .pfaffians import kernel_at_point

    p = ctx.config.primes[0]
    b_int = ctx.b_int(p)
    points = ctx.x_points(ctx.config.corank_samples, ctx.config.seed + 1)
    exceptions = []
    for x in points:
        res = kernel_at_point(b_int, x, p)
        if res.rank != len(b_int[0]) - 2:
            exceptions.append(list(x))
    ratio = (len(points) - len(exceptions)) / len(points)
    ok = ratio >= 0.95
    return ("pass" if ok else "fail"), {
        "sampled": len(points),
        "corank_two_ratio": round(ratio, 4),
        "exceptions": exceptions[:10],
    }


def check_fiber_round_trip(ctx: SuiteContext):
    p = ctx.config.primes[0]
    b_int = ctx.b_int(p)
    rng = random.Random(ctx.config.seed + 2)
    single = 0
    off_hypersurface = 0
    total = ctx.config.fiber_samples
    drawn = 0
    while drawn < total:
        v = [rng.randrange(p) for _ in range(len(b_int[0]))]
        if not any(v):
            continue
        drawn += 1
        res = geometry.linearization_fiber(b_int, v, p)
        if res.status == "point":
            single += 1
            if not res.on_hypersurface:
                off_hypersurface += 1
    points = ctx.x_points(ctx.config.roundtrip_samples, ctx.config.seed + 3)
    non_generic = [list(x) for x in points if not geometry.kernel_fiber_round_trip(b_int, x, p)]
    single_ratio = single / total
    round_ratio = (len(points) - len(non_generic)) / len(points)
    ok = single_ratio >= 0.95 and off_hypersurface == 0 and round_ratio >= 0.95
    return ("pass" if ok else "fail"), {
        "single_valued_ratio": round(single_ratio, 4),
        "returned_points_off_hypersurface": off_hypersurface,
        "round_trip_ratio": round(round_ratio, 4),
        "non_generic_points": non_generic[:10],
    }


def check_k3_census(ctx: SuiteContext):
    census = ctx.census
    p = census.p
    divisible = census.n2 % (p + 1) == 0
    ok = (
        census.n3 == 0
        and divisible
        and census.surface_count is not None
        and census.weil_ok is True
    )
    return ("pass" if ok else "fail"), {
        "n2": census.n2,
        "n3": census.n3,
        "surface_count": census.surface_count,
        "weil_ok": census.weil_ok,
        "census_seconds": round(census.elapsed, 1),
        "plane_samples": len(census.samples),
    }


def check_lines(ctx: SuiteContext):
    p = ctx.config.primes[0]
    b_int = ctx.b_int(p)
    census = ctx.census
    planes = [
        (tuple(s["u"]), tuple(s["v"])) for s in census.samples
    ]
    if len(planes) < 2:
        return "unknown", {"note": "census produced too few plane samples"}
    rng = random.Random(ctx.config.seed + 4)
    wanted = ctx.config.line_pairs
    solved = 0
    skipped = []
    attempts = 0
    full_line_checked = 0
    while solved < wanted and attempts < 20 * wanted:
        attempts += 1
        i, j = rng.sample(range(len(planes)), 2)
        try:
            line = geometry.line_from_surface_pair(b_int, planes[i], planes[j], p)
        except (DegenerateSpan, UnexpectedSolutionDim) as exc:
            skipped.append({"pair": [i, j], "reason": str(exc)})
            continue
        # verify the pfaffian on every point of the line, not just four
        a, b = line.point_a, line.point_b
        from .pfaffians import family_matrix_at_point, pfaffian_mod_p

        all_zero = all(
            pfaffian_mod_p(
                family_matrix_at_point(
                    b_int, [(x + t * y) % p for x, y in zip(a, b)], p
                ),
                p,
            )
            == 0
            for t in range(p)
        ) and pfaffian_mod_p(family_matrix_at_point(b_int, b, p), p) == 0
        if not all_zero:
            return "fail", {"pair": [i, j], "note": "pfaffian does not vanish on the line"}
        full_line_checked += 1
        solved += 1
    ok = solved == wanted
    return ("pass" if ok else "fail"), {
        "lines_solved": solved,
        "pairs_skipped": skipped,
        "points_checked_per_line": p + 1,
    }


def check_degree_profile(ctx: SuiteContext):
    profile = representations.class_and_degree_profile(ctx.fx.group)
    ok = (
        profile.class_count == 7
        and profile.linear_character_count == 6
        and profile.degrees == (1, 1, 1, 1, 1, 1, 6)
    )
    return ("pass" if ok else "fail"), {
        "class_count": profile.class_count,
        "linear_characters": profile.linear_character_count,
        "degrees": list(profile.degrees) if profile.degrees else None,
    }


def check_dihedral_freeness(ctx: SuiteContext):
    from .fields import default_primes

    art = {}
    dq3 = dihedral_quadric(3)
    p3 = default_primes(3, 1)[0]
    rep3 = geometry.generic_freeness_sample(
        dq3.group, dq3.family, p3, samples=ctx.config.freeness_samples, seed=ctx.config.seed + 6
    )
    art["odd_case_kernel"] = rep3.kernel_elements
    art["odd_case_prime"] = p3

    dq4 = dihedral_quadric(4)
    p4 = default_primes(4, 1)[0]
    rep4 = geometry.generic_freeness_sample(
        dq4.group, dq4.family, p4, samples=ctx.config.freeness_samples, seed=ctx.config.seed + 6
    )
    art["even_case_kernel"] = rep4.kernel_elements
    art["even_case_prime"] = p4
    ok = rep3.generically_free and len(rep4.kernel_elements) >= 1
    return ("pass" if ok else "fail"), art


def check_fixed_point_weights(ctx: SuiteContext):
    fx = ctx.fx
    art = {}
    ok = True
    for label, value in (("working", ctx.param), ("second", fx.field.from_int(5))):
        form = fx.cubic_at(value)
        weights = geometry.fixed_point_weights(form, fx.exponents, 7, fx.field)
        art[f"{label}_points_on_hypersurface"] = len(weights)
        ok = ok and len(weights) == 6
        first = next(w for w in weights if w.point_index == 0)
        art[f"{label}_e1_tangent"] = list(first.tangent_weights or ())
        ok = ok and first.tangent_weights == (1, 2, 3, 5)
    return ("pass" if ok else "fail"), art


CHECKS = (
    ("pfaffian_identity", "pfaffian of the skew family equals a sign times the parameter times the cubic", check_pfaffian_identity, 10.0),
    ("pfaffian_square", "pfaffian squared equals the determinant for both families", check_pfaffian_square, 30.0),
    ("multiplicity", "the wedge square contains the six-dimensional representation twice", check_multiplicity, 5.0),
    ("hom_pencil", "a pencil of invariant six-dimensional subspaces of the wedge square", check_hom_pencil, None),
    ("segre", "Fourier substitution identities and the relabeling with squared parameter two", check_segre, 10.0),
    ("semi_invariance", "invariance scalars under the group generators and affine permutation actions", check_semi_invariance, 60.0),
    ("smoothness", "smooth at the working parameter, not smooth at zero and one, at two primes", check_smoothness, 180.0),
    ("kernel_genericity", "corank exactly two at almost all hypersurface points", check_kernel_genericity, 30.0),
    ("fiber_round_trip", "the kernel fiber is generically one point and inverts the kernel map", check_fiber_round_trip, 60.0),
    ("k3_census", "degree-two locus point count inside the Weil window", check_k3_census, 120.0),
    ("lines", "forms vanishing on the span of two surface planes cut a line on the hypersurface", check_lines, 30.0),
    ("degree_profile", "seven classes, six linear characters, forced degrees one^6 and six", check_degree_profile, 5.0),
    ("dihedral_freeness", "free action for odd dihedral parameter, kernel element for even", check_dihedral_freeness, 10.0),
    ("fixed_point_weights", "tangent weights one, two, three, five at the first coordinate point", check_fixed_point_weights, 5.0),
)


def run_suite(config: SuiteConfig | None = None) -> dict:
    config = config or SuiteConfig()
    ctx = SuiteContext(config)
    selected = CHECKS
    if config.only:
        wanted = set(config.only)
        selected = tuple(c for c in CHECKS if c[0] in wanted)
        unknown_names = wanted - {c[0] for c in CHECKS}
        if unknown_names:
            raise SuiteConfigError(f"unknown check names: {sorted(unknown_names)}")
    checks = []
    t_suite = time.time()
    for name, anchor, fn, budget in selected:
        t0 = time.time()
        try:
            status, artifacts = fn(ctx)
        except BudgetExceeded as exc:
            status, artifacts = "unknown", {"budget": str(exc)}
        except PfafflabError as exc:
            status, artifacts = "fail", {"error": f"{type(exc).__name__}: {exc}"}
        except Exception as exc:  # surfaced for triage, never swallowed
            status = "fail"
            artifacts = {
                "error": f"{type(exc).__name__}: {exc}",
                "trace": traceback.format_exc(limit=4),
            }
        checks.append(
            {
                "name": name,
                "anchor": anchor,
                "status": status,
                "seconds": round(time.time() - t0, 2),
                "budget_seconds": budget,
                "artifacts": artifacts,
            }
        )
    summary = {
        "pass": sum(c["status"] == "pass" for c in checks),
        "fail": sum(c["status"] == "fail" for c in checks),
        "unknown": sum(c["status"] == "unknown" for c in checks),
        "total_seconds": round(time.time() - t_suite, 2),
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "primes": list(config.primes),
            "seed": config.seed,
            "parameter": config.parameter,
            "only": list(config.only) if config.only else None,
        },
        "checks": checks,
        "summary": summary,
    }


def render_text(report: dict) -> str:
    lines = [
        f"verification suite (seed {report['config']['seed']}, primes {report['config']['primes']})",
    ]
    for check in report["checks"]:
        status = check["status"].upper()
        lines.append(f"[{status:<7}] {check['name']:<22} {check['seconds']:>8.2f}s  {check['anchor']}")
    s = report["summary"]
    lines.append(
        f"{s['pass']} pass, {s['fail']} fail, {s['unknown']} unknown in {s['total_seconds']:.1f}s"
    )
    return "\n".join(lines)


def strip_timings(report: dict) -> dict:
    """Determinism helper: the report minus wall-clock fields."""
    import copy

    out = copy.deepcopy(report)
    for check in out["checks"]:
        check.pop("seconds", None)
        art = check.get("artifacts", {})
        art.pop("census_seconds", None)
    out["summary"].pop("total_seconds", None)
    return out
