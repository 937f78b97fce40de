"""Acceptance gate: one test per criterion, each run at its stated tolerance
and time budget, printing one pass/fail line.

Shared expensive artifacts (the census, hypersurface samples) live in a
session-scoped context so each criterion's clock measures only its own work.
Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.
"""

import time

import pytest

from pfafflab.fixtures import agl7_cubic, gf8, FANO_TRIPLES
from pfafflab.report import (
    SuiteConfig,
    SuiteContext,
    check_dihedral_freeness,
    check_fiber_round_trip,
    check_fixed_point_weights,
    check_hom_pencil,
    check_k3_census,
    check_kernel_genericity,
    check_lines,
    check_multiplicity,
    check_pfaffian_identity,
    check_pfaffian_square,
    check_segre,
    check_semi_invariance,
    check_smoothness,
)


@pytest.fixture(scope="session")
def ctx():
    return SuiteContext(SuiteConfig())


def run(number, label, fn, ctx, budget):
    t0 = time.time()
    status, artifacts = fn(ctx)
    dt = time.time() - t0
    line = f"criterion {number:>2} ({label}): {status.upper()} in {dt:.2f}s"
    print(line)
    assert status == "pass", f"{line}; artifacts: {artifacts}"
    if budget is not None:
        assert dt <= budget, f"criterion {number} took {dt:.1f}s, budget {budget}s"
    return artifacts


def test_criterion_01_pfaffian_identity(ctx):
    art = run(1, "pfaffian identity", check_pfaffian_identity, ctx, budget=10)
    assert art["sign"] == -1  # recorded expansion-convention sign


def test_criterion_02_pfaffian_square_is_determinant(ctx):
    art = run(2, "pfaffian squared = determinant", check_pfaffian_square, ctx, budget=30)
    assert art["six_by_six"] and art["four_by_four"]


def test_criterion_03_multiplicities(ctx):
    art = run(3, "wedge-square multiplicity", check_multiplicity, ctx, budget=5)
    assert art == {"wedge_multiplicity": 2, "self_multiplicity": 1}


def test_criterion_04_invariant_pencil(ctx):
    art = run(4, "invariant pencil", check_hom_pencil, ctx, budget=None)
    assert art["hom_dimension"] == 2
    assert art["degenerate_parameters"] == []
    assert art["matching_parameter"] is not None


def test_criterion_05_fourier_identities(ctx):
    art = run(5, "Fourier substitution identities", check_segre, ctx, budget=10)
    assert art["linear_form_to_seven_x0"]
    assert art["cubes_to_displayed_times_21"]
    assert art["squared_parameter"] == 2


def test_criterion_06_semi_invariance(ctx):
    art = run(6, "semi-invariance scalars", check_semi_invariance, ctx, budget=60)
    assert art["cubic_scalar_g"] == "1"
    assert art["cubic_scalar_h"] == "-1"
    assert art["dihedral_swap_scalar"] == "-1"
    assert art["agl5_quadric"] and art["agl8_quadric"] and art["agl9_quartic"]
    # frozen labeling witness: variables map to field elements 1,2,4,5,7,3,6
    # and every cubic monomial becomes a line of the seven-point plane
    assert art["fivefold_labeling"] == [0, 1, 3, 4, 6, 2, 5]
    F8 = gf8()
    codes = [c + 1 for c in art["fivefold_labeling"]]
    for triple in FANO_TRIPLES:
        a, b, c = (F8.decode(codes[v - 1]) for v in triple)
        assert F8.add(F8.add(a, b), c) == F8.zero


def test_criterion_07_smoothness_verdicts(ctx):
    art = run(7, "smoothness verdicts", check_smoothness, ctx, budget=180)
    assert art["working"] == {"29": "smooth", "43": "smooth"}
    assert all(v != "smooth" for v in art["zero"].values())
    assert all(v != "smooth" for v in art["unit"].values())
    assert art["fermat_restricted"] == {"29": "smooth", "43": "smooth"}
    # verdicts at the two primes agree for every parameter (good reduction)
    for label in ("working", "zero", "unit", "fermat_restricted"):
        smooth_flags = {v == "smooth" for v in art[label].values()}
        assert len(smooth_flags) == 1


def test_criterion_08_kernel_genericity(ctx):
    art = run(8, "kernel corank genericity", check_kernel_genericity, ctx, budget=30)
    assert art["sampled"] == 500
    assert art["corank_two_ratio"] >= 0.95


def test_criterion_09_fiber_round_trip(ctx):
    art = run(9, "linearization fiber round trip", check_fiber_round_trip, ctx, budget=60)
    assert art["single_valued_ratio"] >= 0.95
    assert art["returned_points_off_hypersurface"] == 0
    assert art["round_trip_ratio"] >= 0.95


def test_criterion_10_census_weil_window(ctx):
    art = run(10, "point census in the Weil window", check_k3_census, ctx, budget=None)
    assert art["n3"] == 0
    assert art["n2"] % 30 == 0
    assert abs(art["surface_count"] - 842) <= 638
    assert art["census_seconds"] < 120


def test_criterion_11_lines_from_plane_pairs(ctx):
    art = run(11, "lines from plane pairs", check_lines, ctx, budget=30)
    assert art["lines_solved"] == 50
    assert art["points_checked_per_line"] == 30


def test_criterion_12_degree_profile(ctx):
    from pfafflab.report import check_degree_profile

    art = run(12, "class and degree profile", check_degree_profile, ctx, budget=5)
    assert art["class_count"] == 7
    assert art["linear_characters"] == 6
    assert art["degrees"] == [1, 1, 1, 1, 1, 1, 6]


def test_criterion_13_dihedral_parity(ctx):
    art = run(13, "dihedral parity of the kernel", check_dihedral_freeness, ctx, budget=10)
    assert art["odd_case_kernel"] == []
    assert len(art["even_case_kernel"]) == 1


def test_criterion_14_fixed_point_weights(ctx):
    art = run(14, "fixed point tangent weights", check_fixed_point_weights, ctx, budget=5)
    assert art["working_points_on_hypersurface"] == 6
    assert art["working_e1_tangent"] == [1, 2, 3, 5]
    # independent gradient oracle, straight from the term dictionary
    fx = agl7_cubic()
    form = fx.cubic_at(fx.field.from_int(2))
    exps = fx.exponents
    deg = 3
    for i in range(6):
        top = [0] * 6
        top[i] = deg
        assert tuple(top) not in form.terms  # on the hypersurface
    gradient_indices = []
    for j in range(1, 6):
        e = [0] * 6
        e[0], e[j] = deg - 1, 1
        if tuple(e) in form.terms:
            gradient_indices.append(j)
    j0 = min(gradient_indices)
    ambient = [(exps[j] - exps[0]) % 7 for j in range(1, 6)]
    ambient.remove((exps[j0] - exps[0]) % 7)
    assert sorted(ambient) == [1, 2, 3, 5]
