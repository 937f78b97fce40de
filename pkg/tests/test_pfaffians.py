import random
from fractions import Fraction

import pytest

from pfafflab.errors import NotSkew, OddSize
from pfafflab.fields import QQ, ReductionContext
from pfafflab.fixtures import agl7_cubic, dihedral_quadric, _perm_matrix
from pfafflab.pfaffians import (
    CongruenceReport,
    SkewLinearFamily,
    action_on_family_coordinates,
    build_family,
    congruence_semi_invariance,
    determinant,
    family_matrix_at_point,
    kernel_at_point,
    pfaffian,
    pfaffian_mod_p,
)
from pfafflab.polynomials import LinearSubstitution, SparsePolynomial
from pfafflab.geometry import sample_hypersurface_points

from oracles import determinant_permutation_sum, pfaffian_matching_sum


@pytest.fixture(scope="module")
def fx():
    return agl7_cubic()


@pytest.fixture(scope="module")
def b29(fx):
    fam = fx.family.specialize([fx.field.from_int(2)])
    return fam.reduce_mod_p(ReductionContext(29, fx.field))


def poly_vars(nvars, field):
    return [SparsePolynomial.variable(nvars, field, i) for i in range(nvars)]


# -- pfaffian ----------------------------------------------------------------------


def test_two_by_two_base_case():
    a = SparsePolynomial.variable(1, QQ, 0)
    zero = SparsePolynomial.zero(1, QQ)
    assert pfaffian([[zero, a], [-a, zero]], zero) == a


def test_generic_four_by_four_matches_matching_oracle():
    # m12 m34 - m13 m24 + m14 m23, frozen from the signed matching sum
    names = {}
    k = 0
    entries = [[None] * 4 for _ in range(4)]
    zero = SparsePolynomial.zero(6, QQ)
    for i in range(4):
        entries[i][i] = zero
    for i in range(4):
        for j in range(i + 1, 4):
            v = SparsePolynomial.variable(6, QQ, k)
            names[(i, j)] = k
            entries[i][j] = v
            entries[j][i] = -v
            k += 1
    result = pfaffian(entries, zero)
    oracle = pfaffian_matching_sum(entries, zero, lambda a, b: a + b, lambda a, b: a * b)
    assert result == oracle
    x = poly_vars(6, QQ)
    expected = (
        x[names[(0, 1)]] * x[names[(2, 3)]]
        - x[names[(0, 2)]] * x[names[(1, 3)]]
        + x[names[(0, 3)]] * x[names[(1, 2)]]
    )
    assert result == expected


def test_family_pfaffian_is_minus_parameter_times_cubic(fx):
    entries = fx.family.entry_matrix()
    zero = SparsePolynomial.zero(7, fx.field)
    pf = pfaffian(entries, zero)
    t = SparsePolynomial.variable(7, fx.field, 6)
    assert pf == (t * fx.cubic).scale(fx.field.from_int(fx.pfaffian_sign))
    assert fx.pfaffian_sign == -1


def test_pfaffian_rejects_bad_input():
    zero = SparsePolynomial.zero(1, QQ)
    a = SparsePolynomial.variable(1, QQ, 0)
    with pytest.raises(OddSize):
        pfaffian([[zero]], zero)
    with pytest.raises(NotSkew):
        pfaffian([[zero, a], [a, zero]], zero)


def test_pfaffian_squared_is_determinant(fx):
    entries = fx.family.entry_matrix()
    zero = SparsePolynomial.zero(7, fx.field)
    one = SparsePolynomial.constant(7, fx.field, fx.field.one)
    pf = pfaffian(entries, zero)
    assert pf * pf == determinant(entries, zero, one)


def test_determinant_matches_permutation_oracle():
    rng = random.Random(9)
    zero, one = Fraction(0), Fraction(1)
    for _ in range(10):
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(4)]
        assert determinant(m, zero, one) == determinant_permutation_sum(
            m, zero, lambda a, b: a + b, lambda a, b: a * b
        )


@pytest.mark.parametrize("size", [4, 6])
def test_pfaffian_congruence_covariance_mod_p(size):
    # Pf(r M r^T) = det(r) Pf(M) for random constant matrices over GF(29)
    p = 29
    rng = random.Random(size)
    for _ in range(20):
        m = [[0] * size for _ in range(size)]
        for i in range(size):
            for j in range(i + 1, size):
                v = rng.randrange(p)
                m[i][j] = v
                m[j][i] = (-v) % p
        r = [[rng.randrange(p) for _ in range(size)] for _ in range(size)]
        rm = [[sum(r[i][k] * m[k][l] for k in range(size)) % p for l in range(size)] for i in range(size)]
        rmrt = [
            [sum(rm[i][l] * r[j][l] for l in range(size)) % p for j in range(size)]
            for i in range(size)
        ]
        det_r = _det_mod_p(r, p)
        assert pfaffian_mod_p(rmrt, p) == det_r * pfaffian_mod_p(m, p) % p


def _det_mod_p(rows, p):
    rows = [list(r) for r in rows]
    n = len(rows)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c] % p
        inv = pow(rows[c][c], p - 2, p)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[c])]
    return det % p


# -- families ------------------------------------------------------------------------


def test_build_family_reproduces_entries(fx):
    # reading the bivector basis off the family and rebuilding is the identity
    vectors = fx.family.bivector_basis()
    rebuilt = build_family(vectors, 6, fx.field, params=("t",))
    assert rebuilt.coefficients == fx.family.coefficients


def test_build_family_single_bivector():
    one = QQ.one
    pairs_vector = [one] + [QQ.zero] * 5  # e1 ^ e2 in a four-dimensional space
    fam = build_family([pairs_vector], 4, QQ)
    consts = fam.constant_matrices()
    assert consts[0][0][1] == one and consts[0][1][0] == -one
    assert all(
        not consts[0][i][j]
        for i in range(4)
        for j in range(4)
        if (i, j) not in ((0, 1), (1, 0))
    )


def test_dihedral_family_matches_display():
    dq = dihedral_quadric(3)
    consts = dq.family.constant_matrices()
    f = dq.field
    # M has the x11, x12, x21, x22 block in the upper right corner
    expected_positions = {0: (0, 2), 1: (0, 3), 2: (1, 2), 3: (1, 3)}
    for var, (i, j) in expected_positions.items():
        assert consts[var][i][j] == f.one
        assert consts[var][j][i] == -f.one


def test_family_rejects_non_skew():
    one = SparsePolynomial.constant(0, QQ, QQ.one)
    zero = SparsePolynomial.zero(0, QQ)
    with pytest.raises(NotSkew):
        SkewLinearFamily(QQ, 2, [[[zero, one], [one, zero]]])
    with pytest.raises(OddSize):
        SkewLinearFamily(QQ, 3, [[[zero] * 3 for _ in range(3)]])


# -- kernels -----------------------------------------------------------------------------


def test_kernel_on_hypersurface_point(b29):
    points = sample_hypersurface_points(b29, 29, 5, seed=11)
    for x in points:
        res = kernel_at_point(b29, x, 29)
        assert res.rank == 4
        assert len(res.kernel) == 2
        m = family_matrix_at_point(b29, x, 29)
        for v in res.kernel:
            assert all(sum(a * b for a, b in zip(row, v)) % 29 == 0 for row in m)


def test_kernel_off_hypersurface(b29):
    rng = random.Random(3)
    found = 0
    while found < 5:
        x = [rng.randrange(29) for _ in range(6)]
        if not any(x):
            continue
        if pfaffian_mod_p(family_matrix_at_point(b29, x, 29), 29):
            res = kernel_at_point(b29, x, 29)
            assert res.rank == 6 and not res.kernel
            found += 1


def test_dihedral_kernel_at_quadric_point():
    dq = dihedral_quadric(3)
    b = dq.family.reduce_mod_p(ReductionContext(31, dq.field))
    # x11 x22 = x12 x21 with x = (1, 0, 0, 0) lies on the quadric
    res = kernel_at_point(b, (1, 0, 0, 0), 31)
    assert res.rank == 2
    assert len(res.kernel) == 2


# -- congruence ---------------------------------------------------------------------------


def test_family_congruent_under_generators(fx):
    for m in (fx.g_matrix, fx.h_matrix):
        rep = congruence_semi_invariance(
            fx.family, LinearSubstitution(fx.field, m), m
        )
        assert rep.holds and rep.scalar == fx.field.one


def test_dihedral_anti_invariant_under_swap():
    dq = dihedral_quadric(3)
    swap_coords = LinearSubstitution(dq.field, _perm_matrix(dq.field, (0, 2, 1, 3)))
    rep = congruence_semi_invariance(dq.family, swap_coords, dq.swap)
    assert rep == CongruenceReport(True, -dq.field.one)


def test_congruence_fails_for_non_group_substitution(fx):
    rng = random.Random(5)
    rows = [
        [fx.field.from_int(rng.randint(-2, 2)) for _ in range(6)] for _ in range(6)
    ]
    rows[0] = [fx.field.one] + [fx.field.zero] * 5
    sigma = LinearSubstitution(fx.field, _perm_matrix(fx.field, (1, 0, 2, 3, 4, 5)))
    rep = congruence_semi_invariance(fx.family, sigma, fx.g_matrix)
    assert not rep.holds


def test_action_on_coordinates_matches_congruence(fx):
    # with scalar one, the induced coordinate action is the substitution itself
    fam = fx.family.specialize([fx.field.from_int(2)])
    s = action_on_family_coordinates(fam, fx.h_matrix, fx.field)
    assert s == fx.h_matrix


def test_congruence_covariance_exact(fx):
    # Pf(M(sigma x)) = det(rho) Pf(M(x)) follows from the congruence with c = 1
    entries = fx.family.entry_matrix()
    zero = SparsePolynomial.zero(7, fx.field)
    pf = pfaffian(entries, zero)
    sigma = LinearSubstitution(fx.field, fx.h_matrix).extended(1)
    det_h = determinant(fx.h_matrix, fx.field.zero, fx.field.one)
    assert pf.substitute_linear(sigma.matrix) == pf.scale(det_h)
