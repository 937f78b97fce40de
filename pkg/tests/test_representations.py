from fractions import Fraction

import pytest

from pfafflab.errors import CapExceeded, NonIntegerMultiplicity
from pfafflab.fields import QQ, CyclotomicField
from pfafflab.fixtures import agl7_cubic, dihedral_quadric, dihedral_plane_rep, _perm_matrix
from pfafflab.linalg import Subspace, identity, mat_vec
from pfafflab.representations import (
    CharacterVector,
    INFINITY,
    character,
    class_and_degree_profile,
    enumerate_group,
    equivariant_hom_basis,
    exterior_square,
    exterior_square_character,
    match_pencil_parameter,
    multiplicity,
    pencil_member,
)


@pytest.fixture(scope="module")
def fx():
    return agl7_cubic()


@pytest.fixture(scope="module")
def ext(fx):
    return exterior_square(fx.group)


@pytest.fixture(scope="module")
def pencil(fx, ext):
    chi = character(fx.group)
    chi2 = exterior_square_character(chi, fx.group.squares)
    predicted = multiplicity(chi2, chi, fx.group)
    return equivariant_hom_basis(fx.group, ext.matrices, ext.dim, predicted)


# -- enumeration -----------------------------------------------------------------


def test_group_order_42(fx):
    assert fx.group.order == 42


def test_dihedral_order_6():
    assert dihedral_quadric(3).group.order == 6


def test_identity_only():
    rep = enumerate_group(QQ, [identity(QQ, 3)])
    assert rep.order == 1


def test_enumeration_deterministic_word_order(fx):
    lengths = [len(w) for w in fx.group.words]
    assert lengths == sorted(lengths)
    assert fx.group.words[0] == ()


def test_cap_exceeded():
    with pytest.raises(CapExceeded):
        enumerate_group(QQ, [_perm_matrix(QQ, (1, 2, 3, 4, 0))], cap=3)


def test_inverses_and_squares(fx):
    rep = fx.group
    for i in range(rep.order):
        assert rep.product_index(i, rep.inverses[i]) == 0
        assert rep.product_index(i, i) == rep.squares[i]


# -- characters ---------------------------------------------------------------------


def test_character_at_identity_is_dimension(fx):
    assert character(fx.group)[0] == fx.field.from_int(6)


def test_character_of_order_seven_generator(fx):
    # the diagonal generator has trace summing all primitive seventh roots
    chi = character(fx.group)
    gi = fx.group.index[fx.g_matrix]
    assert chi[gi] == fx.field.from_int(-1)


def test_character_of_signed_cycle_vanishes(fx):
    chi = character(fx.group)
    hi = fx.group.index[fx.h_matrix]
    assert chi[hi] == fx.field.zero


def test_character_constant_on_conjugacy_classes(fx):
    chi = character(fx.group)
    profile = class_and_degree_profile(fx.group)
    for cls in profile.classes:
        values = {chi[i] for i in cls}
        assert len(values) == 1


def test_exterior_square_character_values(fx):
    chi = character(fx.group)
    chi2 = exterior_square_character(chi, fx.group.squares)
    assert chi2[0] == fx.field.from_int(15)
    gi = fx.group.index[fx.g_matrix]
    # ((-1)^2 - (-1)) / 2 = 1 because the square is again order seven
    assert chi2[gi] == fx.field.one


def test_exterior_square_of_two_dim_is_determinant():
    # chi(g) = 0, chi(g^2) = -2 gives (0 + 2)/2 = 1
    chi = CharacterVector((Fraction(2), Fraction(0), Fraction(-2)))
    squares = [0, 2, 0]
    chi2 = exterior_square_character(chi, squares)
    assert chi2.values == (Fraction(1), Fraction(1), Fraction(1))


def test_multiplicities(fx):
    chi = character(fx.group)
    chi2 = exterior_square_character(chi, fx.group.squares)
    assert multiplicity(chi2, chi, fx.group) == 2
    assert multiplicity(chi, chi, fx.group) == 1


def test_trivial_multiplicity(fx):
    triv = CharacterVector(tuple(fx.field.one for _ in range(fx.group.order)))
    assert multiplicity(triv, triv, fx.group) == 1


def test_non_integer_multiplicity_rejected(fx):
    bad = CharacterVector(tuple(fx.field.from_rational(Fraction(1, 3)) for _ in range(fx.group.order)))
    triv = CharacterVector(tuple(fx.field.one for _ in range(fx.group.order)))
    with pytest.raises(NonIntegerMultiplicity):
        multiplicity(bad, triv, fx.group)


def test_character_orthogonality_for_irreducibles(fx):
    chi = character(fx.group)
    acc = fx.field.zero
    for v in chi.values:
        acc = acc + v * fx.field.conjugate(v)
    assert acc == fx.field.from_int(fx.group.order)


# -- equivariant hom bases ---------------------------------------------------------------


def test_pencil_rank_two(pencil):
    assert pencil.rank == 2


def test_pencil_basis_equivariance_on_every_element(fx, ext, pencil):
    # W(g) T = T V(g) exactly, for all 42 elements, both basis maps
    for t in pencil.basis:
        for gi in range(fx.group.order):
            w = ext.matrices[gi]
            v = fx.group.elements[gi]
            left = [mat_vec(w, [t[i][j] for i in range(15)]) for j in range(6)]
            right_matrix = [
                [sum_entries(t, i, v, j, fx.field) for j in range(6)] for i in range(15)
            ]
            for j in range(6):
                for i in range(15):
                    assert left[j][i] == right_matrix[i][j]


def sum_entries(t, i, v, j, field):
    acc = field.zero
    for k in range(6):
        if t[i][k] and v[k][j]:
            acc = acc + t[i][k] * v[k][j]
    return acc


def test_schur_endomorphisms_of_irreducible(fx, ext):
    chi = character(fx.group)
    assert multiplicity(chi, chi, fx.group) == 1
    hom = equivariant_hom_basis(fx.group, fx.group.elements, 6, 1)
    assert hom.rank == 1


def test_schur_zero_between_distinct_dihedral_planes():
    field = CyclotomicField(5)
    r1, s1 = dihedral_plane_rep(field, 5, 1)
    rep = enumerate_group(field, [r1, s1], names=("r", "s"))
    assert rep.order == 10
    # the plane with doubled rotation weight is a different irreducible
    r2, _ = dihedral_plane_rep(field, 5, 2)
    target = []
    for word in rep.words:
        m = identity(field, 2)
        for k in word:
            from pfafflab.linalg import mat_mul

            m = mat_mul(m, (r2, s1)[k])
        target.append(m)
    chi_a = CharacterVector(tuple(m[0][0] + m[1][1] for m in target))
    chi_b = character(rep)
    assert multiplicity(chi_a, chi_b, rep) == 0


# -- pencil members ---------------------------------------------------------------------


def test_pencil_member_generic_dimension(fx, pencil):
    member = pencil_member(pencil, fx.field.from_int(3))
    assert member.dim == 6


def test_pencil_member_at_infinity(fx, pencil):
    member = pencil_member(pencil, INFINITY)
    assert member.dim == 6


def test_pencil_members_stable_under_all_elements(fx, ext, pencil):
    member = pencil_member(pencil, fx.field.from_int(2))
    for gi in range(fx.group.order):
        w = ext.matrices[gi]
        image = Subspace(fx.field, ext.dim, [mat_vec(w, v) for v in member.basis])
        assert image == member


def test_match_pencil_parameter_frozen(fx, pencil):
    fam = fx.family.specialize([fx.field.from_int(2)])
    target = Subspace(fx.field, 15, fam.bivector_basis())
    mu = match_pencil_parameter(pencil, target)
    assert mu is not None
    mu1, mu2 = mu
    # frozen matching: the family span equals the member at ratio 1/2
    assert mu2 / mu1 == fx.field.from_rational(Fraction(1, 2))


def test_perp_decomposition(fx, pencil):
    member = pencil_member(pencil, fx.field.from_int(2))
    perp = member.annihilator()
    assert member.dim + perp.dim == 15
    assert member.intersection(perp).dim == 0


def test_dihedral_tensor_member_dimension():
    dq = dihedral_quadric(3)
    target = Subspace(dq.field, 6, dq.family.bivector_basis())
    assert target.dim == 4


# -- class profiles -----------------------------------------------------------------------


def test_agl7_profile(fx):
    profile = class_and_degree_profile(fx.group)
    assert profile.class_count == 7
    assert profile.linear_character_count == 6
    assert profile.degrees == (1, 1, 1, 1, 1, 1, 6)


def test_symmetric_group_profile():
    s3 = enumerate_group(QQ, [_perm_matrix(QQ, (1, 0, 2)), _perm_matrix(QQ, (1, 2, 0))])
    assert s3.order == 6
    profile = class_and_degree_profile(s3)
    assert profile.class_count == 3
    assert profile.linear_character_count == 2
    assert profile.degrees == (1, 1, 2)


def test_cyclic_profile():
    c6 = enumerate_group(QQ, [_perm_matrix(QQ, (1, 2, 3, 4, 5, 0))])
    assert c6.order == 6
    profile = class_and_degree_profile(c6)
    assert profile.class_count == 6
    assert profile.linear_character_count == 6
    assert profile.degrees == (1, 1, 1, 1, 1, 1)
