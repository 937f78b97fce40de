import random
from fractions import Fraction

import pytest

from pfafflab.errors import BadRootOrder, ConductorMismatch, NoRoot
from pfafflab.fields import (
    QQ,
    CyclotomicField,
    ExtensionField,
    PrimeField,
    PrimeFieldElement,
    ReductionContext,
    cyclotomic_polynomial,
    default_primes,
    euler_phi,
    field_from_descriptor,
    find_root_of_unity,
    reduce_mod_p,
    reduce_rational,
)

from oracles import multiplicative_order, poly_long_division, poly_mul


# -- cyclotomic polynomials ---------------------------------------------------


def test_phi_1_is_x_minus_1():
    assert cyclotomic_polynomial(1) == (-1, 1)


def test_phi_7_forced_by_geometric_quotient():
    assert cyclotomic_polynomial(7) == (1, 1, 1, 1, 1, 1, 1)


def test_phi_6_matches_long_division_oracle():
    # divide x^6 - 1 by Phi_1 * Phi_2 * Phi_3 with the naive oracle
    den = poly_mul(poly_mul([-1, 1], [1, 1]), [1, 1, 1])
    num = [-1, 0, 0, 0, 0, 0, 1]
    quotient, remainder = poly_long_division(num, den)
    assert not remainder
    assert [Fraction(c) for c in (1, -1, 1)] == quotient
    assert cyclotomic_polynomial(6) == (1, -1, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 7, 8, 9, 12, 15, 30])
def test_phi_divides_x_n_minus_1_and_product_formula(n):
    xn = [-1] + [0] * (n - 1) + [1]
    q, r = poly_long_division(xn, list(cyclotomic_polynomial(n)))
    assert not r
    prod = [1]
    for d in range(1, n + 1):
        if n % d == 0:
            prod = poly_mul(prod, list(cyclotomic_polynomial(d)))
    assert [Fraction(c) for c in xn] == [Fraction(c) for c in prod]
    assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


# -- cyclotomic arithmetic ----------------------------------------------------


def test_zeta7_power_relation():
    K = CyclotomicField(7)
    assert K.zeta_power(3) * K.zeta_power(4) == K.one


def test_zeta6_square_reduces():
    K = CyclotomicField(6)
    z = K.zeta
    assert z * z == K.from_coeffs([-1, 1])  # zeta^2 = zeta - 1


def test_multiplicative_identity():
    K = CyclotomicField(7)
    rng = random.Random(1)
    a = K.random_element(rng)
    assert a * K.one == a


def test_conductor_mismatch_raises():
    with pytest.raises(ConductorMismatch):
        CyclotomicField(7).zeta + CyclotomicField(6).zeta


def test_galois_conjugation_is_involution():
    K = CyclotomicField(7)
    rng = random.Random(2)
    for _ in range(20):
        a = K.random_element(rng)
        assert a.conjugate().conjugate() == a


@pytest.mark.parametrize("n", [3, 4, 6, 7])
def test_field_axioms_random_triples(n):
    K = CyclotomicField(n)
    rng = random.Random(n)
    for _ in range(1000):
        a, b, c = (K.random_element(rng, 4) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == K.one


def test_prime_field_axioms_random_triples():
    F = PrimeField(29)
    rng = random.Random(29)
    for _ in range(1000):
        a, b, c = (F.random_element(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == F.one


# -- reduction homomorphisms ---------------------------------------------------


def test_reduce_zeta7_to_16_mod_29():
    # oracle: direct modular exponentiation shows 16 has exact order 7 mod 29
    assert pow(16, 7, 29) == 1 and all(pow(16, d, 29) != 1 for d in (1,))
    assert multiplicative_order(16, 29) == 7
    K = CyclotomicField(7)
    assert reduce_mod_p(K.zeta, 29, PrimeFieldElement(29, 16)).value == 16


def test_reduce_full_root_sum_is_zero():
    K = CyclotomicField(7)
    s = K.from_int(1)
    for k in range(1, 7):
        s = s + K.zeta_power(k)
    assert not s  # 1 + zeta + ... + zeta^6 vanishes identically
    assert reduce_mod_p(s, 29, PrimeFieldElement(29, 16)).value == 0


def test_reduce_rational_three_halves():
    assert pow(2, 27, 29) == 15  # oracle: inverse of 2 mod 29
    assert 45 % 29 == 16
    assert reduce_rational(Fraction(3, 2), 29) == 16


def test_reduce_is_ring_homomorphism():
    K = CyclotomicField(7)
    ctx = ReductionContext(29, K)
    rng = random.Random(3)
    for _ in range(200):
        a = K.random_element(rng)
        b = K.random_element(rng)
        assert ctx.reduce(a * b) == ctx.reduce(a) * ctx.reduce(b) % 29
        assert ctx.reduce(a + b) == (ctx.reduce(a) + ctx.reduce(b)) % 29


def test_bad_root_order_rejected():
    K = CyclotomicField(7)
    with pytest.raises(BadRootOrder):
        reduce_mod_p(K.zeta, 29, PrimeFieldElement(29, 28))  # order 2, not 7


# -- roots of unity in GF(p) -----------------------------------------------


def test_smallest_seventh_root_mod_29():
    # oracle: exhaustive scan of multiplicative orders
    smallest = min(v for v in range(2, 29) if multiplicative_order(v, 29) == 7)
    assert smallest == 7
    assert find_root_of_unity(29, 7).value == 7


def test_order_one_root():
    assert find_root_of_unity(29, 1).value == 1


def test_no_seventh_root_mod_13():
    with pytest.raises(NoRoot):
        find_root_of_unity(13, 7)


def test_default_primes_for_conductor_7():
    assert default_primes(7, 2) == [29, 43]


# -- extension fields ---------------------------------------------------------


def test_gf8_structure():
    F8 = ExtensionField(2, 3, defining=(1, 1, 0, 1))  # t^3 + t + 1
    t = (0, 1, 0)
    assert F8.pow(t, 7) == F8.one
    assert F8.pow(t, 3) == F8.add(t, F8.one)  # t^3 = t + 1
    # trace values over F_2: four elements of trace one
    traces = [F8.trace(F8.decode(c)) for c in range(8)]
    assert sum(traces) == 4
    assert F8.trace(F8.one) == 1


def test_gf9_multiplicative_generator():
    F9 = ExtensionField(3, 2, defining=(1, 0, 1))  # t^2 + 1
    g = F9.add((0, 1), F9.one)  # t + 1 has order 8
    for k in range(1, 8):
        assert F9.pow(g, k) != F9.one
    assert F9.pow(g, 8) == F9.one


def test_extension_inverse():
    F9 = ExtensionField(3, 2)
    for code in range(1, 9):
        a = F9.decode(code)
        assert F9.mul(a, F9.inverse(a)) == F9.one


# -- descriptors ---------------------------------------------------------------


def test_field_descriptor_round_trip():
    assert field_from_descriptor({"field": "cyclotomic", "conductor": 7}) == CyclotomicField(7)
    assert field_from_descriptor({"cyclotomic": 7}) == CyclotomicField(7)
    assert field_from_descriptor({"field": "prime", "p": 29}) == PrimeField(29)
    assert field_from_descriptor({"field": "rational"}) == QQ
