"""Independent brute-force oracles used to freeze expected values.

Everything here is deliberately naive and shares no code with the package:
long division instead of cached cyclotomic recursions, perfect-matching sums
instead of row expansion, permutation sums instead of elimination.
"""

from fractions import Fraction
from itertools import permutations


# -- dense integer polynomials, low degree first ----------------------------


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_long_division(num, den):
    """Classical long division over Q; returns (quotient, remainder)."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        f = num[-1] / den[-1]
        q[shift] += f
        for i, c in enumerate(den):
            num[shift + i] -= f * c
    while num and num[-1] == 0:
        num.pop()
    return q, num


def multiplicative_order(v, p):
    acc, k = v % p, 1
    while acc != 1:
        acc = acc * v % p
        k += 1
        if k > p:
            raise AssertionError("order scan ran away")
    return k


# -- skew matrices ----------------------------------------------------------


def perfect_matchings(n):
    """All partitions of range(n) into unordered pairs, n even."""
    if n == 0:
        yield []
        return
    rest = list(range(1, n))
    for idx, j in enumerate(rest):
        others = rest[:idx] + rest[idx + 1 :]
        for sub in _matchings_of(others):
            yield [(0, j)] + sub


def _matchings_of(items):
    if not items:
        yield []
        return
    first = items[0]
    for idx in range(1, len(items)):
        j = items[idx]
        rest = items[1:idx] + items[idx + 1 :]
        for sub in _matchings_of(rest):
            yield [(first, j)] + sub


def matching_sign(pairs):
    flat = [x for pair in pairs for x in pair]
    sign = 1
    for i in range(len(flat)):
        for j in range(i + 1, len(flat)):
            if flat[i] > flat[j]:
                sign = -sign
    return sign


def pfaffian_matching_sum(matrix, zero, add, mul):
    """Signed perfect-matching sum: generic over a commutative ring."""
    n = len(matrix)
    assert n % 2 == 0
    total = zero
    for pairs in perfect_matchings(n):
        term = None
        for i, j in pairs:
            term = matrix[i][j] if term is None else mul(term, matrix[i][j])
        sign = matching_sign(pairs)
        total = add(total, term if sign > 0 else mul_neg(term, mul))
    return total


def mul_neg(x, mul):
    return mul(x, -1) if isinstance(x, (int, Fraction)) else x * -1


def determinant_permutation_sum(matrix, zero, add, mul):
    """Leibniz formula, generic over a commutative ring."""
    n = len(matrix)
    total = zero
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if not seen[i]:
                length = 0
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        term = None
        for i in range(n):
            term = matrix[i][perm[i]] if term is None else mul(term, matrix[i][perm[i]])
        total = add(total, term if sign > 0 else mul_neg(term, mul))
    return total
