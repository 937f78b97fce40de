"""Exact coefficient arithmetic: Q, cyclotomic fields Q(zeta_n), prime fields
GF(p), and small extension fields GF(p^k) used as index alphabets.

Rationals are ``fractions.Fraction`` (already canonical: reduced, positive
denominator).  Cyclotomic numbers live in the power basis
1, zeta, ..., zeta^(phi(n)-1) of Q[x]/Phi_n(x), which makes equality testing
coefficient-wise.  Prime field elements are wrapped ints; hot loops elsewhere
work on raw ints mod p and only the API surface uses the wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BadRootOrder,
    ConductorMismatch,
    FieldError,
    NonInvertibleDenominator,
    NoRoot,
)

MAX_PRIME = 2**31  # keeps GF(p) products inside 64-bit intermediates


# ---------------------------------------------------------------------------
# integer utilities


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3_215_031_751 (covers 2**31)."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def euler_phi(n: int) -> int:
    result = n
    for q in prime_factors(n):
        result = result // q * (q - 1)
    return result


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense lists, low degree first)


def _poly_trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divexact_int(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (remainder must vanish)."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        q = c // lead
        out[k - dd] = q
        if q:
            for i, di in enumerate(den):
                num[k - dd + i] -= q * di
    if any(num):
        raise ArithmeticError("nonzero remainder in exact division")
    return _poly_trim(out)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial.

    Computed as (x^n - 1) divided by the product of Phi_d over proper
    divisors d of n.  Monic of degree phi(n).
    """
    if not 1 <= n <= 10_000:
        raise ValueError(f"conductor out of range: {n}")
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in divisors(n)[:-1]:
        num = _poly_divexact_int(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


# ---------------------------------------------------------------------------
# rational field


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    return str(x)


class RationalField:
    """The field Q; elements are fractions.Fraction."""

    name = "rational"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, k: int) -> Fraction:
        return Fraction(k)

    def parse(self, data) -> Fraction:
        if isinstance(data, str):
            return parse_rational(data)
        if isinstance(data, int):
            return Fraction(data)
        raise FieldError(f"cannot parse rational from {data!r}")

    def format(self, x: Fraction) -> str:
        return format_rational(x)

    def random_element(self, rng, height: int = 5) -> Fraction:
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def conjugate(self, x: Fraction) -> Fraction:
        return x

    def descriptor(self) -> dict:
        return {"field": "rational"}

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rational")

    def __repr__(self) -> str:
        return "QQ"


QQ = RationalField()


# ---------------------------------------------------------------------------
# cyclotomic field


class CyclotomicNumber:
    """Element of Q(zeta_n) in the power basis mod Phi_n."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "CyclotomicField", coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)
        if len(self.coeffs) != field.degree:
            raise FieldError("coefficient vector has wrong length")

    # -- ring structure -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.field.conductor != self.field.conductor:
                raise ConductorMismatch(
                    f"conductors {self.field.conductor} != {other.field.conductor}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.field, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber(self.field, [a * q for a in self.coeffs])
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber(self.field, self.field.reduce_list(prod))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        nz = [(k, c) for k, c in enumerate(self.coeffs) if c]
        if not nz:
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if len(nz) == 1:
            # c * zeta^k inverts to c^-1 * zeta^(n-k)
            k, c = nz[0]
            return self.field.zeta_power(self.field.conductor - k) * (1 / c)
        return self.field._xgcd_inverse(self.coeffs)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure queries ---------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(Fraction(other))
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return (
            self.field.conductor == other.field.conductor and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.conductor, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise FieldError("not a rational value")
        return self.coeffs[0]

    def galois(self, t: int) -> "CyclotomicNumber":
        """Apply the Galois automorphism zeta -> zeta^t (gcd(t, n) = 1)."""
        n = self.field.conductor
        raw = [Fraction(0)] * n if n > 1 else [Fraction(0)]
        for k, c in enumerate(self.coeffs):
            raw[(k * t) % n] += c
        return CyclotomicNumber(self.field, self.field.reduce_list(raw))

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation zeta -> zeta^-1."""
        if self.field.conductor == 1:
            return self
        return self.galois(self.field.conductor - 1)

    def __repr__(self) -> str:
        n = self.field.conductor
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                z = f"z{n}" if k == 1 else f"z{n}^{k}"
                parts.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


class CyclotomicField:
    """Q(zeta_n) with arithmetic modulo the n-th cyclotomic polynomial."""

    name = "cyclotomic"

    def __init__(self, conductor: int):
        if conductor < 1:
            raise FieldError("conductor must be positive")
        self.conductor = conductor
        self.phi = tuple(Fraction(c) for c in cyclotomic_polynomial(conductor))
        self.degree = len(self.phi) - 1
        self.zero = CyclotomicNumber(self, [Fraction(0)] * self.degree)
        one = [Fraction(0)] * self.degree
        one[0] = Fraction(1)
        self.one = CyclotomicNumber(self, one)

    def reduce_list(self, raw: list[Fraction]) -> list[Fraction]:
        """Reduce a dense coefficient list modulo Phi_n (monic)."""
        raw = list(raw)
        d = self.degree
        for k in range(len(raw) - 1, d - 1, -1):
            c = raw[k]
            if c:
                raw[k] = Fraction(0)
                for i in range(d):
                    raw[k - d + i] -= c * self.phi[i]
        raw = raw[:d]
        raw.extend([Fraction(0)] * (d - len(raw)))
        return raw

    def from_rational(self, q) -> CyclotomicNumber:
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(q)
        return CyclotomicNumber(self, coeffs)

    def from_int(self, k: int) -> CyclotomicNumber:
        return self.from_rational(Fraction(k))

    def from_coeffs(self, coeffs) -> CyclotomicNumber:
        return CyclotomicNumber(self, [Fraction(c) for c in coeffs])

    def zeta_power(self, k: int) -> CyclotomicNumber:
        raw = [Fraction(0)] * (k % self.conductor + 1)
        raw[k % self.conductor] = Fraction(1)
        return CyclotomicNumber(self, self.reduce_list(raw))

    @property
    def zeta(self) -> CyclotomicNumber:
        return self.zeta_power(1)

    def _xgcd_inverse(self, coeffs) -> CyclotomicNumber:
        """Inverse via extended Euclid against Phi_n in Q[x]."""
        r0 = list(self.phi)
        r1 = _poly_trim([Fraction(c) for c in coeffs])
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
            if not r1:
                raise ZeroDivisionError("element shares a factor with Phi_n")
        lead = r1[0]
        inv = [c / lead for c in s1]
        return CyclotomicNumber(self, self.reduce_list(inv))

    def parse(self, data) -> CyclotomicNumber:
        if isinstance(data, (int, str)):
            return self.from_rational(parse_rational(str(data)))
        if isinstance(data, (list, tuple)):
            if len(data) != self.degree:
                raise FieldError("cyclotomic coefficient array has wrong length")
            return self.from_coeffs([parse_rational(str(c)) for c in data])
        raise FieldError(f"cannot parse cyclotomic value from {data!r}")

    def format(self, x: CyclotomicNumber):
        if x.is_rational():
            return format_rational(x.rational_value())
        return [format_rational(c) for c in x.coeffs]

    def random_element(self, rng, height: int = 3) -> CyclotomicNumber:
        return self.from_coeffs(
            [Fraction(rng.randint(-height, height)) for _ in range(self.degree)]
        )

    def conjugate(self, x: CyclotomicNumber) -> CyclotomicNumber:
        return x.conjugate()

    def descriptor(self) -> dict:
        return {"field": "cyclotomic", "conductor": self.conductor}

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.conductor == self.conductor

    def __hash__(self) -> int:
        return hash(("cyclotomic", self.conductor))

    def __repr__(self) -> str:
        return f"Q(zeta_{self.conductor})"


def _frac_poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    dd = len(den) - 1
    lead = den[-1]
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            f = c / lead
            q[k - dd] = f
            for i, di in enumerate(den):
                num[k - dd + i] -= f * di
    return _poly_trim(q), _poly_trim(num)


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _frac_poly_sub(a, b):
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# prime fields


@dataclass(frozen=True)
class PrimeFieldElement:
    modulus: int
    value: int

    def _check(self, other):
        if other.modulus != self.modulus:
            raise FieldError("prime field moduli differ")

    def __add__(self, other):
        if isinstance(other, int):
            return PrimeFieldElement(self.modulus, (self.value + other) % self.modulus)
        self._check(other)
        return PrimeFieldElement(self.modulus, (self.value + other.value) % self.modulus)

    def __sub__(self, other):
        if isinstance(other, int):
            return PrimeFieldElement(self.modulus, (self.value - other) % self.modulus)
        self._check(other)
        return PrimeFieldElement(self.modulus, (self.value - other.value) % self.modulus)

    def __neg__(self):
        return PrimeFieldElement(self.modulus, -self.value % self.modulus)

    def __mul__(self, other):
        if isinstance(other, int):
            return PrimeFieldElement(self.modulus, self.value * other % self.modulus)
        self._check(other)
        return PrimeFieldElement(self.modulus, self.value * other.value % self.modulus)

    __radd__ = __add__
    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero mod p")
        return PrimeFieldElement(self.modulus, pow(self.value, self.modulus - 2, self.modulus))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, k: int):
        return PrimeFieldElement(self.modulus, pow(self.value, k, self.modulus))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


class PrimeField:
    """GF(p) for an odd-friendly prime p < 2**31."""

    name = "prime"

    def __init__(self, p: int):
        if not (2 <= p < MAX_PRIME) or not is_prime(p):
            raise FieldError(f"{p} is not a prime below 2**31")
        self.p = p
        self.zero = PrimeFieldElement(p, 0)
        self.one = PrimeFieldElement(p, 1)

    def from_int(self, k: int) -> PrimeFieldElement:
        return PrimeFieldElement(self.p, k % self.p)

    def element(self, k: int) -> PrimeFieldElement:
        return self.from_int(k)

    def parse(self, data) -> PrimeFieldElement:
        if isinstance(data, str) and "/" in data:
            q = parse_rational(data)
            return self.from_int(reduce_rational(q, self.p))
        return self.from_int(int(data))

    def format(self, x: PrimeFieldElement) -> str:
        return str(x.value)

    def random_element(self, rng, height: int = 0) -> PrimeFieldElement:
        return self.from_int(rng.randrange(self.p))

    def conjugate(self, x):
        return x

    def descriptor(self) -> dict:
        return {"field": "prime", "p": self.p}

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("prime", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


# ---------------------------------------------------------------------------
# small extension fields GF(p^k), k <= 3 (index alphabets and strata points)


class ExtensionField:
    """GF(p^k) with elements as coefficient tuples (low degree first).

    Used as a coordinate index set (F_8, F_9) and for singular witness
    points over GF(p^2); never as a polynomial coefficient field.
    """

    def __init__(self, p: int, k: int, defining: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if not 1 <= k <= 3:
            raise FieldError("extension degree must be 1, 2 or 3")
        self.p = p
        self.k = k
        if defining is None:
            defining = self._find_irreducible(p, k)
        if len(defining) != k + 1 or defining[-1] != 1:
            raise FieldError("defining polynomial must be monic of degree k")
        if k > 1 and any(self._poly_eval(defining, a) == 0 for a in range(p)):
            raise FieldError("defining polynomial is reducible (has a root)")
        self.defining = tuple(c % p for c in defining)
        self.q = p**k
        self.zero = (0,) * k
        self.one = tuple([1] + [0] * (k - 1))

    @staticmethod
    def _poly_eval(coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def _find_irreducible(p: int, k: int) -> tuple[int, ...]:
        if k == 1:
            return (0, 1)
        # degree 2 or 3: irreducible over GF(p) iff rootless; lex scan is
        # deterministic so the same field always gets the same model
        for code in range(p**k):
            lower = [(code // p**i) % p for i in range(k)]
            coeffs = tuple(lower) + (1,)
            if not any(ExtensionField._poly_eval(coeffs, a) % p == 0 for a in range(p)):
                return coeffs
        raise FieldError("no irreducible polynomial found")

    # -- element arithmetic (tuples of ints) --------------------------------

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        k, p = self.k, self.p
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for deg in range(len(prod) - 1, k - 1, -1):
            c = prod[deg] % p
            prod[deg] = 0
            if c:
                for i in range(k):
                    prod[deg - k + i] -= c * self.defining[i]
        return tuple(x % p for x in prod[:k])

    def scalar_mul(self, c: int, a):
        return tuple(c * x % self.p for x in a)

    def pow(self, a, e: int):
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inverse(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in extension field")
        return self.pow(a, self.q - 2)

    def frobenius(self, a):
        return self.pow(a, self.p)

    def trace(self, a) -> int:
        """Absolute trace down to GF(p), returned as an int."""
        acc, cur = self.zero, a
        for _ in range(self.k):
            acc = self.add(acc, cur)
            cur = self.frobenius(cur)
        if any(acc[1:]):
            raise FieldError("trace did not land in the prime field")
        return acc[0]

    def from_int(self, k: int):
        return self.embed(k)

    def embed(self, c: int):
        return tuple([c % self.p] + [0] * (self.k - 1))

    def encode(self, a) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def decode(self, code: int):
        return tuple((code // self.p**i) % self.p for i in range(self.k))

    def elements(self):
        return [self.decode(c) for c in range(self.q)]

    def multiplicative_generator(self):
        factors = prime_factors(self.q - 1)
        for code in range(1, self.q):
            a = self.decode(code)
            if all(self.pow(a, (self.q - 1) // r) != self.one for r in factors):
                return a
        raise FieldError("no multiplicative generator found")

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and (other.p, other.k, other.defining) == (self.p, self.k, self.defining)
        )

    def __hash__(self):
        return hash(("ext", self.p, self.k, self.defining))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"


# ---------------------------------------------------------------------------
# reduction homomorphisms and working primes


def reduce_rational(x: Fraction, p: int) -> int:
    den = x.denominator % p
    if den == 0:
        raise NonInvertibleDenominator(f"denominator {x.denominator} vanishes mod {p}")
    return x.numerator % p * pow(den, p - 2, p) % p


def check_root_order(p: int, root: int, n: int) -> None:
    if pow(root, n, p) != 1:
        raise BadRootOrder(f"{root}^{n} != 1 mod {p}")
    for d in divisors(n)[:-1]:
        if pow(root, d, p) == 1:
            raise BadRootOrder(f"{root} has order dividing {d} < {n} mod {p}")


def reduce_cyclotomic(x: CyclotomicNumber, p: int, root: int, *, checked: bool = True) -> int:
    if checked:
        n = x.field.conductor
        if (p - 1) % n != 0:
            raise BadRootOrder(f"p = {p} is not 1 mod {n}")
        check_root_order(p, root, n)
    acc, power = 0, 1
    for c in x.coeffs:
        if c:
            acc = (acc + reduce_rational(c, p) * power) % p
        power = power * root % p
    return acc


def reduce_mod_p(x: CyclotomicNumber, p: int, root_image: PrimeFieldElement) -> PrimeFieldElement:
    """Ring homomorphism Q(zeta_n) -> GF(p) sending zeta_n to root_image."""
    value = reduce_cyclotomic(x, p, root_image.value if isinstance(root_image, PrimeFieldElement) else int(root_image))
    return PrimeFieldElement(p, value)


class ReductionContext:
    """Reduces field values (ints, Fractions, cyclotomic numbers) mod p."""

    def __init__(self, p: int, field=None, root: int | None = None):
        self.p = p
        self.field = field
        if isinstance(field, CyclotomicField) and field.conductor > 1:
            if root is None:
                root = find_root_of_unity(p, field.conductor).value
            else:
                check_root_order(p, root, field.conductor)
        self.root = root

    def reduce(self, value) -> int:
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction):
            return reduce_rational(value, self.p)
        if isinstance(value, PrimeFieldElement):
            if value.modulus != self.p:
                raise FieldError("prime field value from a different modulus")
            return value.value
        if isinstance(value, CyclotomicNumber):
            if value.field.conductor == 1 or value.is_rational():
                return reduce_rational(value.rational_value(), self.p) if value.is_rational() else 0
            if self.root is None:
                raise BadRootOrder("no root of unity available for reduction")
            return reduce_cyclotomic(value, self.p, self.root, checked=False)
        raise FieldError(f"cannot reduce {value!r} mod {self.p}")


def find_root_of_unity(p: int, n: int) -> PrimeFieldElement:
    """Smallest element of exact multiplicative order n in GF(p)."""
    if n == 1:
        return PrimeFieldElement(p, 1)
    if (p - 1) % n != 0:
        raise NoRoot(f"no element of order {n} in GF({p})")
    proper = divisors(n)[:-1]
    for v in range(2, p):
        if pow(v, n, p) == 1 and all(pow(v, d, p) != 1 for d in proper):
            return PrimeFieldElement(p, v)
    raise NoRoot(f"scan failed for order {n} in GF({p})")


def default_primes(n: int, count: int = 2, start: int = 23) -> list[int]:
    """Smallest primes p >= start with p = 1 mod n (two guard against bad reduction)."""
    out, p = [], start
    while len(out) < count:
        if is_prime(p) and (n == 1 or p % n == 1):
            out.append(p)
        p += 1
    return out


def field_from_descriptor(desc) -> RationalField | CyclotomicField | PrimeField:
    """Accepts {"field": "cyclotomic", "conductor": 7}, {"cyclotomic": 7},
    {"field": "prime", "p": 29}, {"prime": 29} or {"field": "rational"}."""
    if isinstance(desc, str):
        if desc == "rational":
            return QQ
        raise FieldError(f"unknown field descriptor {desc!r}")
    if "field" in desc:
        kind = desc["field"]
        if kind == "rational":
            return QQ
        if kind == "cyclotomic":
            return CyclotomicField(int(desc["conductor"]))
        if kind == "prime":
            return PrimeField(int(desc["p"]))
        raise FieldError(f"unknown field kind {kind!r}")
    if "cyclotomic" in desc:
        return CyclotomicField(int(desc["cyclotomic"]))
    if "prime" in desc:
        return PrimeField(int(desc["prime"]))
    if "rational" in desc:
        return QQ
    raise FieldError(f"unintelligible field descriptor {desc!r}")
