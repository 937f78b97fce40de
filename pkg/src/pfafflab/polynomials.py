"""Sparse multivariate polynomials over an exact field.

Terms map dense exponent tuples to nonzero coefficients.  The monomial order
everywhere is degree reverse lexicographic; ``drl_key`` is the sort key whose
maximum is the leading term.  Linear substitution recognizes monomial
matrices (at most one entry per row) and remaps terms directly, which keeps
group-orbit checks cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import ArityMismatch, SearchSpaceTooLarge


def drl_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class SparsePolynomial:
    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field, terms=None):
        self.nvars = nvars
        self.field = field
        cleaned = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff:
                    if len(exps) != nvars:
                        raise ArityMismatch("exponent vector length != nvars")
                    cleaned[tuple(exps)] = coeff
        self.terms = cleaned

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars, field):
        return cls(nvars, field, {})

    @classmethod
    def constant(cls, nvars, field, value):
        return cls(nvars, field, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars, field, i, power: int = 1):
        exps = [0] * nvars
        exps[i] = power
        return cls(nvars, field, {tuple(exps): field.one})

    # -- ring operations -----------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars or self.field != other.field:
            raise ArityMismatch("polynomials from different rings")

    def __add__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            terms[e] = c if acc is None else acc + c
        return SparsePolynomial(self.nvars, self.field, terms)

    def __neg__(self):
        return SparsePolynomial(
            self.nvars, self.field, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            return self.scale(other)
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = terms.get(e)
                terms[e] = prod if acc is None else acc + prod
        return SparsePolynomial(self.nvars, self.field, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if not c:
            return SparsePolynomial.zero(self.nvars, self.field)
        return SparsePolynomial(
            self.nvars, self.field, {e: coeff * c for e, coeff in self.terms.items()}
        )

    def __pow__(self, k: int):
        result = SparsePolynomial.constant(self.nvars, self.field, self.field.one)
        for _ in range(k):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items(), key=lambda t: drl_key(t[0])))))

    # -- queries ---------------------------------------------------------------

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_monomial(self):
        if not self.terms:
            return None
        return max(self.terms, key=drl_key)

    def leading_coefficient(self):
        lm = self.leading_monomial()
        return None if lm is None else self.terms[lm]

    def sorted_terms(self):
        """Terms in descending degrevlex order (canonical serialization order)."""
        return sorted(self.terms.items(), key=lambda t: drl_key(t[0]), reverse=True)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    # -- calculus and substitution ---------------------------------------------

    def partial_derivative(self, i: int) -> "SparsePolynomial":
        if not 0 <= i < self.nvars:
            raise ArityMismatch(f"variable index {i} out of range")
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                ne = tuple(ne)
                add = c * e[i]
                acc = terms.get(ne)
                terms[ne] = add if acc is None else acc + add
        return SparsePolynomial(self.nvars, self.field, terms)

    def substitute_linear(self, matrix) -> "SparsePolynomial":
        """Substitute x_i -> sum_j matrix[i][j] x_j."""
        if len(matrix) != self.nvars:
            raise ArityMismatch("substitution matrix size != nvars")
        remap = _monomial_structure(matrix)
        if remap is not None:
            return self._substitute_monomial(remap)
        forms = [
            SparsePolynomial(
                self.nvars,
                self.field,
                {
                    tuple(1 if k == j else 0 for k in range(self.nvars)): c
                    for j, c in enumerate(row)
                    if c
                },
            )
            for row in matrix
        ]
        result = SparsePolynomial.zero(self.nvars, self.field)
        for e, coeff in self.terms.items():
            term = SparsePolynomial.constant(self.nvars, self.field, coeff)
            for i, power in enumerate(e):
                for _ in range(power):
                    term = term * forms[i]
            result = result + term
        return result

    def _substitute_monomial(self, remap) -> "SparsePolynomial":
        terms = {}
        for e, coeff in self.terms.items():
            ne = [0] * self.nvars
            c = coeff
            dead = False
            for i, power in enumerate(e):
                if not power:
                    continue
                target = remap[i]
                if target is None:
                    dead = True
                    break
                j, scalar = target
                ne[j] += power
                for _ in range(power):
                    c = c * scalar
            if dead:
                continue
            ne = tuple(ne)
            acc = terms.get(ne)
            terms[ne] = c if acc is None else acc + c
        return SparsePolynomial(self.nvars, self.field, terms)

    def substitute_values(self, assignment: dict) -> "SparsePolynomial":
        """Partially evaluate some variables at field constants."""
        terms = {}
        for e, coeff in self.terms.items():
            c = coeff
            ne = list(e)
            for i, value in assignment.items():
                power = e[i]
                if power:
                    ne[i] = 0
                    if not value:
                        c = None
                        break
                    for _ in range(power):
                        c = c * value
            if c is None or not c:
                continue
            ne = tuple(ne)
            acc = terms.get(ne)
            terms[ne] = c if acc is None else acc + c
        return SparsePolynomial(self.nvars, self.field, terms)

    def remove_variable(self, i: int) -> "SparsePolynomial":
        """Drop a variable that no longer occurs."""
        if any(e[i] for e in self.terms):
            raise ArityMismatch(f"variable {i} still occurs")
        terms = {e[:i] + e[i + 1 :]: c for e, c in self.terms.items()}
        return SparsePolynomial(self.nvars - 1, self.field, terms)

    def shift_variables(self, prefix: int) -> "SparsePolynomial":
        """Reinterpret in a ring with ``prefix`` new leading variables."""
        terms = {(0,) * prefix + e: c for e, c in self.terms.items()}
        return SparsePolynomial(self.nvars + prefix, self.field, terms)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ArityMismatch("point length != nvars")
        total = self.field.zero
        for e, coeff in self.terms.items():
            val = coeff
            for x, power in zip(point, e):
                for _ in range(power):
                    val = val * x
            total = total + val
        return total

    def pretty(self, names=None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i+1}" for i in range(self.nvars)]
        chunks = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}^{p}" if p > 1 else names[i] for i, p in enumerate(e) if p
            )
            chunks.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(chunks)

    def __repr__(self):
        return f"SparsePolynomial({self.pretty()})"


def _monomial_structure(matrix):
    """Rows with at most one nonzero entry; None when matrix is not monomial."""
    remap = []
    for row in matrix:
        nz = [(j, c) for j, c in enumerate(row) if c]
        if len(nz) > 1:
            return None
        remap.append(nz[0] if nz else None)
    return remap


def poly_arith(f: SparsePolynomial, g: SparsePolynomial, op: str) -> SparsePolynomial:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    raise ValueError(f"unsupported op {op!r}")


# ---------------------------------------------------------------------------
# substitutions and semi-invariance


class LinearSubstitution:
    """Invertible coordinate change x_i -> sum_j A[i][j] x_j."""

    def __init__(self, field, matrix, tag: str = ""):
        from .linalg import rank

        self.field = field
        self.matrix = tuple(tuple(row) for row in matrix)
        self.tag = tag
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ArityMismatch("substitution matrix must be square")
        if rank(self.matrix, field) != n:
            raise ArityMismatch("substitution matrix is singular")

    @property
    def size(self) -> int:
        return len(self.matrix)

    def apply(self, f: SparsePolynomial) -> SparsePolynomial:
        return f.substitute_linear(self.matrix)

    def inverse(self) -> "LinearSubstitution":
        from .linalg import inverse

        return LinearSubstitution(self.field, inverse(self.matrix, self.field), f"{self.tag}^-1")

    def compose(self, other: "LinearSubstitution") -> "LinearSubstitution":
        from .linalg import mat_mul

        return LinearSubstitution(
            self.field, mat_mul(self.matrix, other.matrix), f"{self.tag}*{other.tag}"
        )

    def extended(self, extra: int) -> "LinearSubstitution":
        """Pad with identity rows for parameter variables left untouched."""
        n = len(self.matrix)
        rows = [
            tuple(row) + (self.field.zero,) * extra for row in self.matrix
        ]
        for k in range(extra):
            rows.append(
                tuple(self.field.zero for _ in range(n))
                + tuple(self.field.one if j == k else self.field.zero for j in range(extra))
            )
        return LinearSubstitution(self.field, rows, self.tag)

    def __repr__(self):
        return f"LinearSubstitution({self.tag or len(self.matrix)})"


@dataclass(frozen=True)
class SemiInvarianceReport:
    is_semi_invariant: bool
    scalar: object | None = None


def substitute_linear(f: SparsePolynomial, sigma: LinearSubstitution) -> SparsePolynomial:
    if sigma.size != f.nvars:
        raise ArityMismatch("substitution size != nvars")
    return sigma.apply(f)


def semi_invariance(f: SparsePolynomial, sigma: LinearSubstitution) -> SemiInvarianceReport:
    """Is f . sigma = c f exactly?  The candidate c is read off the leading
    degrevlex term and then verified on every term."""
    if not f:
        raise ArityMismatch("semi-invariance of the zero polynomial is undefined")
    g = sigma.apply(f)
    lm = f.leading_monomial()
    glc = g.terms.get(lm)
    if glc is None:
        return SemiInvarianceReport(False)
    c = glc / f.terms[lm]
    if g == f.scale(c):
        return SemiInvarianceReport(True, c)
    return SemiInvarianceReport(False)


# ---------------------------------------------------------------------------
# equivariant labeling search


@dataclass(frozen=True)
class MonomialAction:
    """Action on an abstract index set: e_s -> scalars[s] * e_perm[s]."""

    perm: tuple[int, ...]
    scalars: tuple


def find_equivariant_labeling(f: SparsePolynomial, actions) -> tuple[int, ...] | None:
    """Search bijections from variable indices to the abstract set for one
    making f semi-invariant under every generator; first hit in lexicographic
    order, or None."""
    m = f.nvars
    if m > 9:
        raise SearchSpaceTooLarge(f"{m} variables exceed the exhaustive search bound")
    for action in actions:
        if len(action.perm) != m or len(action.scalars) != m:
            raise ArityMismatch("action size differs from variable count")
    one = f.field.one
    for bijection in permutations(range(m)):
        inv = [0] * m
        for i, s in enumerate(bijection):
            inv[s] = i
        ok = True
        for action in actions:
            rows = []
            for i in range(m):
                s = bijection[i]
                target = inv[action.perm[s]]
                scalar = action.scalars[s]
                row = [f.field.zero] * m
                row[target] = scalar if scalar is not None else one
                rows.append(tuple(row))
            report = semi_invariance(f, LinearSubstitution(f.field, rows, "labeling"))
            if not report.is_semi_invariant:
                ok = False
                break
        if ok:
            return bijection
    return None
