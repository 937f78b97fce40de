"""Skew-symmetric matrices of linear forms, exact Pfaffians, congruence
semi-invariance and pointwise kernels.

A family M(x) = sum_i x_i B_i is stored through its constant coefficient
matrices B_i; entries of the B_i are polynomials in the family parameters
(empty parameter list means honest constants), so the six-variable family
with its weight parameter is a single object and identities like
Pf(M) = -t * f are exact statements in all variables at once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, NotSkew, OddSize
from .fields import ReductionContext
from .linalg import Subspace
from .modp import kernel_mod_p, rank_mod_p
from .polynomials import LinearSubstitution, SparsePolynomial
from .representations import wedge_pairs

MAX_PFAFFIAN_SIZE = 8


def _as_param_poly(field, nparams, value):
    if isinstance(value, SparsePolynomial):
        if value.nvars != nparams:
            raise DimensionMismatch("parameter polynomial has wrong arity")
        return value
    return SparsePolynomial.constant(nparams, field, value) if value else SparsePolynomial.zero(nparams, field)


class SkewLinearFamily:
    """M(x) = sum of x_i B_i with skew constant matrices B_i."""

    def __init__(self, field, size: int, coefficient_matrices, params: tuple[str, ...] = ()):
        if size % 2:
            raise OddSize(f"family size {size} is odd")
        self.field = field
        self.size = size
        self.params = tuple(params)
        nparams = len(self.params)
        mats = []
        for b in coefficient_matrices:
            rows = [
                tuple(_as_param_poly(field, nparams, x) for x in row) for row in b
            ]
            mats.append(tuple(rows))
        self.coefficients = tuple(mats)
        for b in self.coefficients:
            if len(b) != size or any(len(row) != size for row in b):
                raise DimensionMismatch("coefficient matrix has wrong shape")
            for i in range(size):
                if b[i][i]:
                    raise NotSkew("nonzero diagonal entry")
                for j in range(i + 1, size):
                    if b[i][j] != -b[j][i]:
                        raise NotSkew(f"entry ({i},{j}) breaks skew symmetry")

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    @property
    def total_vars(self) -> int:
        return self.nvars + len(self.params)

    @classmethod
    def from_upper_triangle(cls, field, size, nvars, upper, params=()):
        """Build from {(i, j): {var_index: coeff}} for i < j, skew-completed.

        ``coeff`` may be a field element or a parameter polynomial.
        """
        nparams = len(params)
        zero = SparsePolynomial.zero(nparams, field)
        mats = [
            [[zero for _ in range(size)] for _ in range(size)] for _ in range(nvars)
        ]
        for (i, j), combo in upper.items():
            if not i < j:
                raise DimensionMismatch("upper triangle wants i < j")
            for var, coeff in combo.items():
                poly = _as_param_poly(field, nparams, coeff)
                mats[var][i][j] = poly
                mats[var][j][i] = -poly
        return cls(field, size, mats, params)

    def entry_matrix(self):
        """The N x N matrix of forms, as polynomials in x_1..x_m, params."""
        total = self.total_vars
        zero = SparsePolynomial.zero(total, self.field)
        rows = [[zero for _ in range(self.size)] for _ in range(self.size)]
        for var, b in enumerate(self.coefficients):
            for i in range(self.size):
                for j in range(self.size):
                    poly = b[i][j]
                    if poly:
                        lifted_terms = {
                            _exp_with_var(e, var, self.nvars): c
                            for e, c in poly.terms.items()
                        }
                        rows[i][j] = rows[i][j] + SparsePolynomial(
                            total, self.field, lifted_terms
                        )
        return tuple(tuple(r) for r in rows)

    def specialize(self, values) -> "SkewLinearFamily":
        """Evaluate the parameters at field elements."""
        if len(values) != len(self.params):
            raise DimensionMismatch("parameter count mismatch")
        mats = []
        for b in self.coefficients:
            mats.append(
                [
                    [
                        _as_param_poly(
                            self.field,
                            0,
                            x.evaluate(list(values)) if x else self.field.zero,
                        )
                        for x in row
                    ]
                    for row in b
                ]
            )
        return SkewLinearFamily(self.field, self.size, mats, ())

    def constant_matrices(self):
        """B_i as matrices of field elements (no parameters left)."""
        if self.params:
            raise DimensionMismatch("family still has parameters")
        return [
            tuple(
                tuple(x.terms.get((), self.field.zero) for x in row) for row in b
            )
            for b in self.coefficients
        ]

    def reduce_mod_p(self, ctx: ReductionContext):
        """B_i as int matrices mod p."""
        return [
            [[ctx.reduce(x) for x in row] for row in b]
            for b in self.constant_matrices()
        ]

    def bivector_basis(self):
        """Each B_i as a wedge-coordinate vector (pairs in lex order)."""
        pairs = wedge_pairs(self.size)
        consts = self.constant_matrices() if not self.params else None
        out = []
        for idx, b in enumerate(self.coefficients):
            if consts is not None:
                out.append(tuple(consts[idx][i][j] for (i, j) in pairs))
            else:
                out.append(tuple(b[i][j] for (i, j) in pairs))
        return out


def _exp_with_var(param_exps, var, nvars):
    e = [0] * nvars + list(param_exps)
    e[var] = 1
    return tuple(e)


def build_family(subspace_or_vectors, size: int, field, params=()) -> SkewLinearFamily:
    """Identify bivectors (wedge coordinates, pairs in lex order) with skew
    matrices via e_i ^ e_j -> E_ij - E_ji and assemble the family."""
    if isinstance(subspace_or_vectors, Subspace):
        vectors = subspace_or_vectors.basis
    else:
        vectors = subspace_or_vectors
    pairs = wedge_pairs(size)
    if any(len(v) != len(pairs) for v in vectors):
        raise DimensionMismatch("bivector length differs from wedge dimension")
    nparams = len(params)
    zero = SparsePolynomial.zero(nparams, field)
    mats = []
    for vec in vectors:
        rows = [[zero for _ in range(size)] for _ in range(size)]
        for coeff, (i, j) in zip(vec, pairs):
            poly = _as_param_poly(field, nparams, coeff)
            rows[i][j] = poly
            rows[j][i] = -poly
        mats.append(rows)
    return SkewLinearFamily(field, size, mats, params)


# ---------------------------------------------------------------------------
# pfaffians and determinants (ring-generic, exponential but tiny sizes)


def _check_skew(matrix):
    n = len(matrix)
    if n % 2:
        raise OddSize(f"{n} x {n} matrix has no pfaffian")
    if n > MAX_PFAFFIAN_SIZE:
        raise DimensionMismatch(f"size {n} above supported bound {MAX_PFAFFIAN_SIZE}")
    for i in range(n):
        if matrix[i][i]:
            raise NotSkew("nonzero diagonal entry")
        for j in range(i + 1, n):
            if matrix[i][j] != -matrix[j][i]:
                raise NotSkew(f"entry ({i},{j}) breaks skew symmetry")


def pfaffian(matrix, zero):
    """Laplace-type expansion along the first remaining row:
    Pf(M) = sum_(j>=2) (-1)^j m_1j Pf(M with rows/cols 1, j removed)."""
    _check_skew(matrix)
    cache = {}

    def rec(indices):
        if not indices:
            return None  # multiplicative identity, handled by caller
        if len(indices) == 2:
            return matrix[indices[0]][indices[1]]
        if indices in cache:
            return cache[indices]
        first = indices[0]
        rest = indices[1:]
        acc = zero
        for t, j in enumerate(rest):
            entry = matrix[first][j]
            if not entry:
                continue
            sub = rec(tuple(k for k in rest if k != j))
            term = entry if sub is None else entry * sub
            acc = acc + term if t % 2 == 0 else acc - term
        cache[indices] = acc
        return acc

    n = len(matrix)
    if n == 0:
        raise OddSize("empty matrix")
    return rec(tuple(range(n)))


def determinant(matrix, zero, one):
    """First-row expansion with memoization on column subsets."""
    n = len(matrix)
    cache = {}

    def rec(cols):
        if not cols:
            return one
        row = n - len(cols)
        if cols in cache:
            return cache[cols]
        acc = zero
        for t, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = rec(tuple(x for x in cols if x != c))
            term = entry * sub
            acc = acc + term if t % 2 == 0 else acc - term
        cache[cols] = acc
        return acc

    return rec(tuple(range(n)))


def pfaffian_mod_p(matrix, p: int) -> int:
    """Integer pfaffian of a skew matrix over GF(p)."""
    n = len(matrix)

    def rec(indices):
        if len(indices) == 2:
            return matrix[indices[0]][indices[1]] % p
        first = indices[0]
        rest = indices[1:]
        acc = 0
        for t, j in enumerate(rest):
            entry = matrix[first][j] % p
            if not entry:
                continue
            sub = rec(tuple(k for k in rest if k != j))
            term = entry * sub % p
            acc = (acc + term) % p if t % 2 == 0 else (acc - term) % p
        return acc

    if n % 2:
        raise OddSize("odd size")
    if n == 0:
        return 1
    return rec(tuple(range(n)))


def family_matrix_at_point(b_int, x, p: int):
    """M(x) mod p as integer rows for constant int coefficient matrices."""
    n = len(b_int[0])
    rows = [[0] * n for _ in range(n)]
    for xi, b in zip(x, b_int):
        if xi % p:
            for i in range(n):
                bi = b[i]
                row = rows[i]
                for j in range(n):
                    if bi[j]:
                        row[j] = (row[j] + xi * bi[j]) % p
    return rows


@dataclass(frozen=True)
class KernelResult:
    rank: int
    kernel: tuple


def kernel_at_point(b_int, x, p: int) -> KernelResult:
    """Exact rank and kernel basis of M(x) over GF(p)."""
    if not any(v % p for v in x):
        raise DimensionMismatch("kernel at the zero point")
    m = family_matrix_at_point(b_int, x, p)
    return KernelResult(rank=rank_mod_p(m, p), kernel=tuple(kernel_mod_p(m, p)))


# ---------------------------------------------------------------------------
# congruence semi-invariance


@dataclass(frozen=True)
class CongruenceReport:
    holds: bool
    scalar: object | None = None


def congruence_semi_invariance(
    fam: SkewLinearFamily, sigma: LinearSubstitution, rho
) -> CongruenceReport:
    """Does M(sigma(x)) equal c * rho M(x) rho^T for one global scalar c?

    The scalar is read off the first nonzero entry and then verified on every
    entry, exactly, as polynomial identities in the x variables and the family
    parameters.
    """
    entries = fam.entry_matrix()
    n = fam.size
    total = fam.total_vars
    zero = SparsePolynomial.zero(total, fam.field)

    if sigma.size == fam.nvars:
        sigma = sigma.extended(len(fam.params))
    elif sigma.size != total:
        raise DimensionMismatch("substitution size matches neither x nor x+params")
    substituted = tuple(
        tuple(e.substitute_linear(sigma.matrix) if e else e for e in row)
        for row in entries
    )

    conjugated = _congruence_transform(entries, rho, zero)

    scalar = None
    for i in range(n):
        for j in range(n):
            if conjugated[i][j]:
                lm = conjugated[i][j].leading_monomial()
                lhs = substituted[i][j].terms.get(lm)
                if lhs is None:
                    return CongruenceReport(False)
                scalar = lhs / conjugated[i][j].terms[lm]
                break
        if scalar is not None:
            break
    if scalar is None:
        return CongruenceReport(not any(any(row) for row in substituted), fam.field.one)

    for i in range(n):
        for j in range(n):
            if substituted[i][j] != conjugated[i][j].scale(scalar):
                return CongruenceReport(False)
    return CongruenceReport(True, scalar)


def _congruence_transform(entries, rho, zero):
    """rho M rho^T for a constant matrix rho and polynomial entries."""
    n = len(entries)
    # left multiply
    left = []
    for i in range(n):
        row = []
        nz = [(k, c) for k, c in enumerate(rho[i]) if c]
        for j in range(n):
            acc = zero
            for k, c in nz:
                e = entries[k][j]
                if e:
                    acc = acc + e.scale(c)
            row.append(acc)
        left.append(row)
    # right multiply by rho^T: out[i][j] = sum_l left[i][l] rho[j][l]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for l, c in ((l, c) for l, c in enumerate(rho[j]) if c):
                e = left[i][l]
                if e:
                    acc = acc + e.scale(c)
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def action_on_family_coordinates(fam: SkewLinearFamily, rho, field):
    """Matrix S with rho B_j rho^T = sum_i S[i][j] B_i, or None when the span
    is not stable.  S is the induced action on the x coordinates.

    All m transformed bivectors are solved against the basis in a single
    augmented elimination.
    """
    from . import linalg

    pairs = wedge_pairs(fam.size)
    consts = fam.constant_matrices()
    m = len(consts)
    targets = []
    for b in consts:
        transformed = linalg.mat_mul(linalg.mat_mul(rho, b), linalg.transpose(rho))
        targets.append(tuple(transformed[a][b] for (a, b) in pairs))
    augmented = [
        tuple(consts[i][a][b] for i in range(m)) + tuple(t[w] for t in targets)
        for w, (a, b) in enumerate(pairs)
    ]
    rows, pivots = linalg.rref(augmented, field)
    if any(p >= m for p in pivots):
        return None  # some target is outside the span
    if len(pivots) != m:
        raise DimensionMismatch("family coefficient matrices are dependent")
    cols = []
    for k in range(m):
        coords = [field.zero] * m
        for r in range(m):
            coords[r] = rows[r][m + k]
        cols.append(coords)
    return tuple(tuple(cols[j][i] for j in range(m)) for i in range(m))
