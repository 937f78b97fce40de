"""Dense exact linear algebra over any of the package's fields.

Matrices are sequences of sequences of field elements; results are tuples of
tuples.  Multiplication skips zero entries, which makes products of the
monomial matrices that dominate the group fixtures effectively linear time.
"""

from __future__ import annotations

from .errors import DimensionMismatch


def identity(field, n):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def transpose(a):
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))


def mat_mul(a, b):
    if len(a[0]) != len(b):
        raise DimensionMismatch("matrix product shape mismatch")
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        new_row = []
        for col in bt:
            acc = None
            for k, x in nz:
                y = col[k]
                if y:
                    acc = x * y if acc is None else acc + x * y
            new_row.append(acc if acc is not None else _zero_like(row, col))
        out.append(tuple(new_row))
    return tuple(out)


def _zero_like(row, col):
    probe = row[0] if row else col[0]
    return probe - probe


def mat_vec(a, v):
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x and y:
                acc = x * y if acc is None else acc + x * y
        out.append(acc if acc is not None else _zero_like(row, v))
    return tuple(out)


def scalar_mul(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def rref(rows, field):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(a, field) -> int:
    return len(rref(a, field)[0])


def kernel(a, field):
    """Basis of the right kernel of a (vectors v with a v = 0)."""
    if not a:
        return ()
    ncols = len(a[0])
    rows, pivots = rref(a, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [field.zero] * ncols
        vec[f] = field.one
        for r, p in enumerate(pivots):
            vec[p] = -rows[r][f]
        basis.append(tuple(vec))
    return tuple(basis)


def inverse(a, field):
    n = len(a)
    aug = [list(row) + list(ident_row) for row, ident_row in zip(a, identity(field, n))]
    rows, pivots = rref(aug, field)
    if list(pivots) != list(range(n)):
        raise DimensionMismatch("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def solve_unique(a, b, field):
    """Solve a x = b when the solution is unique; returns None otherwise."""
    n_cols = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    rows, pivots = rref(aug, field)
    if n_cols in pivots:
        return None  # inconsistent
    if len(pivots) != n_cols:
        return None  # underdetermined
    x = [field.zero] * n_cols
    for r, p in enumerate(pivots):
        x[p] = rows[r][-1]
    return tuple(x)


class Subspace:
    """Row-reduced echelon basis of a subspace of field^ambient."""

    def __init__(self, field, ambient: int, vectors):
        self.field = field
        self.ambient = ambient
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch("vector length differs from ambient dimension")
        self.basis, self.pivots = rref(vectors, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector) -> bool:
        v = list(vector)
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return not any(v)

    def contains_all(self, vectors) -> bool:
        return all(self.contains(v) for v in vectors)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        stacked = list(self.basis) + list(other.basis)
        if not stacked:
            return Subspace(self.field, self.ambient, ())
        combos = kernel(transpose(stacked), self.field)
        vectors = []
        for c in combos:
            vec = [self.field.zero] * self.ambient
            for coef, row in zip(c[: self.dim], self.basis):
                if coef:
                    vec = [x + coef * y for x, y in zip(vec, row)]
            vectors.append(tuple(vec))
        return Subspace(self.field, self.ambient, vectors)

    def annihilator(self) -> "Subspace":
        """Vectors pairing to zero with every basis row under the dot pairing."""
        if not self.basis:
            return Subspace(
                self.field, self.ambient, identity(self.field, self.ambient)
            )
        return Subspace(self.field, self.ambient, kernel(self.basis, self.field))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"
