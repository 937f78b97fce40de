"""Small dense linear algebra and polynomial evaluation over GF(p), on raw
ints.  Hot paths (the census) live in geometry with numpy; these helpers cover
the per-sample work where clarity beats throughput.
"""

from __future__ import annotations

from .fields import ReductionContext


def rref_mod_p(rows, p: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [[x % p for x in row] for row in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank_mod_p(rows, p: int) -> int:
    return len(rref_mod_p(rows, p)[0])


def kernel_mod_p(rows, p: int):
    """Basis of the right kernel (vectors v with A v = 0 mod p)."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref_mod_p(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, col in enumerate(pivots):
            vec[col] = -red[r][f] % p
        basis.append(tuple(vec))
    return basis


def mat_vec_mod_p(a, v, p: int):
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def mat_mul_mod_p(a, b, p: int):
    cols = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in cols) for row in a
    )


def normalize_projective(v, p: int):
    """Scale so the last nonzero coordinate is 1 (canonical representative)."""
    last = max(i for i, x in enumerate(v) if x % p)
    inv = pow(v[last] % p, p - 2, p)
    return tuple(x * inv % p for x in v)


def projective_equal(u, v, p: int) -> bool:
    return normalize_projective(u, p) == normalize_projective(v, p)


def projective_points(dim: int, p: int):
    """All points of P^(dim-1)(F_p), last nonzero coordinate normalized to 1,
    in lexicographic chart order."""
    for chart in range(dim):
        point = [0] * dim
        point[chart] = 1
        counters = [0] * chart
        while True:
            yield tuple(counters) + (1,) + (0,) * (dim - chart - 1)
            k = chart - 1
            while k >= 0:
                counters[k] += 1
                if counters[k] < p:
                    break
                counters[k] = 0
                k -= 1
            if k < 0:
                break


def span_points(basis, p: int):
    """Projective points of the span of the given vectors over GF(p)."""
    seen = set()
    dim = len(basis)
    for coeffs in projective_points(dim, p):
        vec = [0] * len(basis[0])
        for c, row in zip(coeffs, basis):
            if c:
                vec = [(x + c * y) % p for x, y in zip(vec, row)]
        if any(vec):
            point = normalize_projective(vec, p)
            if point not in seen:
                seen.add(point)
                yield point


# -- polynomial reduction and evaluation --------------------------------------


def reduce_polynomial(f, ctx: ReductionContext) -> dict:
    """SparsePolynomial over Q or Q(zeta) to {exponents: int mod p}."""
    out = {}
    for e, c in f.terms.items():
        v = ctx.reduce(c)
        if v:
            out[e] = v
    return out


def eval_poly_mod_p(terms: dict, point, p: int) -> int:
    total = 0
    for e, c in terms.items():
        v = c
        for x, power in zip(point, e):
            if power:
                v = v * pow(x, power, p) % p
        total = (total + v) % p
    return total


def poly_partial_mod_p(terms: dict, i: int, p: int) -> dict:
    out = {}
    for e, c in terms.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            ne = tuple(ne)
            out[ne] = (out.get(ne, 0) + c * e[i]) % p
    return {e: c for e, c in out.items() if c}


def eval_poly_ext(terms: dict, point, ext) -> tuple:
    """Evaluate an int-coefficient polynomial at a point over GF(p^k)."""
    total = ext.zero
    for e, c in terms.items():
        v = ext.embed(c)
        for x, power in zip(point, e):
            for _ in range(power):
                v = ext.mul(v, x)
        total = ext.add(total, v)
    return total
