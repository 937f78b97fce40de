"""Geometry over finite fields: Groebner-based smoothness certification,
the point census of the associated degree-two locus, the two-points-to-line
map, linearization fibers, fixed-point tangent weights and generic-freeness
sampling.

Polynomials over GF(p) are plain dicts {exponent tuple: int}; the census is
the one genuinely hot loop and runs on numpy in fixed-size chunks.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    BadReduction,
    BudgetExceeded,
    DegenerateSpan,
    DimensionMismatch,
    NonIsolatedFixedPoint,
    NotSemiInvariant,
    UnexpectedSolutionDim,
)
from .fields import ExtensionField, ReductionContext
from .modp import (
    eval_poly_ext,
    eval_poly_mod_p,
    kernel_mod_p,
    mat_vec_mod_p,
    normalize_projective,
    poly_partial_mod_p,
    projective_equal,
    rank_mod_p,
    reduce_polynomial,
    rref_mod_p,
    span_points,
)
from .pfaffians import family_matrix_at_point, kernel_at_point, pfaffian_mod_p
from .polynomials import LinearSubstitution, drl_key, semi_invariance

DEFAULT_PAIR_CAP = 1_000_000
DEFAULT_POWER_BOUND = 24
DEFAULT_STRATUM_CAP = 60_000


# ---------------------------------------------------------------------------
# Buchberger over GF(p)


def _lm(poly: dict):
    return max(poly, key=drl_key)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _monic(poly: dict, p: int) -> dict:
    inv = pow(poly[_lm(poly)], p - 2, p)
    return {e: c * inv % p for e, c in poly.items()}


def _sub_scaled(f: dict, g: dict, coeff: int, shift, p: int) -> dict:
    """f - coeff * x^shift * g, in place on a copy of f."""
    out = dict(f)
    for e, c in g.items():
        key = tuple(a + b for a, b in zip(e, shift))
        val = (out.get(key, 0) - coeff * c) % p
        if val:
            out[key] = val
        else:
            out.pop(key, None)
    return out


def normal_form(f: dict, basis, p: int) -> dict:
    """Full multivariate division by a list of monic polynomials."""
    work = dict(f)
    out = {}
    lms = [_lm(g) for g in basis]
    while work:
        m = _lm(work)
        c = work[m]
        for g, lmg in zip(basis, lms):
            if _divides(lmg, m):
                shift = tuple(a - b for a, b in zip(m, lmg))
                work = _sub_scaled(work, g, c, shift, p)
                break
        else:
            out[m] = c
            del work[m]
    return out


def s_polynomial(f: dict, g: dict, p: int) -> dict:
    lf, lg = _lm(f), _lm(g)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    out = {}
    for e, c in f.items():
        key = tuple(a + b for a, b in zip(e, sf))
        out[key] = c % p
    for e, c in g.items():
        key = tuple(a + b for a, b in zip(e, sg))
        val = (out.get(key, 0) - c) % p
        if val:
            out[key] = val
        else:
            out.pop(key, None)
    return out


@dataclass
class GroebnerBasis:
    p: int
    nvars: int
    basis: list
    pairs_processed: int

    def normal_form(self, poly: dict) -> dict:
        return normal_form(poly, self.basis, self.p)

    def reduces_to_zero(self, poly: dict) -> bool:
        return not self.normal_form(poly)

    def verify(self, generators=None) -> bool:
        """Post-hoc correctness: inputs and all S-polynomials reduce to zero."""
        for g in generators or ():
            if not self.reduces_to_zero(g):
                return False
        for i in range(len(self.basis)):
            for j in range(i + 1, len(self.basis)):
                if not self.reduces_to_zero(
                    s_polynomial(self.basis[i], self.basis[j], self.p)
                ):
                    return False
        return True


def buchberger(generators, p: int, pair_cap: int = DEFAULT_PAIR_CAP) -> GroebnerBasis:
    """Reduced degrevlex Groebner basis: normal pair strategy (by lcm degree,
    then lcm, then indices), product and chain criteria, full auto-reduction.
    """
    nvars = None
    basis = []
    for g in generators:
        g = {e: c % p for e, c in g.items() if c % p}
        if not g:
            continue
        nvars = len(next(iter(g)))
        basis.append(_monic(g, p))
    if nvars is None:
        raise DimensionMismatch("no nonzero generators")

    lms = [_lm(g) for g in basis]

    def lcm_of(i, j):
        return tuple(max(a, b) for a, b in zip(lms[i], lms[j]))

    def pair_key(item):
        i, j = item
        l = lcm_of(i, j)
        return (sum(l), l, i, j)

    pending = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0
    while pending:
        processed += 1
        if processed > pair_cap:
            raise BudgetExceeded(f"pair cap {pair_cap} exceeded")
        pair = min(pending, key=pair_key)
        pending.discard(pair)
        i, j = pair
        li, lj = lms[i], lms[j]
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        # product criterion: coprime leading monomials reduce to zero
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue
        # chain criterion: a third element dividing the lcm whose pairs with
        # both i and j are no longer pending
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(lms[k], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pending and pjk not in pending:
                    skip = True
                    break
        if skip:
            continue
        remainder = normal_form(s_polynomial(basis[i], basis[j], p), basis, p)
        if remainder:
            remainder = _monic(remainder, p)
            new_index = len(basis)
            basis.append(remainder)
            lms.append(_lm(remainder))
            for k in range(new_index):
                pending.add((k, new_index))

    reduced = _auto_reduce(basis, p)
    return GroebnerBasis(p=p, nvars=nvars, basis=reduced, pairs_processed=processed)


def _auto_reduce(basis, p: int):
    basis = [dict(g) for g in basis]
    changed = True
    while changed:
        changed = False
        # discard elements whose leading monomial another element divides
        basis.sort(key=lambda g: drl_key(_lm(g)))
        keep = []
        for idx, g in enumerate(basis):
            lmg = _lm(g)
            if any(
                _divides(_lm(h), lmg) for k, h in enumerate(basis) if k != idx and _lm(h) != lmg or (k < idx and _lm(h) == lmg)
            ):
                changed = True
                continue
            keep.append(g)
        basis = keep
        # fully reduce each element against the others
        out = []
        for idx, g in enumerate(basis):
            others = basis[:idx] + basis[idx + 1 :]
            red = normal_form(g, others, p) if others else g
            if red != g:
                changed = True
            if red:
                out.append(_monic(red, p))
        basis = out
    basis.sort(key=lambda g: drl_key(_lm(g)))
    return basis


def irrelevance_powers(gb: GroebnerBasis, bound: int = DEFAULT_POWER_BOUND):
    """For each variable, the least N <= bound with x_i^N in the ideal."""
    powers = []
    for i in range(gb.nvars):
        found = None
        for n in range(1, bound + 1):
            e = [0] * gb.nvars
            e[i] = n
            if gb.reduces_to_zero({tuple(e): 1}):
                found = n
                break
        powers.append(found)
    return powers


# ---------------------------------------------------------------------------
# smoothness certification


@dataclass
class SmoothnessVerdict:
    status: str  # "smooth" | "singular" | "unknown"
    prime: int
    power_bound: int
    variable_powers: list | None = None
    witness: tuple | None = None
    witness_field: str | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def is_smooth(self) -> bool:
        return self.status == "smooth"


def smoothness_check(
    f,
    p: int,
    *,
    root: int | None = None,
    power_bound: int = DEFAULT_POWER_BOUND,
    strata_matrices=None,
    stratum_cap: int = DEFAULT_STRATUM_CAP,
    pair_cap: int = DEFAULT_PAIR_CAP,
) -> SmoothnessVerdict:
    """Jacobian criterion mod p.

    Smooth means every variable has a power (up to the bound) inside the
    ideal of partial derivatives, certified through a reduced Groebner basis.
    Otherwise a singular point is searched over GF(p) (coordinate points,
    then eigenspace strata of the supplied substitution matrices) and over
    GF(p^2) strata; an explicit common zero gives SingularCertified, and an
    exhausted search budget is reported as Unknown, never retried silently.
    """
    nvars = f.nvars
    if not f:
        # the zero form: every point of projective space is a singular point
        witness = tuple([1] + [0] * (nvars - 1))
        return SmoothnessVerdict(
            status="singular",
            prime=p,
            power_bound=power_bound,
            witness=witness,
            witness_field=f"GF({p})",
            notes=["form vanishes identically"],
        )
    if not f.is_homogeneous():
        raise BadReduction("smoothness check expects a homogeneous form")
    if f.degree() % p == 0:
        raise BadReduction(f"degree {f.degree()} vanishes mod {p}")

    ctx = ReductionContext(p, f.field, root)
    terms = reduce_polynomial(f, ctx)
    if not terms:
        raise BadReduction("form reduces to zero mod p")
    partials = [poly_partial_mod_p(terms, i, p) for i in range(nvars)]
    generators = [g for g in partials if g]
    gb = buchberger(generators, p, pair_cap=pair_cap)
    powers = irrelevance_powers(gb, bound=power_bound)
    if all(n is not None for n in powers):
        return SmoothnessVerdict(
            status="smooth", prime=p, power_bound=power_bound, variable_powers=powers
        )

    notes = [f"irrelevance failed for variables {[i for i, n in enumerate(powers) if n is None]}"]
    witness = _singular_point_search(
        terms, partials, p, strata_matrices or (), stratum_cap, notes
    )
    if witness is not None:
        point, tag = witness
        return SmoothnessVerdict(
            status="singular",
            prime=p,
            power_bound=power_bound,
            variable_powers=powers,
            witness=point,
            witness_field=tag,
            notes=notes,
        )
    return SmoothnessVerdict(
        status="unknown",
        prime=p,
        power_bound=power_bound,
        variable_powers=powers,
        notes=notes,
    )


def _vanishes_at(terms, partials, point, p) -> bool:
    if eval_poly_mod_p(terms, point, p):
        return False
    return all(not eval_poly_mod_p(g, point, p) for g in partials)


def _vanishes_at_ext(terms, partials, point, ext) -> bool:
    if eval_poly_ext(terms, point, ext) != ext.zero:
        return False
    return all(eval_poly_ext(g, point, ext) == ext.zero for g in partials)


def _singular_point_search(terms, partials, p, strata_matrices, cap, notes):
    nvars = len(next(iter(terms)))
    # 1. coordinate points
    for i in range(nvars):
        point = tuple(1 if j == i else 0 for j in range(nvars))
        if _vanishes_at(terms, partials, point, p):
            notes.append(f"coordinate point e_{i + 1}")
            return point, f"GF({p})"
    # 2. eigenspace strata over GF(p)
    evaluated = 0
    for s in strata_matrices:
        cp = _char_poly_mod_p(s, p)
        for t in range(p):
            if _poly_eval_mod_p(cp, t, p):
                continue
            shifted = [
                [(s[i][j] - (t if i == j else 0)) % p for j in range(nvars)]
                for i in range(nvars)
            ]
            basis = kernel_mod_p(shifted, p)
            if not basis or len(basis) == nvars:
                continue
            for point in span_points(basis, p):
                evaluated += 1
                if evaluated > cap:
                    notes.append("GF(p) strata budget exhausted")
                    break
                if _vanishes_at(terms, partials, point, p):
                    notes.append("eigenspace stratum over the prime field")
                    return point, f"GF({p})"
            else:
                continue
            break
    # 3. eigenspace strata over GF(p^2)
    if p <= 311:
        ext = ExtensionField(p, 2)
        for s in strata_matrices:
            cp = _char_poly_mod_p(s, p)
            roots = _ext_roots(cp, ext)
            for t in roots:
                if not any(t[1:]):
                    continue  # prime-field eigenvalue already scanned
                rows = [
                    [
                        ext.sub(ext.embed(s[i][j]), t) if i == j else ext.embed(s[i][j])
                        for j in range(nvars)
                    ]
                    for i in range(nvars)
                ]
                basis = _kernel_ext(rows, ext)
                if not basis or len(basis) == nvars:
                    continue
                pts = _span_points_ext(basis, ext, cap)
                if pts is None:
                    notes.append("GF(p^2) stratum above the point budget, skipped")
                    continue
                for point in pts:
                    if _vanishes_at_ext(terms, partials, point, ext):
                        notes.append("eigenspace stratum over the quadratic extension")
                        flat = tuple(tuple(x) for x in point)
                        return flat, f"GF({p}^2)"
    else:
        notes.append("prime too large for the quadratic-extension scan")
    return None


def _poly_eval_mod_p(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


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
                fct = rows[i][c] * inv % p
                rows[i] = [(a - fct * b) % p for a, b in zip(rows[i], rows[c])]
    return det % p


def _char_poly_mod_p(s, p):
    """det(s - t I) as a polynomial in t, by interpolation at t = 0..n."""
    n = len(s)
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        shifted = [
            [(s[i][j] - (t if i == j else 0)) % p for j in range(n)] for i in range(n)
        ]
        ys.append(_det_mod_p(shifted, p))
    return _lagrange_mod_p(xs, ys, p)


def _lagrange_mod_p(xs, ys, p):
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        num = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            num = _poly_mul_mod_p(num, [-xs[j] % p, 1], p)
            denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(denom % p, p - 2, p) % p
        for k, c in enumerate(num):
            coeffs[k] = (coeffs[k] + scale * c) % p
    return coeffs


def _poly_mul_mod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _ext_roots(coeffs, ext: ExtensionField):
    roots = []
    for code in range(ext.q):
        t = ext.decode(code)
        acc = ext.zero
        for c in reversed(coeffs):
            acc = ext.add(ext.mul(acc, t), ext.embed(c))
        if acc == ext.zero:
            roots.append(t)
    return roots


def _kernel_ext(rows, ext: ExtensionField):
    rows = [list(r) for r in rows]
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != ext.zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ext.inverse(rows[r][c])
        rows[r] = [ext.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != ext.zero:
                f = rows[i][c]
                rows[i] = [ext.sub(x, ext.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ext.zero] * ncols
        vec[fc] = ext.one
        for rr, pc in enumerate(pivots):
            vec[pc] = ext.neg(rows[rr][fc])
        basis.append(vec)
    return basis


def _span_points_ext(basis, ext: ExtensionField, cap: int):
    d = len(basis)
    count = (ext.q**d - 1) // (ext.q - 1)
    if count > cap:
        return None
    points = []
    for chart in range(d):
        free = chart
        codes = [0] * free
        while True:
            coeffs = [ext.decode(c) for c in codes] + [ext.one] + [ext.zero] * (d - chart - 1)
            vec = [ext.zero] * len(basis[0])
            for coef, row in zip(coeffs, basis):
                if coef != ext.zero:
                    vec = [ext.add(x, ext.mul(coef, y)) for x, y in zip(vec, row)]
            points.append(tuple(vec))
            k = free - 1
            while k >= 0:
                codes[k] += 1
                if codes[k] < ext.q:
                    break
                codes[k] = 0
                k -= 1
            if k < 0:
                break
    return points


# ---------------------------------------------------------------------------
# the point census


@dataclass
class K3Census:
    p: int
    parameter: str
    n2: int
    n3: int
    corank_counts: dict
    surface_count: int | None
    weil_ok: bool | None
    samples: list
    total_points: int
    elapsed: float


def _dtype_for(p: int):
    if 6 * (p - 1) * (p - 1) < 2**15:
        return np.int16
    if 6 * (p - 1) * (p - 1) < 2**31:
        return np.int32
    return np.int64


def batched_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Row reduction of a stack of small matrices over GF(p), vectorized."""
    a = mats.copy()
    n, nrows, ncols = a.shape
    dtype = a.dtype
    inv_table = np.array([0] + [pow(v, p - 2, p) for v in range(1, p)], dtype=dtype)
    ar = np.arange(n)
    rowidx = np.arange(nrows)[None, :]
    r = np.zeros(n, dtype=np.int64)
    rank = np.zeros(n, dtype=np.int64)
    for c in range(ncols):
        col = a[:, :, c]
        cand = (col != 0) & (rowidx >= r[:, None])
        has = cand.any(axis=1)
        piv = np.where(has, cand.argmax(axis=1), 0)
        rr = np.where(has, r, 0)
        prow = a[ar, piv, :].copy()
        rrow = a[ar, rr, :].copy()
        swap = has & (piv != rr)
        a[ar, piv, :] = np.where(swap[:, None], rrow, prow)
        scaled = prow * inv_table[prow[:, c]][:, None] % p
        newr = np.where(has[:, None], scaled, rrow)
        a[ar, rr, :] = newr
        colv = a[:, :, c].copy()
        colv[ar, rr] = 0
        colv *= has[:, None].astype(dtype)
        a -= colv[:, :, None] * newr[:, None, :]
        a %= p
        r += has
        rank += has
    return rank


def _chart_batches(dim: int, p: int, chunk: int):
    """Projective points, last nonzero coordinate normalized to one, chart by
    chart in lexicographic order, as numpy batches."""
    for chart in range(dim):
        total = p**chart
        powers = np.array([p ** (chart - 1 - t) for t in range(chart)], dtype=np.int64)
        start = 0
        while start < total:
            stop = min(start + chunk, total)
            idx = np.arange(start, stop, dtype=np.int64)
            u = np.zeros((stop - start, dim), dtype=np.int64)
            if chart:
                u[:, :chart] = (idx[:, None] // powers[None, :]) % p
            u[:, chart] = 1
            yield u
            start = stop


def k3_census(
    b_int,
    p: int,
    *,
    parameter: str = "",
    samples: int = 50,
    seed: int = 7,
    chunk: int = 1 << 19,
    cache_path=None,
) -> K3Census:
    """Classify every point u of P(V*)(F_p) by the corank of the pairing
    matrix B(u) whose rows are the basis forms paired against u.

    u always lies in the kernel of B(u); corank at least two means some
    2-plane through u lies on the associated degree-two locus.  Corank-two
    points are reservoir-sampled (fixed seed) into witness 2-planes.
    """
    t0 = time.time()
    size = len(b_int[0])
    m = len(b_int)
    dtype = _dtype_for(p)
    # B(u) = sum_j u_j D_j with D_j[i][l] = B_i[j][l]
    stack = np.array(b_int, dtype=dtype)  # (m, size, size)
    d = stack.transpose(1, 0, 2).copy()  # (size, m, size)

    rng = random.Random(seed)
    corank_counts: dict[int, int] = {}
    reservoir: list[tuple] = []
    seen = 0
    kept: list[np.ndarray] = []
    total_points = 0

    for u in _chart_batches(size, p, chunk):
        total_points += len(u)
        uu = u.astype(dtype)
        bu = np.einsum("nj,jil->nil", uu, d).astype(dtype) % p
        ranks = batched_rank_mod_p(bu, p)
        coranks = size - ranks
        vals, counts = np.unique(coranks, return_counts=True)
        for v, cnt in zip(vals.tolist(), counts.tolist()):
            corank_counts[v] = corank_counts.get(v, 0) + cnt
        mask = coranks == 2
        if mask.any():
            pts = u[mask]
            kept.append(pts.astype(np.int32))
            for row in pts:
                if len(reservoir) < samples:
                    reservoir.append(tuple(int(x) for x in row))
                else:
                    j = rng.randrange(seen + 1)
                    if j < samples:
                        reservoir[j] = tuple(int(x) for x in row)
                seen += 1

    n2 = corank_counts.get(2, 0)
    n3 = sum(cnt for v, cnt in corank_counts.items() if v >= 3)
    surface_count = None
    weil_ok = None
    if n3 == 0 and n2 % (p + 1) == 0:
        surface_count = n2 // (p + 1)
        weil_ok = abs(surface_count - 1 - p * p) <= 22 * p

    if cache_path is not None and kept:
        np.save(cache_path, np.concatenate(kept, axis=0))

    plane_samples = []
    seen_planes = set()
    for u in reservoir:
        rows = _pairing_matrix(b_int, u, p)
        basis = kernel_mod_p(rows, p)
        if len(basis) != 2:
            continue
        canon = tuple(tuple(r) for r in rref_mod_p(list(basis), p)[0])
        if canon in seen_planes:
            continue
        seen_planes.add(canon)
        plane_samples.append({"u": list(canon[0]), "v": list(canon[1])})

    return K3Census(
        p=p,
        parameter=parameter,
        n2=n2,
        n3=n3,
        corank_counts=dict(sorted(corank_counts.items())),
        surface_count=surface_count,
        weil_ok=weil_ok,
        samples=plane_samples,
        total_points=total_points,
        elapsed=time.time() - t0,
    )


def _pairing_matrix(b_int, u, p):
    """Rows indexed by the basis forms: entry (i, l) is the form i paired
    against (u, e_l)."""
    rows = []
    for b in b_int:
        rows.append(tuple(sum(uj * b[j][l] for j, uj in enumerate(u)) % p for l in range(len(b))))
    return rows


def census_sanity_pairings(b_int, p: int, count: int, seed: int) -> bool:
    """B(u) u = 0 for random u: the defining forms are alternating."""
    rng = random.Random(seed)
    n = len(b_int[0])
    for _ in range(count):
        u = [rng.randrange(p) for _ in range(n)]
        if not any(u):
            continue
        rows = _pairing_matrix(b_int, u, p)
        if any(v % p for v in mat_vec_mod_p(rows, u, p)):
            return False
    return True


# ---------------------------------------------------------------------------
# hypersurface point sampling, lines, fibers


def sample_hypersurface_points(b_int, p: int, count: int, seed: int):
    """Distinct points x of P(L)(F_p) with vanishing pfaffian, by seeded
    rejection sampling."""
    rng = random.Random(seed)
    m = len(b_int)
    points = []
    seen = set()
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 1_000_000:
            raise BudgetExceeded("hypersurface sampling budget exhausted")
        x = [rng.randrange(p) for _ in range(m)]
        if not any(x):
            continue
        x = normalize_projective(x, p)
        if x in seen:
            continue
        if pfaffian_mod_p(family_matrix_at_point(b_int, x, p), p) == 0:
            seen.add(x)
            points.append(x)
    return points


@dataclass(frozen=True)
class LineOnCubic:
    point_a: tuple
    point_b: tuple


def line_from_surface_pair(b_int, plane1, plane2, p: int) -> LineOnCubic:
    """Forms in the family vanishing on the span of two surface 2-planes.

    The span must be four dimensional; the solution space must be a
    projective line, every point of which lies on the pfaffian hypersurface.
    """
    stacked = [list(plane1[0]), list(plane1[1]), list(plane2[0]), list(plane2[1])]
    wbasis, _ = rref_mod_p(stacked, p)
    if len(wbasis) < 4:
        raise DegenerateSpan(f"span dimension {len(wbasis)} < 4")
    rows = []
    for a in range(4):
        for b in range(a + 1, 4):
            wa, wb = wbasis[a], wbasis[b]
            rows.append(
                tuple(
                    sum(
                        wa[i] * bm[i][j] * wb[j]
                        for i in range(len(bm))
                        for j in range(len(bm))
                        if bm[i][j]
                    )
                    % p
                    for bm in b_int
                )
            )
    solutions = kernel_mod_p(rows, p)
    if len(solutions) != 2:
        raise UnexpectedSolutionDim(
            f"solution space has dimension {len(solutions)}, expected 2"
        )
    line = LineOnCubic(tuple(solutions[0]), tuple(solutions[1]))
    if not line_on_hypersurface(b_int, line, p):
        raise UnexpectedSolutionDim("pfaffian does not vanish on the solved line")
    return line


def line_on_hypersurface(b_int, line: LineOnCubic, p: int) -> bool:
    """Degree-three vanishing on four distinct parameter points certifies
    vanishing on the whole line."""
    a, b = line.point_a, line.point_b
    probes = [a, b, tuple((x + y) % p for x, y in zip(a, b))]
    probes.append(tuple((x + 2 * y) % p for x, y in zip(a, b)))
    for point in probes:
        if pfaffian_mod_p(family_matrix_at_point(b_int, point, p), p):
            return False
    return True


@dataclass(frozen=True)
class FiberResult:
    status: str  # "point" | "defect"
    solution_dim: int
    point: tuple | None
    on_hypersurface: bool | None


def linearization_fiber(b_int, vstar, p: int) -> FiberResult:
    """Solve M(x) v* = 0 for x: the fiber of the kernel projection.

    Generic v* gives a single projective point, which automatically lies on
    the hypersurface; higher dimensional solution spaces are reported as
    defects, not errors.
    """
    if not any(v % p for v in vstar):
        raise DimensionMismatch("fiber over the zero covector")
    n = len(b_int[0])
    m = len(b_int)
    cols = [mat_vec_mod_p(b, vstar, p) for b in b_int]
    rows = [tuple(cols[i][j] for i in range(m)) for j in range(n)]
    sols = kernel_mod_p(rows, p)
    if len(sols) != 1:
        return FiberResult(status="defect", solution_dim=len(sols), point=None, on_hypersurface=None)
    x = normalize_projective(sols[0], p)
    on_x = pfaffian_mod_p(family_matrix_at_point(b_int, x, p), p) == 0
    return FiberResult(status="point", solution_dim=1, point=x, on_hypersurface=on_x)


def kernel_fiber_round_trip(b_int, x, p: int) -> bool:
    """kernel at x, then the fiber over a kernel covector, must return x.

    The covector is the first reduced kernel basis vector (deterministic).
    Failures are covectors in the non-generic locus where the fiber has
    positive dimension; they are logged by callers, never hidden.
    """
    ker = kernel_at_point(b_int, x, p)
    if len(ker.kernel) != 2:
        return False
    fiber = linearization_fiber(b_int, ker.kernel[0], p)
    return fiber.status == "point" and projective_equal(fiber.point, x, p)


# ---------------------------------------------------------------------------
# fixed-point tangent weights


@dataclass(frozen=True)
class FixedPointWeights:
    point_index: int
    normal_index: int | None
    ambient_weights: tuple
    tangent_weights: tuple | None


def fixed_point_weights(f, exponents, order: int, field) -> list[FixedPointWeights]:
    """Tangent weights of a diagonal action at the coordinate fixed points
    lying on the hypersurface.

    The normal direction at e_i is the least j with a nonvanishing gradient
    entry; its weight is removed from the ambient list.  Points with a
    degenerate gradient are reported with tangent weights None.
    """
    n = f.nvars
    if len(exponents) != n:
        raise DimensionMismatch("one exponent per variable required")
    reduced = [a % order for a in exponents]
    if len(set(reduced)) != n:
        raise NonIsolatedFixedPoint("repeated diagonal weights, fixed locus not isolated")
    scalars = [field.zeta_power(a) for a in reduced]
    rows = [
        tuple(scalars[i] if i == j else field.zero for j in range(n)) for i in range(n)
    ]
    report = semi_invariance(f, LinearSubstitution(field, rows, "diagonal"))
    if not report.is_semi_invariant:
        raise NotSemiInvariant("form is not semi-invariant under the diagonal action")
    deg = f.degree()
    out = []
    for i in range(n):
        top = [0] * n
        top[i] = deg
        if f.terms.get(tuple(top)):
            continue  # coordinate point not on the hypersurface
        ambient = tuple((reduced[j] - reduced[i]) % order for j in range(n) if j != i)
        normal = None
        for j in range(n):
            if j == i:
                continue
            e = [0] * n
            e[i] = deg - 1
            e[j] = 1
            if f.terms.get(tuple(e)):
                normal = j
                break
        if normal is None:
            out.append(FixedPointWeights(i, None, ambient, None))
            continue
        normal_weight = (reduced[normal] - reduced[i]) % order
        tangent = list(ambient)
        tangent.remove(normal_weight)
        out.append(FixedPointWeights(i, normal, ambient, tuple(sorted(tangent))))
    return out


# ---------------------------------------------------------------------------
# generic freeness sampling


@dataclass
class FreenessElementReport:
    name: str
    moves_sample: bool
    scalar_on_coordinates: bool


@dataclass
class FreenessReport:
    reports: list
    kernel_elements: list
    flagged: list

    @property
    def generically_free(self) -> bool:
        return not self.kernel_elements


def generic_freeness_sample(rep, fam, p: int, *, samples: int = 25, seed: int = 7, root=None) -> FreenessReport:
    """Per nontrivial element: does it move a sampled hypersurface point?

    Elements fixing every sample are flagged and then tested exactly: acting
    as a scalar on the coordinate space is equivalent to lying in the kernel
    of the projective action.
    """
    from .pfaffians import action_on_family_coordinates

    ctx = ReductionContext(p, fam.field, root)
    b_int = fam.reduce_mod_p(ctx)
    points = sample_hypersurface_points(b_int, p, samples, seed)
    reports = []
    kernel_names = []
    flagged = []
    for gi in range(1, rep.order):
        rho = rep.elements[gi]
        s = action_on_family_coordinates(fam, rho, fam.field)
        if s is None:
            raise DimensionMismatch("family span is not stable under the group")
        s_int = [[ctx.reduce(x) for x in row] for row in s]
        moves = False
        for x in points:
            y = mat_vec_mod_p(s_int, x, p)
            if not any(y):
                continue
            if not projective_equal(y, x, p):
                moves = True
                break
        scalar = _is_scalar_matrix(s, fam.field)
        name = rep.element_name(gi)
        reports.append(
            FreenessElementReport(name=name, moves_sample=moves, scalar_on_coordinates=scalar)
        )
        if not moves:
            flagged.append(name)
            if scalar:
                kernel_names.append(name)
    return FreenessReport(reports=reports, kernel_elements=kernel_names, flagged=flagged)


def _is_scalar_matrix(s, field) -> bool:
    diag = s[0][0]
    for i, row in enumerate(s):
        for j, x in enumerate(row):
            if i == j:
                if x != diag:
                    return False
            elif x:
                return False
    return True
