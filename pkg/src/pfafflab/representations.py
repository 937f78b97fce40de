"""Finite matrix groups from generators: enumeration, characters, exterior
squares, equivariant hom bases via group averaging, and conjugacy class and
irreducible degree bookkeeping.

Groups are stored as explicit element lists (every instance here has order at
most a few hundred), so character sums and per-element checks are plain loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg
from .errors import CapExceeded, DimensionShortfall, NonIntegerMultiplicity
from .fields import CyclotomicNumber

DEFAULT_ELEMENT_CAP = 10_000


def matrix_key(m):
    return tuple(tuple(row) for row in m)


@dataclass
class MatrixRepresentation:
    field: object
    dim: int
    generators: tuple
    generator_names: tuple[str, ...]
    elements: list
    words: list[tuple[int, ...]]
    index: dict
    inverses: list[int]
    squares: list[int]
    _mult_table: list[list[int]] | None = dc_field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def product_index(self, i: int, j: int) -> int:
        if self._mult_table is not None:
            return self._mult_table[i][j]
        return self.index[matrix_key(linalg.mat_mul(self.elements[i], self.elements[j]))]

    def build_mult_table(self):
        if self._mult_table is None:
            self._mult_table = [
                [
                    self.index[matrix_key(linalg.mat_mul(a, b))]
                    for b in self.elements
                ]
                for a in self.elements
            ]
        return self._mult_table

    def element_name(self, i: int) -> str:
        word = self.words[i]
        return "*".join(self.generator_names[k] for k in word) if word else "1"


def enumerate_group(field, generators, names=None, cap: int = DEFAULT_ELEMENT_CAP) -> MatrixRepresentation:
    """Breadth-first closure of the generator set.

    Deterministic order: by word length, then lexicographically by generator
    word; the identity is element 0.
    """
    generators = tuple(matrix_key(g) for g in generators)
    if names is None:
        names = tuple(f"g{k}" for k in range(len(generators)))
    dim = len(generators[0]) if generators else 0
    gen_invs = [linalg.inverse(g, field) for g in generators]

    ident = linalg.identity(field, dim)
    elements = [ident]
    words: list[tuple[int, ...]] = [()]
    index = {matrix_key(ident): 0}
    head = 0
    while head < len(elements):
        base = elements[head]
        base_word = words[head]
        for k, gen in enumerate(generators):
            prod = matrix_key(linalg.mat_mul(base, gen))
            if prod not in index:
                if len(elements) >= cap:
                    raise CapExceeded(f"group enumeration exceeded cap {cap}")
                index[prod] = len(elements)
                elements.append(prod)
                words.append(base_word + (k,))
        head += 1

    inverses = []
    for word in words:
        inv = ident
        for k in reversed(word):
            inv = linalg.mat_mul(inv, gen_invs[k])
        inverses.append(index[matrix_key(inv)])
    squares = [index[matrix_key(linalg.mat_mul(m, m))] for m in elements]
    return MatrixRepresentation(
        field=field,
        dim=dim,
        generators=generators,
        generator_names=tuple(names),
        elements=elements,
        words=words,
        index=index,
        inverses=inverses,
        squares=squares,
    )


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class CharacterVector:
    values: tuple

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)


def character(rep: MatrixRepresentation) -> CharacterVector:
    traces = []
    for m in rep.elements:
        acc = rep.field.zero
        for i in range(rep.dim):
            acc = acc + m[i][i]
        traces.append(acc)
    return CharacterVector(tuple(traces))


def exterior_square_character(chi: CharacterVector, squares) -> CharacterVector:
    """Standard identity: value at g is (chi(g)^2 - chi(g^2)) / 2."""
    half = Fraction(1, 2)
    values = tuple(
        (chi[i] * chi[i] - chi[squares[i]]) * half for i in range(len(chi))
    )
    return CharacterVector(values)


def _as_nonneg_int(value) -> int:
    if isinstance(value, CyclotomicNumber):
        if not value.is_rational():
            raise NonIntegerMultiplicity(f"inner product {value!r} is irrational")
        value = value.rational_value()
    value = Fraction(value)
    if value.denominator != 1 or value < 0:
        raise NonIntegerMultiplicity(f"inner product {value} is not in Z>=0")
    return int(value)


def multiplicity(chi_a: CharacterVector, chi_b: CharacterVector, rep: MatrixRepresentation) -> int:
    """Inner product (1/|G|) sum chi_a(g) conj(chi_b(g)), conj = zeta -> 1/zeta."""
    if len(chi_a) != rep.order or len(chi_b) != rep.order:
        raise NonIntegerMultiplicity("character length differs from group order")
    acc = rep.field.zero
    for a, b in zip(chi_a.values, chi_b.values):
        acc = acc + a * rep.field.conjugate(b)
    acc = acc * Fraction(1, rep.order)
    return _as_nonneg_int(acc)


# ---------------------------------------------------------------------------
# exterior square of the representation itself


@dataclass
class ExteriorSquare:
    pairs: tuple[tuple[int, int], ...]
    position: dict
    matrices: list

    @property
    def dim(self) -> int:
        return len(self.pairs)


def wedge_pairs(n: int):
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def exterior_square(rep: MatrixRepresentation) -> ExteriorSquare:
    """Induced matrices on wedge coordinates e_i ^ e_j (i < j, lex order)."""
    pairs = wedge_pairs(rep.dim)
    position = {p: k for k, p in enumerate(pairs)}
    mats = []
    for m in rep.elements:
        rows = []
        for (i, j) in pairs:
            row = []
            for (k, l) in pairs:
                row.append(m[i][k] * m[j][l] - m[i][l] * m[j][k])
            rows.append(tuple(row))
        mats.append(tuple(rows))
    return ExteriorSquare(pairs=pairs, position=position, matrices=mats)


def bivector_coordinates(skew, position, field):
    """Wedge coordinates of a skew matrix: entry (i,j), i<j, no half factor."""
    vec = [field.zero] * len(position)
    for (i, j), k in position.items():
        vec[k] = skew[i][j]
    return tuple(vec)


def skew_from_bivector(vec, pairs, n, field):
    rows = [[field.zero] * n for _ in range(n)]
    for coeff, (i, j) in zip(vec, pairs):
        rows[i][j] = coeff
        rows[j][i] = -coeff
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# equivariant hom bases and the pencil of invariant subspaces


@dataclass
class EquivariantHomPencil:
    field: object
    dim_source: int
    dim_target: int
    basis: list  # maps as dim_target x dim_source matrices

    @property
    def rank(self) -> int:
        return len(self.basis)


def equivariant_hom_basis(
    rep: MatrixRepresentation,
    target_matrices,
    dim_target: int,
    predicted: int,
) -> EquivariantHomPencil:
    """Basis of Hom_G(V, W) by Reynolds averaging over elementary seeds.

    Seeds are the elementary matrices E_rc in row-major order; dependent
    averages are discarded.  The basis size must reach the character
    prediction or the arithmetic is broken somewhere.
    """
    field = rep.field
    n = rep.dim
    order = rep.order
    scale = Fraction(1, order)
    basis = []
    echelon: list[tuple[int, tuple]] = []  # (pivot position, reduced flat vector)

    for r in range(dim_target):
        if len(basis) == predicted:
            break
        for c in range(n):
            avg = [[field.zero] * n for _ in range(dim_target)]
            for gi in range(order):
                w = target_matrices[gi]
                vinv = rep.elements[rep.inverses[gi]]
                # W(g) E_rc V(g^-1) is the outer product column_r(W) x row_c(Vinv)
                wcol = [w[i][r] for i in range(dim_target)]
                vrow = vinv[c]
                for i, wi in enumerate(wcol):
                    if wi:
                        row = avg[i]
                        for j, vj in enumerate(vrow):
                            if vj:
                                row[j] = row[j] + wi * vj
            flat = [x * scale for row in avg for x in row]
            reduced = _reduce_against(flat, echelon, field)
            if reduced is None:
                continue
            pivot, vec = reduced
            echelon.append((pivot, vec))
            basis.append(
                tuple(tuple(x * scale for x in row) for row in avg)
            )
            if len(basis) == predicted:
                break

    if len(basis) < predicted:
        raise DimensionShortfall(
            f"averaging reached {len(basis)} maps, characters predict {predicted}"
        )
    return EquivariantHomPencil(
        field=field, dim_source=n, dim_target=dim_target, basis=basis
    )


def _reduce_against(flat, echelon, field):
    vec = list(flat)
    for pivot, row in echelon:
        if vec[pivot]:
            f = vec[pivot]
            vec = [x - f * y for x, y in zip(vec, row)]
    for k, x in enumerate(vec):
        if x:
            inv = field.one / x
            return k, tuple(inv * y for y in vec)
    return None


INFINITY = object()  # pencil parameter (1 : 0)


def pencil_member(pencil: EquivariantHomPencil, lam) -> linalg.Subspace:
    """Image of T_1 + lam T_2 (or T_2 at infinity) as a subspace of the target."""
    if pencil.rank == 1:
        t = pencil.basis[0]
    elif lam is INFINITY:
        t = pencil.basis[1]
    else:
        t1, t2 = pencil.basis[0], pencil.basis[1]
        t = tuple(
            tuple(a + lam * b for a, b in zip(r1, r2)) for r1, r2 in zip(t1, t2)
        )
    columns = [tuple(t[i][j] for i in range(pencil.dim_target)) for j in range(pencil.dim_source)]
    return linalg.Subspace(pencil.field, pencil.dim_target, columns)


def match_pencil_parameter(pencil: EquivariantHomPencil, target: linalg.Subspace):
    """Projective parameter (mu1 : mu2) with image(mu1 T1 + mu2 T2) = target,
    or None.  Solves the two-unknown homogeneous system obtained by reducing
    every column of T1, T2 against the target basis."""
    field = pencil.field
    rows = []
    t1, t2 = pencil.basis[0], pencil.basis[1]
    for j in range(pencil.dim_source):
        c1 = [t1[i][j] for i in range(pencil.dim_target)]
        c2 = [t2[i][j] for i in range(pencil.dim_target)]
        r1 = _residual(c1, target)
        r2 = _residual(c2, target)
        rows.extend((a, b) for a, b in zip(r1, r2))
    null = linalg.kernel(rows, field)
    if len(null) != 1:
        return None
    mu1, mu2 = null[0]
    member = pencil_member(pencil, INFINITY if not mu1 else mu2 / mu1)
    if member == target:
        return (mu1, mu2)
    return None


def _residual(vec, subspace: linalg.Subspace):
    v = list(vec)
    for row, p in zip(subspace.basis, subspace.pivots):
        if v[p]:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return v


# ---------------------------------------------------------------------------
# conjugacy classes, linear characters, forced degree multisets


@dataclass(frozen=True)
class ClassProfile:
    class_count: int
    classes: tuple[tuple[int, ...], ...]
    linear_character_count: int
    degrees: tuple[int, ...] | None


def conjugacy_classes(rep: MatrixRepresentation):
    """Orbit partition under conjugation, closed over the generator set."""
    gen_ids = [rep.index[g] for g in rep.generators]
    gen_inv_ids = [rep.inverses[i] for i in gen_ids]
    seen = [False] * rep.order
    classes = []
    for start in range(rep.order):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for s, s_inv in zip(gen_ids, gen_inv_ids):
                y = rep.product_index(s, rep.product_index(x, s_inv))
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
                    frontier.append(y)
        classes.append(tuple(sorted(orbit)))
    return tuple(classes)


def derived_subgroup(rep: MatrixRepresentation):
    """All commutators, closed under multiplication (the commutator set is
    conjugation-stable, so this closure is the derived subgroup)."""
    commutators = set()
    for a in range(rep.order):
        a_inv = rep.inverses[a]
        for b in range(rep.order):
            c = rep.product_index(
                rep.product_index(a_inv, rep.inverses[b]), rep.product_index(a, b)
            )
            commutators.add(c)
    members = set(commutators) | {0}
    frontier = list(members)
    while frontier:
        x = frontier.pop()
        for c in commutators:
            y = rep.product_index(x, c)
            if y not in members:
                members.add(y)
                frontier.append(y)
    return members


def _degree_multisets(order: int, count: int, linear: int):
    """All nondecreasing degree lists: `linear` ones plus degrees >= 2 dividing
    the order, squares summing to the order."""
    remaining = count - linear
    target = order - linear
    divs = [d for d in range(2, order + 1) if order % d == 0]
    out = []

    def rec(idx, left, total, acc):
        if left == 0:
            if total == 0:
                out.append(tuple([1] * linear + acc))
            return
        for k in range(idx, len(divs)):
            d = divs[k]
            if d * d > total:
                break
            rec(k, left - 1, total - d * d, acc + [d])

    if remaining == 0:
        if target == 0:
            out.append(tuple([1] * linear))
    else:
        rec(0, remaining, target, [])
    return out


def class_and_degree_profile(rep: MatrixRepresentation) -> ClassProfile:
    if rep.order <= 500:
        rep.build_mult_table()
    classes = conjugacy_classes(rep)
    derived = derived_subgroup(rep)
    linear = rep.order // len(derived)
    candidates = _degree_multisets(rep.order, len(classes), linear)
    degrees = candidates[0] if len(candidates) == 1 else None
    return ClassProfile(
        class_count=len(classes),
        classes=classes,
        linear_character_count=linear,
        degrees=degrees,
    )
