"""Built-in instances: the order-42 monomial group with its six-variable skew
family and cubic, dihedral quadric families, the affine-group hypersurfaces
over F_5, F_8, F_9, and the discrete Fourier substitution.

Transcriptions are frozen here once and cross-checked by the test suite
(the displayed skew family, for instance, must reproduce the cubic through
its pfaffian, sign included).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import UnknownFixture
from .fields import QQ, CyclotomicField, ExtensionField
from .polynomials import LinearSubstitution, MonomialAction, SparsePolynomial
from .pfaffians import SkewLinearFamily
from .representations import MatrixRepresentation, enumerate_group

FIXTURE_NAMES = (
    "agl7_cubic",
    "dihedral_quadric",
    "agl5_quadric",
    "agl8_quadric",
    "agl8_fivefold",
    "agl9_quartic",
    "segre_substitution",
)

# frozen content hashes of the exported transcription files, so any edit to a
# transcribed matrix or form is caught and auditable
FIXTURE_CHECKSUMS = {
    "agl7_cubic_cubic.json": "ea0fb95d390020b3bde1a81e61b33ebbce6f10153545c394e89c792a983d671d",
    "agl7_cubic_family.json": "f37a1c842eb75834126a99449a0c700bc8495086561255bdc6e8932a089ae85b",
    "agl7_cubic_group.json": "d94a2fa5d7d76e1facf6a79fdc8d556ba73d0c6f33cc9980ef5ba0f9918674bd",
    "dihedral_quadric_n3_family.json": "e72fcc44f049a7d4cb889c7ab0ad23292fedb001443fa8a2276b0ca9daf2fa33",
    "dihedral_quadric_n3_group.json": "29dfc321d07efcb73e13c110bf19cbd5d8834a4d1e6648d742c66d5131b0b318",
    "agl5_quadric_form1.json": "d4a00635e9e749fd7e0bea461982c5aead900382af17f61f586b91649cdee50e",
    "agl5_quadric_form2.json": "e01ab073e98212bf75cddff9bb1b246c4985b91d5833722275356c7c82f1322e",
    "agl5_quadric_group.json": "e11dc61164225efb791bc3e17e5db7cdca62b96290831fa43027cab5fad52c0b",
    "agl8_quadric_form1.json": "c4b290d43b787d0005540f07aa16d43dff63c56727fffe4803f240181b493853",
    "agl8_quadric_group.json": "1ebd62d627a94ae8fb27502fdfb64ae85e5ce25fc7374e2966f0726f8c419bf7",
    "agl8_fivefold_form1.json": "ff108462b838c0d2f90aef39a8392857f59e5815398b065d57b2854461570efa",
    "agl8_fivefold_group.json": "1ebd62d627a94ae8fb27502fdfb64ae85e5ce25fc7374e2966f0726f8c419bf7",
    "agl9_quartic_form1.json": "98afff4a9288b321e752a91b972a561c273a2c4585d3100479da46be319bba8d",
    "agl9_quartic_form2.json": "22365d1c7b2c7b23694f56e48c8d62779f06db639c85d4d6a0ae927caeb5f72e",
    "agl9_quartic_group.json": "4c84619f13f361e1cf5fd80ef903855c571a0853c493d26be3576f796f79350d",
    "segre_substitution_displayed_form.json": "94b638a2eecedded1e81ef0d6f8ea89643af1c8a238f76aaa74c760e5f27d216",
    "segre_substitution_fermat_restricted.json": "30afce05d5497d944ff0e51fe72e4a00ad8bfba7de926ae4267090fe68623bc3",
    "segre_substitution_substitution.json": "1369bce4b7981476135027f97ad46e37ea5507391e1b385b657a6c5d2853949a",
}

# weight exponents of the diagonal generator on x_1..x_6 (powers of 5 mod 7)
AGL7_EXPONENTS = (1, 5, 4, 6, 2, 3)

# sign convention of the first-row pfaffian expansion for the family below
AGL7_PFAFFIAN_SIGN = -1


def _perm_matrix(field, images):
    """Substitution x_i -> x_images[i] as a matrix (row i has 1 at images[i])."""
    n = len(images)
    rows = []
    for i in range(n):
        row = [field.zero] * n
        row[images[i]] = field.one
        rows.append(tuple(row))
    return tuple(rows)


def _diag_matrix(field, scalars):
    n = len(scalars)
    return tuple(
        tuple(scalars[i] if i == j else field.zero for j in range(n)) for i in range(n)
    )


# ---------------------------------------------------------------------------
# the order-42 example: group, skew family, cubic


@dataclass
class Agl7Fixture:
    field: CyclotomicField
    group: MatrixRepresentation
    g_matrix: tuple
    h_matrix: tuple
    family: SkewLinearFamily
    cubic: SparsePolynomial  # seven variables x1..x6, t
    exponents: tuple[int, ...]
    pfaffian_sign: int
    variable_names: tuple[str, ...]

    def substitution(self, matrix, tag="") -> LinearSubstitution:
        """Coordinate substitution on x1..x6, extended by identity on t."""
        return LinearSubstitution(self.field, matrix, tag).extended(1)

    def cubic_at(self, value) -> SparsePolynomial:
        """Specialize the weight parameter and drop it (six variables)."""
        return self.cubic.substitute_values({6: value}).remove_variable(6)

    def cubic_with_squared_parameter(self, value) -> SparsePolynomial:
        """Substitute t^2 -> value (t occurs only with even exponents)."""
        terms = {}
        for e, c in self.cubic.terms.items():
            k, rem = divmod(e[6], 2)
            if rem:
                raise ValueError("parameter occurs with an odd exponent")
            coeff = c
            for _ in range(k):
                coeff = coeff * value
            key = e[:6]
            terms[key] = terms.get(key, self.field.zero) + coeff
        return SparsePolynomial(6, self.field, terms)

    def family_at(self, value) -> SkewLinearFamily:
        return self.family.specialize([value])


def agl7_cubic_polynomial(field) -> SparsePolynomial:
    """x1^2 x2 + x2^2 x3 + x3^2 x4 + x4^2 x5 + x5^2 x6 + x1 x6^2
    + t^2 (x1 x3 x5 + x2 x4 x6), in seven variables."""
    one = field.one
    terms = {}
    for i, j in ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5)):
        e = [0] * 7
        e[i], e[j] = 2, 1
        terms[tuple(e)] = one
    e = [0] * 7
    e[0], e[5] = 1, 2
    terms[tuple(e)] = one
    for triple in ((0, 2, 4), (1, 3, 5)):
        e = [0] * 7
        for i in triple:
            e[i] = 1
        e[6] = 2
        terms[tuple(e)] = one
    return SparsePolynomial(7, field, terms)


def agl7_family(field) -> SkewLinearFamily:
    """The six-variable skew family (upper triangle; skew completion is forced,
    two displayed lower entries are inconsistent and are ignored)."""
    lam = SparsePolynomial.variable(1, field, 0)
    one = SparsePolynomial.constant(1, field, field.one)
    upper = {
        (0, 1): {3: -lam},
        (0, 2): {1: -one},
        (0, 4): {5: one},
        (0, 5): {2: -lam},
        (1, 2): {4: lam},
        (1, 3): {2: one},
        (1, 5): {0: -one},
        (2, 3): {5: -lam},
        (2, 4): {3: -one},
        (3, 4): {0: lam},
        (3, 5): {4: one},
        (4, 5): {1: -lam},
    }
    return SkewLinearFamily.from_upper_triangle(field, 6, 6, upper, params=("t",))


@lru_cache(maxsize=1)
def agl7_cubic() -> Agl7Fixture:
    field = CyclotomicField(7)
    g = _diag_matrix(field, [field.zeta_power(a) for a in AGL7_EXPONENTS])
    h_rows = []
    for i in range(6):
        row = [field.zero] * 6
        row[(i + 1) % 6] = -field.one  # x_i -> -x_(i+1), cyclically
        h_rows.append(tuple(row))
    h = tuple(h_rows)
    group = enumerate_group(field, [g, h], names=("g", "h"))
    return Agl7Fixture(
        field=field,
        group=group,
        g_matrix=g,
        h_matrix=h,
        family=agl7_family(field),
        cubic=agl7_cubic_polynomial(field),
        exponents=AGL7_EXPONENTS,
        pfaffian_sign=AGL7_PFAFFIAN_SIGN,
        variable_names=("x1", "x2", "x3", "x4", "x5", "x6", "t"),
    )


# ---------------------------------------------------------------------------
# dihedral quadric families


@dataclass
class DihedralFixture:
    n: int
    field: CyclotomicField
    group: MatrixRepresentation
    rotation: tuple
    reflection: tuple
    swap: tuple  # exchanges the two 2-dimensional summands
    family: SkewLinearFamily
    variable_names: tuple[str, ...]


def dihedral_plane_rep(field, n: int, k: int = 1):
    """Two-dimensional dihedral representation: rotation diag(z^k, z^-k),
    reflection the coordinate swap."""
    rot = _diag_matrix(field, [field.zeta_power(k), field.zeta_power(n - k)])
    ref = _perm_matrix(field, (1, 0))
    return rot, ref


@lru_cache(maxsize=None)
def dihedral_quadric(n: int) -> DihedralFixture:
    if n < 3:
        raise UnknownFixture("dihedral parameter must be at least 3")
    field = CyclotomicField(n)
    rot2, ref2 = dihedral_plane_rep(field, n)
    zero2 = tuple(tuple(field.zero for _ in range(2)) for _ in range(2))
    rotation = _block_diag(rot2, rot2, zero2)
    reflection = _block_diag(ref2, ref2, zero2)
    swap = _perm_matrix(field, (2, 3, 0, 1))
    group = enumerate_group(field, [rotation, reflection], names=("r", "s"))
    one = SparsePolynomial.constant(0, field, field.one)
    upper = {
        (0, 2): {0: one},
        (0, 3): {1: one},
        (1, 2): {2: one},
        (1, 3): {3: one},
    }
    family = SkewLinearFamily.from_upper_triangle(field, 4, 4, upper)
    return DihedralFixture(
        n=n,
        field=field,
        group=group,
        rotation=rotation,
        reflection=reflection,
        swap=swap,
        family=family,
        variable_names=("x11", "x12", "x21", "x22"),
    )


def _block_diag(a, b, zero_block):
    top = [tuple(row) + tuple(zrow) for row, zrow in zip(a, zero_block)]
    bottom = [tuple(zrow) + tuple(row) for zrow, row in zip(zero_block, b)]
    return tuple(top + bottom)


# ---------------------------------------------------------------------------
# affine-group hypersurfaces over F_5, F_8, F_9


@dataclass
class PermutationHypersurface:
    name: str
    field: object
    group: MatrixRepresentation
    generators: tuple
    generator_names: tuple[str, ...]
    forms: tuple[SparsePolynomial, ...]
    variable_names: tuple[str, ...]


def power_sum(field, nvars: int, power: int) -> SparsePolynomial:
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = power
        terms[tuple(e)] = field.one
    return SparsePolynomial(nvars, field, terms)


@lru_cache(maxsize=1)
def agl5_quadric() -> PermutationHypersurface:
    # variables indexed by F_5 = {0,..,4}; x -> x + 1 and x -> 2x generate
    translate = _perm_matrix(QQ, tuple((a + 1) % 5 for a in range(5)))
    multiply = _perm_matrix(QQ, tuple(2 * a % 5 for a in range(5)))
    group = enumerate_group(QQ, [translate, multiply], names=("t", "m"))
    return PermutationHypersurface(
        name="agl5_quadric",
        field=QQ,
        group=group,
        generators=(translate, multiply),
        generator_names=("t", "m"),
        forms=(power_sum(QQ, 5, 2), power_sum(QQ, 5, 1)),
        variable_names=tuple(f"x{i+1}" for i in range(5)),
    )


@lru_cache(maxsize=1)
def gf8() -> ExtensionField:
    return ExtensionField(2, 3, defining=(1, 1, 0, 1))  # t^3 + t + 1


def agl8_abstract_actions():
    """The degree-seven monomial action indexed by the nonzero elements of
    F_8 (encodings 1..7): multiplication permutes the indices, translation
    twists by signs (-1)^trace(j)."""
    F8 = gf8()
    codes = list(range(1, 8))
    pos = {c: i for i, c in enumerate(codes)}
    t = F8.decode(2)
    mult_perm = tuple(pos[F8.encode(F8.mul(t, F8.decode(c)))] for c in codes)
    signs = tuple(Fraction(-1) ** F8.trace(F8.decode(c)) for c in codes)
    mult = MonomialAction(perm=mult_perm, scalars=(Fraction(1),) * 7)
    translate = MonomialAction(perm=tuple(range(7)), scalars=signs)
    return mult, translate


def _monomial_matrix(field, action: MonomialAction):
    n = len(action.perm)
    rows = []
    for i in range(n):
        row = [field.zero] * n
        row[action.perm[i]] = action.scalars[i]
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=1)
def agl8_quadric() -> PermutationHypersurface:
    mult, translate = agl8_abstract_actions()
    gm = _monomial_matrix(QQ, mult)
    gt = _monomial_matrix(QQ, translate)
    group = enumerate_group(QQ, [gm, gt], names=("m", "t"))
    return PermutationHypersurface(
        name="agl8_quadric",
        field=QQ,
        group=group,
        generators=(gm, gt),
        generator_names=("m", "t"),
        forms=(power_sum(QQ, 7, 2),),
        variable_names=tuple(f"x{i+1}" for i in range(7)),
    )


FANO_TRIPLES = (
    (1, 2, 6),
    (1, 3, 4),
    (1, 5, 7),
    (2, 3, 7),
    (2, 4, 5),
    (3, 5, 6),
    (4, 6, 7),
)


@lru_cache(maxsize=1)
def agl8_fivefold() -> PermutationHypersurface:
    terms = {}
    for triple in FANO_TRIPLES:
        e = [0] * 7
        for v in triple:
            e[v - 1] = 1
        terms[tuple(e)] = Fraction(1)
    cubic = SparsePolynomial(7, QQ, terms)
    quadric = agl8_quadric()
    return PermutationHypersurface(
        name="agl8_fivefold",
        field=QQ,
        group=quadric.group,
        generators=quadric.generators,
        generator_names=quadric.generator_names,
        forms=(cubic,),
        variable_names=tuple(f"x{i+1}" for i in range(7)),
    )


@lru_cache(maxsize=1)
def gf9() -> ExtensionField:
    return ExtensionField(3, 2, defining=(1, 0, 1))  # t^2 + 1


@lru_cache(maxsize=1)
def agl9_quartic() -> PermutationHypersurface:
    F9 = gf9()
    translate_images = tuple(
        F9.encode(F9.add(F9.decode(c), F9.one)) for c in range(9)
    )
    gen = F9.add((0, 1), F9.one)  # t + 1 generates the multiplicative group
    mult_images = tuple(F9.encode(F9.mul(gen, F9.decode(c))) for c in range(9))
    translate = _perm_matrix(QQ, translate_images)
    multiply = _perm_matrix(QQ, mult_images)
    group = enumerate_group(QQ, [translate, multiply], names=("t", "m"))
    return PermutationHypersurface(
        name="agl9_quartic",
        field=QQ,
        group=group,
        generators=(translate, multiply),
        generator_names=("t", "m"),
        forms=(power_sum(QQ, 9, 4), power_sum(QQ, 9, 1)),
        variable_names=tuple(f"x{i+1}" for i in range(9)),
    )


# ---------------------------------------------------------------------------
# discrete Fourier substitution and the restricted Fermat cubic


@dataclass
class SegreFixture:
    field: CyclotomicField
    substitution: LinearSubstitution  # z_i -> sum_j zeta^(i j) x_j
    sum_linear: SparsePolynomial
    sum_cubes: SparsePolynomial
    displayed_form: SparsePolynomial  # six variables
    relabel: tuple[int, ...]  # x1 -> x4 -> x6 -> x1
    fermat_restricted: SparsePolynomial  # six variables over Q


@lru_cache(maxsize=1)
def segre_substitution() -> SegreFixture:
    field = CyclotomicField(7)
    fourier = LinearSubstitution(
        field,
        [[field.zeta_power(i * j) for j in range(7)] for i in range(7)],
        "fourier",
    )
    sum_linear = power_sum(field, 7, 1)
    sum_cubes = power_sum(field, 7, 3)

    def mono(spec):
        e = [0] * 6
        for idx, power in spec:
            e[idx - 1] = power
        return tuple(e)

    one, two = field.one, field.from_int(2)
    displayed = SparsePolynomial(
        6,
        field,
        {
            mono([(2, 2), (3, 1)]): one,
            mono([(1, 1), (3, 2)]): one,
            mono([(1, 1), (2, 1), (4, 1)]): two,
            mono([(1, 2), (5, 1)]): one,
            mono([(4, 1), (5, 2)]): one,
            mono([(4, 2), (6, 1)]): one,
            mono([(3, 1), (5, 1), (6, 1)]): two,
            mono([(2, 1), (6, 2)]): one,
        },
    )
    # x1 -> x4 -> x6 -> x1, other variables fixed
    relabel = (3, 1, 2, 5, 4, 0)

    cubes6 = power_sum(QQ, 6, 3)
    total = SparsePolynomial(
        6, QQ, {tuple(1 if k == i else 0 for k in range(6)): QQ.one for i in range(6)}
    )
    fermat = cubes6 - total * total * total
    return SegreFixture(
        field=field,
        substitution=fourier,
        sum_linear=sum_linear,
        sum_cubes=sum_cubes,
        displayed_form=displayed,
        relabel=relabel,
        fermat_restricted=fermat,
    )


# ---------------------------------------------------------------------------
# registry


def parse_fixture_name(name: str):
    """'dihedral_quadric:n=3' -> ('dihedral_quadric', {'n': 3})."""
    if ":" not in name:
        return name, {}
    base, _, rest = name.partition(":")
    args = {}
    for piece in rest.split(","):
        key, _, value = piece.partition("=")
        args[key.strip()] = int(value)
    return base, args


def load_fixture(name: str):
    base, args = parse_fixture_name(name)
    if base == "agl7_cubic":
        return agl7_cubic()
    if base == "dihedral_quadric":
        return dihedral_quadric(args.get("n", 3))
    if base == "agl5_quadric":
        return agl5_quadric()
    if base == "agl8_quadric":
        return agl8_quadric()
    if base == "agl8_fivefold":
        return agl8_fivefold()
    if base == "agl9_quartic":
        return agl9_quartic()
    if base == "segre_substitution":
        return segre_substitution()
    raise UnknownFixture(f"no fixture named {name!r}")


def export_fixture(name: str, directory) -> list[str]:
    """Write the files other commands consume (group, family, polynomial
    JSON); returns the written paths."""
    import json
    from pathlib import Path

    from . import io as fio

    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    base, args = parse_fixture_name(name)
    fixture = load_fixture(name)
    stem = base if not args else base + "_" + "_".join(f"{k}{v}" for k, v in args.items())
    written = {}

    def emit(kind: str, doc: dict, note: str):
        doc = dict(doc)
        doc["note"] = note
        path = directory / f"{stem}_{kind}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        written[str(path)] = fio.content_hash(doc)

    if base == "agl7_cubic":
        emit(
            "group",
            fio.group_to_json(fixture.field, [fixture.g_matrix, fixture.h_matrix], ("g", "h")),
            "order-42 monomial group on six coordinates over Q(zeta_7)",
        )
        emit(
            "family",
            fio.family_to_json(fixture.family, fixture.variable_names[:6]),
            "six-by-six skew family, weight parameter t, invariant under the group",
        )
        emit(
            "cubic",
            fio.polynomial_to_json(fixture.cubic, fixture.variable_names),
            "the invariant cubic; the family pfaffian equals -t times this form",
        )
    elif base == "dihedral_quadric":
        emit(
            "group",
            fio.group_to_json(fixture.field, [fixture.rotation, fixture.reflection], ("r", "s")),
            f"dihedral group of order {2 * fixture.n} on a four-dimensional sum of two planes",
        )
        emit(
            "family",
            fio.family_to_json(fixture.family, fixture.variable_names),
            "four-by-four block skew family from the tensor product of the planes",
        )
    elif base in ("agl5_quadric", "agl8_quadric", "agl8_fivefold", "agl9_quartic"):
        emit(
            "group",
            fio.group_to_json(fixture.field, list(fixture.generators), fixture.generator_names),
            f"affine permutation-type action of order {fixture.group.order}",
        )
        for k, form in enumerate(fixture.forms):
            emit(
                f"form{k + 1}",
                fio.polynomial_to_json(form, fixture.variable_names),
                "defining form, invariant under the group action",
            )
    elif base == "segre_substitution":
        emit(
            "substitution",
            {
                "field": fixture.field.descriptor(),
                "matrix": fio.matrix_to_json(fixture.field, fixture.substitution.matrix),
            },
            "discrete Fourier substitution on seven coordinates",
        )
        emit(
            "displayed_form",
            fio.polynomial_to_json(fixture.displayed_form),
            "the six-variable cubic obtained from the sum of cubes",
        )
        emit(
            "fermat_restricted",
            fio.polynomial_to_json(fixture.fermat_restricted),
            "sum of six cubes minus the cube of the sum",
        )
    else:
        raise UnknownFixture(f"no exporter for {name!r}")
    return sorted(written)
