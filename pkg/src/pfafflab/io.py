"""JSON formats for fields, polynomials, groups and skew families, plus the
content-addressed disk cache.

Coefficients serialize as rational strings ("3/2") or, for irrational
cyclotomic values, arrays of rational strings in the power basis.  All
emitted JSON is canonical (sorted keys, fixed separators) so content hashes
are stable.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .errors import FixtureCorrupt
from .fields import field_from_descriptor
from .pfaffians import SkewLinearFamily
from .polynomials import SparsePolynomial

CACHE_ENV_VAR = "PFAFFLAB_CACHE_DIR"


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def content_hash(obj) -> str:
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()


# ---------------------------------------------------------------------------
# coefficients and matrices


def coefficient_to_json(field, value):
    return field.format(value)


def coefficient_from_json(field, data):
    return field.parse(data)


def matrix_to_json(field, matrix):
    return [[coefficient_to_json(field, x) for x in row] for row in matrix]


def matrix_from_json(field, data):
    return tuple(tuple(coefficient_from_json(field, x) for x in row) for row in data)


# ---------------------------------------------------------------------------
# polynomials


def polynomial_to_json(f: SparsePolynomial, names=None) -> dict:
    doc = {
        "field": f.field.descriptor(),
        "nvars": f.nvars,
        "terms": [
            {"exp": list(e), "coeff": coefficient_to_json(f.field, c)}
            for e, c in f.sorted_terms()
        ],
    }
    if names:
        doc["vars"] = list(names)
    return doc


def polynomial_from_json(doc: dict) -> SparsePolynomial:
    field = field_from_descriptor(doc["field"])
    nvars = int(doc["nvars"])
    terms = {}
    for item in doc["terms"]:
        exps = tuple(int(x) for x in item["exp"])
        terms[exps] = coefficient_from_json(field, item["coeff"])
    return SparsePolynomial(nvars, field, terms)


# ---------------------------------------------------------------------------
# groups


def group_to_json(field, generators, names) -> dict:
    desc = field.descriptor()
    if desc.get("field") == "cyclotomic":
        field_doc = {"cyclotomic": desc["conductor"]}
    elif desc.get("field") == "prime":
        field_doc = {"prime": desc["p"]}
    else:
        field_doc = {"field": "rational"}
    return {
        "field": field_doc,
        "dim": len(generators[0]),
        "generators": [matrix_to_json(field, g) for g in generators],
        "names": list(names),
    }


def group_from_json(doc: dict):
    field = field_from_descriptor(doc["field"])
    generators = tuple(matrix_from_json(field, g) for g in doc["generators"])
    names = tuple(doc.get("names") or (f"g{k}" for k in range(len(generators))))
    dim = int(doc["dim"])
    for g in generators:
        if len(g) != dim:
            raise FixtureCorrupt("generator size differs from declared dimension")
    return field, generators, names


# ---------------------------------------------------------------------------
# skew families


def _entry_to_json(field, poly: SparsePolynomial):
    if not poly:
        return "0"
    if list(poly.terms) == [(0,) * poly.nvars]:
        return coefficient_to_json(field, poly.terms[(0,) * poly.nvars])
    return [
        {"exp": list(e), "coeff": coefficient_to_json(field, c)}
        for e, c in poly.sorted_terms()
    ]


def _entry_from_json(field, nparams: int, data) -> SparsePolynomial:
    if isinstance(data, list) and data and isinstance(data[0], dict):
        terms = {
            tuple(int(x) for x in item["exp"]): coefficient_from_json(field, item["coeff"])
            for item in data
        }
        return SparsePolynomial(nparams, field, terms)
    value = coefficient_from_json(field, data)
    if not value:
        return SparsePolynomial.zero(nparams, field)
    return SparsePolynomial.constant(nparams, field, value)


def family_to_json(fam: SkewLinearFamily, var_names=None) -> dict:
    names = list(var_names) if var_names else [f"x{i+1}" for i in range(fam.nvars)]
    names += list(fam.params)
    return {
        "N": fam.size,
        "vars": names,
        "field": fam.field.descriptor(),
        "B": [
            [[_entry_to_json(fam.field, x) for x in row] for row in b]
            for b in fam.coefficients
        ],
    }


def family_from_json(doc: dict) -> SkewLinearFamily:
    field = field_from_descriptor(doc["field"])
    mats = doc["B"]
    nvars = len(mats)
    names = doc.get("vars") or []
    params = tuple(names[nvars:])
    nparams = len(params)
    coefficient_matrices = [
        [[_entry_from_json(field, nparams, x) for x in row] for row in b] for b in mats
    ]
    return SkewLinearFamily(field, int(doc["N"]), coefficient_matrices, params)


# ---------------------------------------------------------------------------
# enumeration serialization and the disk cache


def enumeration_to_json(rep) -> dict:
    return {
        "field": rep.field.descriptor(),
        "dim": rep.dim,
        "generators": [matrix_to_json(rep.field, g) for g in rep.generators],
        "elements": [matrix_to_json(rep.field, m) for m in rep.elements],
        "words": [list(w) for w in rep.words],
        "names": list(rep.generator_names),
    }


def enumeration_from_json(doc: dict):
    from .representations import MatrixRepresentation, matrix_key
    from . import linalg

    field = field_from_descriptor(doc["field"])
    elements = [matrix_from_json(field, m) for m in doc["elements"]]
    words = [tuple(w) for w in doc["words"]]
    index = {matrix_key(m): i for i, m in enumerate(elements)}
    generators = tuple(matrix_from_json(field, g) for g in doc["generators"])
    if not elements or matrix_key(elements[0]) not in index:
        raise FixtureCorrupt("cached enumeration is empty")
    inverses = []
    for m in elements:
        inv = linalg.inverse(m, field)
        inverses.append(index[matrix_key(inv)])
    squares = [index[matrix_key(linalg.mat_mul(m, m))] for m in elements]
    return MatrixRepresentation(
        field=field,
        dim=int(doc["dim"]),
        generators=generators,
        generator_names=tuple(doc["names"]),
        elements=elements,
        words=words,
        index=index,
        inverses=inverses,
        squares=squares,
    )


class DiskCache:
    """Content-addressed JSON store; a missing root disables caching."""

    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_environment(cls) -> "DiskCache":
        return cls(os.environ.get(CACHE_ENV_VAR))

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def path_for(self, key: str, suffix: str = ".json") -> Path | None:
        return self.root / f"{key}{suffix}" if self.root else None

    def get(self, key: str):
        path = self.path_for(key)
        if path is None or not path.exists():
            return None
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, key: str, obj) -> None:
        path = self.path_for(key)
        if path is None:
            return
        path.write_text(canonical_dumps(obj))


def cached_enumerate_group(field, generators, names, cache: DiskCache | None = None, cap: int = 10_000):
    """Enumeration cache keyed by the content hash of the group file."""
    from .representations import enumerate_group

    doc = group_to_json(field, generators, names)
    key = "group-" + content_hash(doc)
    if cache is not None and cache.enabled:
        stored = cache.get(key)
        if stored is not None:
            rep = enumeration_from_json(stored)
            if rep.order >= 1:
                return rep
    rep = enumerate_group(field, generators, names, cap=cap)
    if cache is not None and cache.enabled:
        cache.put(key, enumeration_to_json(rep))
    return rep
