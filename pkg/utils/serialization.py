"""
JSON in and out.

Structure files:
    {"kind": "lie" | "dgla" | "assoc-comm" | "local-base" | "dgca" | "coalgebra" | "lie-coalgebra",
     "basis": [{"name": str, "degree": int}],
     "table": [{"left": str, "right": str, "result": {str: "p/q"}}],
     "filtration": {"F0": [str], "F1": [str]},
     "differential": [{"source": str, "result": {str: "p/q"}}]}

For coalgebras a table entry {"left": f_i, "right": f_j, "result": {f_k: d}}
means Delta f_k contains d f_i (x) f_j. A missing reversed entry is filled in
by the symmetry of the structure; given entries are taken literally.

Any structure slot may instead hold {"builder": name, ...params} or a path
relative to the query file. Rationals are always written as "p/q".
"""
import json
import logging
import os
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional

from services import builders
from services.algebra_defs import (
    AssocCommAlgebra,
    Coalgebra,
    DGCAlgebra,
    FiniteDGLA,
    GradedLieAlgebra,
    LieCoalgebra,
    LocalBaseAlgebra,
    koszul,
)
from services.ce_complex import Cochain
from services.errors import AlgebraError, InputNotFoundError, SchemaError
from services.exact_core import to_scalar

logger = logging.getLogger(__name__)

STRUCTURE_KINDS = ("lie", "dgla", "assoc-comm", "local-base", "dgca", "coalgebra", "lie-coalgebra")


def rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(value) -> Fraction:
    try:
        return to_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise SchemaError("not an exact rational", value=value) from e


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def dumps(document) -> str:
    return json.dumps(to_jsonable(document), indent=2, ensure_ascii=False) + "\n"


def read_json(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        raise InputNotFoundError("input file not found", path=path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError("input is not valid JSON", path=path, line=e.lineno) from e


def _resolve(spec, base_dir: str) -> Dict[str, Any]:
    if isinstance(spec, str):
        return read_json(os.path.join(base_dir, spec))
    if isinstance(spec, dict):
        return spec
    raise SchemaError("expected a file name or an inline object", got=type(spec).__name__)


def _require(doc: Mapping, key: str):
    if key not in doc:
        raise SchemaError("missing required field", field=key)
    return doc[key]


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------

def _basis(doc: Mapping):
    basis = _require(doc, "basis")
    try:
        names = tuple(str(b["name"]) for b in basis)
        degrees = tuple(int(b.get("degree", 0)) for b in basis)
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError("basis entries need a name and an integer degree") from e
    return names, degrees


def _index(names, name) -> int:
    try:
        return names.index(name)
    except ValueError:
        raise SchemaError("unknown basis element", name=name) from None


def _algebra_table(doc: Mapping, names, degrees, symmetry: int):
    table: Dict[tuple, Dict[int, Fraction]] = {}
    for entry in doc.get("table", []):
        try:
            i, j = _index(names, entry["left"]), _index(names, entry["right"])
            result = {_index(names, k): parse_rational(c) for k, c in entry["result"].items()}
        except (KeyError, TypeError, AttributeError) as e:
            raise SchemaError("table entries need left, right and result") from e
        table[(i, j)] = result
    for (i, j), result in list(table.items()):
        if (j, i) not in table:
            sign = symmetry * koszul(degrees[i] * degrees[j])
            table[(j, i)] = {k: sign * c for k, c in result.items()}
    return table


def _coalgebra_table(doc: Mapping, names, degrees, symmetry: int):
    coproduct: Dict[int, Dict[tuple, Fraction]] = {}
    for entry in doc.get("table", []):
        try:
            i, j = _index(names, entry["left"]), _index(names, entry["right"])
            for k, c in entry["result"].items():
                coproduct.setdefault(_index(names, k), {})[(i, j)] = parse_rational(c)
        except (KeyError, TypeError, AttributeError) as e:
            raise SchemaError("table entries need left, right and result") from e
    for k, terms in coproduct.items():
        for (i, j), c in list(terms.items()):
            if (j, i) not in terms:
                terms[(j, i)] = symmetry * koszul(degrees[i] * degrees[j]) * c
    return coproduct


def _differential(doc: Mapping, names):
    out = {}
    for entry in doc.get("differential", []):
        try:
            out[_index(names, entry["source"])] = {_index(names, k): parse_rational(c)
                                                   for k, c in entry["result"].items()}
        except (KeyError, TypeError, AttributeError) as e:
            raise SchemaError("differential entries need source and result") from e
    return out


def _filtration(doc: Mapping, names, default_f0, default_f1):
    filtration = doc.get("filtration", {})
    f0 = filtration.get("F0", filtration.get("Q0"))
    f1 = filtration.get("F1", filtration.get("Q1"))
    f0 = default_f0 if f0 is None else tuple(_index(names, n) for n in f0)
    f1 = default_f1 if f1 is None else tuple(_index(names, n) for n in f1)
    return f0, f1


def _from_builder(doc: Mapping):
    name = doc["builder"]
    if name in builders.STANDARD_LIE_ALGEBRAS:
        return builders.STANDARD_LIE_ALGEBRAS[name]()
    if name == "abelian":
        return builders.abelian_lie_algebra(int(_require(doc, "dimension")))
    if name in builders.COALGEBRA_KINDS:
        params = {k: v for k, v in doc.items() if k != "builder"}
        return builders.build_standard_coalgebra(name, **params)
    if name == "upper-triangular":
        return builders.build_upper_triangular_lie_coalgebra(_require(doc, "degrees"), doc.get("blocks"))
    if name == "exterior":
        return builders.exterior_algebra(_require(doc, "generators"), doc.get("differential"))
    if name == "power-series":
        return builders.power_series_base(int(_require(doc, "order")))
    if name == "cusp":
        return builders.cusp_base(int(_require(doc, "max_weight")))
    if name == "pair-base":
        return builders.pair_base(int(_require(doc, "max_weight")), tuple(doc.get("relation", (1, -1))))
    raise SchemaError("unknown builder", builder=name)


def structure_from_dict(doc: Mapping):
    if "builder" in doc:
        return _from_builder(doc)
    kind = _require(doc, "kind")
    if kind not in STRUCTURE_KINDS:
        raise SchemaError("unknown structure kind", kind=kind)
    names, degrees = _basis(doc)
    if kind in ("lie", "dgla"):
        table = _algebra_table(doc, names, degrees, -1)
        if kind == "dgla":
            return FiniteDGLA(names=names, degrees=degrees, table=table, differential=_differential(doc, names))
        return GradedLieAlgebra(names=names, degrees=degrees, table=table)
    if kind in ("assoc-comm", "local-base", "dgca"):
        table = _algebra_table(doc, names, degrees, 1)
        if kind == "dgca":
            return DGCAlgebra(names=names, degrees=degrees, table=table, differential=_differential(doc, names))
        cls = LocalBaseAlgebra if kind == "local-base" else AssocCommAlgebra
        return cls(names=names, degrees=degrees, table=table)
    symmetry = 1 if kind == "coalgebra" else -1
    coproduct = _coalgebra_table(doc, names, degrees, symmetry)
    f0, f1 = _filtration(doc, names, tuple(k for k in range(len(names)) if k not in coproduct),
                         tuple(range(len(names))))
    cls = Coalgebra if kind == "coalgebra" else LieCoalgebra
    return cls(names=names, degrees=degrees, coproduct=coproduct, f0=f0, f1=f1)


def load_structure(spec, base_dir: str = "."):
    return structure_from_dict(_resolve(spec, base_dir))


# ---------------------------------------------------------------------------
# Cochains
# ---------------------------------------------------------------------------

def cochain_from_dict(g: GradedLieAlgebra, doc: Mapping) -> Cochain:
    arity = int(_require(doc, "arity"))
    terms = {}
    for entry in doc.get("terms", []):
        try:
            args = tuple(_index(g.names, a) for a in entry["args"])
            value = {_index(g.names, k): parse_rational(c) for k, c in entry["value"].items()}
        except (KeyError, TypeError, AttributeError) as e:
            raise SchemaError("cochain terms need args and value") from e
        if args in terms:
            raise SchemaError("repeated cochain argument tuple", args=entry["args"])
        terms[args] = value
    try:
        return Cochain.from_terms(g, arity, terms, optional_int(doc, "internal_degree") or 0)
    except AlgebraError:
        raise
    except (KeyError, IndexError) as e:
        raise SchemaError("cochain arguments do not fit the Lie algebra") from e


def load_cochain(g: GradedLieAlgebra, spec, base_dir: str = ".") -> Cochain:
    return cochain_from_dict(g, _resolve(spec, base_dir))


def cochain_to_dict(phi: Cochain) -> Dict[str, Any]:
    names = phi.parent.names
    grouped: Dict[tuple, Dict[str, Fraction]] = {}
    for args, k, c in phi.terms():
        grouped.setdefault(args, {})[names[k]] = c
    return {"arity": phi.arity,
            "internal_degree": phi.internal_degree,
            "terms": [{"args": [names[a] for a in args], "value": value} for args, value in grouped.items()]}


def coordinates(values) -> list:
    try:
        return [parse_rational(v) for v in values]
    except TypeError as e:
        raise SchemaError("class coordinates must be a list of rationals") from e


def query_dir(path: str) -> str:
    return os.path.dirname(os.path.abspath(path))


def optional_int(doc: Mapping, key: str) -> Optional[int]:
    value = doc.get(key)
    if value is None:
        return None
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise SchemaError("expected an integer", field=key) from e
