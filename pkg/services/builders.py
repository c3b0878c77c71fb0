"""
Named constructions: the standard coalgebras used as Massey parameters, the
upper-triangular Lie coalgebras, local bases and a handful of test algebras.
"""
import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from services.algebra_defs import (
    Coalgebra,
    DGCAlgebra,
    GradedLieAlgebra,
    LieCoalgebra,
    LocalBaseAlgebra,
    koszul,
    require_valid,
)
from services.errors import InvalidStructureError, MalformedTableError, UsageError
from services.exact_core import to_scalar

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

COALGEBRA_KINDS = ("classical", "one-param", "singular", "pair", "explicit-table")


# ---------------------------------------------------------------------------
# Coalgebras
# ---------------------------------------------------------------------------

def _subset_name(subset: Sequence[int], r: int) -> str:
    labels = [str(i + 1) for i in subset]
    return "f" + ("".join(labels) if r < 10 else "{" + ",".join(labels) + "}")


def _epsilon(k_part: Sequence[int], l_part: Sequence[int], q: Sequence[int]) -> int:
    return sum((q[k] + 1) * (q[l] + 1) for k in k_part for l in l_part if k > l)


def _classical(q: Sequence[int]) -> Coalgebra:
    r = len(q)
    if r < 1:
        raise UsageError("classical coalgebra needs at least one degree")
    subsets: List[Tuple[int, ...]] = []
    for size in range(1, r + 1):
        subsets.extend(itertools.combinations(range(r), size))
    pos = {s: p for p, s in enumerate(subsets)}
    coproduct: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for s in subsets:
        terms = {}
        for size in range(1, len(s)):
            for k_part in itertools.combinations(s, size):
                l_part = tuple(x for x in s if x not in k_part)
                sign = koszul(_epsilon(k_part, l_part, q))
                terms[(pos[k_part], pos[l_part])] = sign * HALF
        if terms:
            coproduct[pos[s]] = terms
    full = pos[tuple(range(r))]
    return Coalgebra(
        names=tuple(_subset_name(s, r) for s in subsets),
        degrees=tuple(sum(q[i] - 1 for i in s) for s in subsets),
        coproduct=coproduct,
        f0=tuple(pos[(i,)] for i in range(r)),
        f1=tuple(range(len(subsets))) if r == 1 else tuple(p for p in range(len(subsets)) if p != full),
    )


def _one_param(order: int) -> Coalgebra:
    coproduct = {}
    for i in range(2, order + 1):
        coproduct[i - 1] = {(k - 1, i - k - 1): -HALF for k in range(1, i)}
    return Coalgebra(
        names=tuple(f"f{i}" for i in range(1, order + 1)),
        degrees=(0,) * order,
        coproduct=coproduct,
        f0=(0,),
        f1=tuple(range(order)),
    )


def _singular(order: int) -> Coalgebra:
    if order < 2:
        raise UsageError("singular coalgebra starts at f2; order must be at least 2", order=order)
    indices = list(range(2, order + 1))
    pos = {i: p for p, i in enumerate(indices)}
    coproduct = {}
    for i in indices:
        terms = {(pos[k], pos[i - k]): -HALF for k in range(2, i - 1)}
        if terms:
            coproduct[pos[i]] = terms
    return Coalgebra(
        names=tuple(f"f{i}" for i in indices),
        degrees=(0,) * len(indices),
        coproduct=coproduct,
        f0=tuple(pos[i] for i in (2, 3) if i in pos),
        f1=tuple(range(len(indices))),
    )


def _pair(order: int) -> Coalgebra:
    """Generators f_i (i >= 1) and phi_i (i >= 2), ordered by weight."""
    names: List[str] = []
    for i in range(1, order + 1):
        names.append(f"f{i}")
        if i >= 2:
            names.append(f"phi{i}")
    pos = {name: p for p, name in enumerate(names)}
    coproduct: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for i in range(2, order + 1):
        coproduct[pos[f"f{i}"]] = {(pos[f"f{k}"], pos[f"f{i - k}"]): -HALF for k in range(1, i)}
        terms: Dict[Tuple[int, int], Fraction] = {}
        for k in range(1, i - 1):
            for key in ((pos[f"f{k}"], pos[f"phi{i - k}"]), (pos[f"phi{i - k}"], pos[f"f{k}"])):
                terms[key] = terms.get(key, Fraction(0)) - HALF
        for k in range(2, i - 1):
            key = (pos[f"phi{k}"], pos[f"phi{i - k}"])
            terms[key] = terms.get(key, Fraction(0)) - HALF
        if terms:
            coproduct[pos[f"phi{i}"]] = terms
    f0 = tuple(pos[n] for n in ("f1", "phi2") if n in pos)
    return Coalgebra(
        names=tuple(names),
        degrees=(0,) * len(names),
        coproduct=coproduct,
        f0=f0,
        f1=tuple(range(len(names))),
    )


def _explicit(q: Sequence[int], coefficients: Mapping, names: Optional[Sequence[str]] = None,
              f0: Optional[Sequence[int]] = None, f1: Optional[Sequence[int]] = None) -> Coalgebra:
    """Coalgebra from raw {q_k, c_k^{ij}} data.

    coefficients maps k -> {(i, j): c}. Input is symmetrized to
    c'^{ij} = 1/2 (c^{ij} + (-1)^{q_i q_j - 1} c^{ji}) and stored as
    d^{ij} = (-1)^{q_i - 1} c'^{ij}.
    """
    n = len(q)
    raw: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for k, terms in coefficients.items():
        for (i, j), c in terms.items():
            c = to_scalar(c)
            if not c:
                continue
            if not all(0 <= x < n for x in (i, j, k)):
                raise MalformedTableError("coefficient index out of range", indices=(i, j, k), size=n)
            if i >= k or j >= k or q[k] != q[i] + q[j] - 1:
                raise InvalidStructureError("coefficient violates the support condition",
                                            indices=(i, j, k), degrees=(q[i], q[j], q[k]))
            raw.setdefault(k, {})[(i, j)] = c
    coproduct: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for k, terms in raw.items():
        keys = set(terms) | {(j, i) for i, j in terms}
        row = {}
        for i, j in keys:
            sym = HALF * (terms.get((i, j), Fraction(0)) + koszul(q[i] * q[j] - 1) * terms.get((j, i), Fraction(0)))
            if sym:
                row[(i, j)] = koszul(q[i] - 1) * sym
        if row:
            coproduct[k] = row
    if f0 is None:
        f0 = tuple(k for k in range(n) if k not in coproduct)
    if f1 is None:
        f1 = tuple(range(n))
    return Coalgebra(
        names=tuple(names) if names is not None else tuple(f"f{k + 1}" for k in range(n)),
        degrees=tuple(x - 1 for x in q),
        coproduct=coproduct,
        f0=tuple(f0),
        f1=tuple(f1),
    )


def build_standard_coalgebra(kind: str, **params) -> Coalgebra:
    """Build one of the named coalgebras and validate it.

    classical: degrees=[q1..qr]; one-param, singular, pair: order=N;
    explicit-table: degrees=[q1..qn], coefficients={k: {(i, j): c}}.
    """
    if kind == "classical":
        coalgebra = _classical(list(params.get("degrees") or [1] * int(params.get("size", 2))))
    elif kind in ("one-param", "singular", "pair"):
        order = int(params.get("order", 0))
        if order < 1:
            raise UsageError("truncation order must be at least 1", order=order)
        coalgebra = {"one-param": _one_param, "singular": _singular, "pair": _pair}[kind](order)
    elif kind == "explicit-table":
        coalgebra = _explicit(params["degrees"], params.get("coefficients", {}), params.get("names"),
                              params.get("f0"), params.get("f1"))
    else:
        raise UsageError("unknown coalgebra kind", kind=kind)
    require_valid(coalgebra)
    logger.debug("built %s coalgebra with %d generators", kind, coalgebra.dim)
    return coalgebra


def upper_triangular_name(i: int, j: int, a: int, b: int, blocks: Sequence[int]) -> str:
    if blocks[i - 1] == 1 and blocks[j - 1] == 1:
        return f"f{i}_{j}"
    return f"f{i}_{j}[{a + 1},{b + 1}]"


def build_upper_triangular_lie_coalgebra(degrees: Sequence[int],
                                         block_sizes: Optional[Sequence[int]] = None) -> LieCoalgebra:
    """Cobracket of the coalgebra dual to strictly upper triangular block matrices.

    Generators f_ij^{ab} sit at entry (a, b) of block (i, j), 1 <= i < j <= r+1,
    with deg f_ij = sum_{l=i}^{j-1} q_l - (j - i). They are dual to -E_ij^{ab}, so
    Delta f_ij = -1/2 sum (f_ik (x) f_kj - (-1)^{deg deg} f_kj (x) f_ik) and the
    defining equations match the upper-triangular ones term by term.
    """
    r = len(degrees)
    if r < 1:
        raise UsageError("upper triangular Lie coalgebra needs r >= 1")
    blocks = list(block_sizes) if block_sizes is not None else [1] * (r + 1)
    if len(blocks) != r + 1 or any(p < 1 for p in blocks):
        raise UsageError("block sizes must be r+1 positive integers", blocks=blocks, r=r)

    keys: List[Tuple[int, int, int, int]] = []
    for span in range(1, r + 1):
        for i in range(1, r + 2 - span):
            j = i + span
            for a in range(blocks[i - 1]):
                for b in range(blocks[j - 1]):
                    keys.append((i, j, a, b))
    pos = {key: p for p, key in enumerate(keys)}
    deg = {key: sum(degrees[key[0] - 1:key[1] - 1]) - (key[1] - key[0]) for key in keys}

    coproduct: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for (i, j, a, b) in keys:
        terms: Dict[Tuple[int, int], Fraction] = {}
        for k in range(i + 1, j):
            for c in range(blocks[k - 1]):
                left, right = (i, k, a, c), (k, j, c, b)
                x, y = pos[left], pos[right]
                terms[(x, y)] = terms.get((x, y), Fraction(0)) - HALF
                terms[(y, x)] = terms.get((y, x), Fraction(0)) + HALF * koszul(deg[left] * deg[right])
        if terms:
            coproduct[pos[(i, j, a, b)]] = terms

    top = [pos[key] for key in keys if key[0] == 1 and key[1] == r + 1]
    coalgebra = LieCoalgebra(
        names=tuple(upper_triangular_name(i, j, a, b, blocks) for i, j, a, b in keys),
        degrees=tuple(deg[key] for key in keys),
        coproduct=coproduct,
        f0=tuple(pos[key] for key in keys if key[1] == key[0] + 1),
        f1=tuple(range(len(keys))) if r == 1 else tuple(p for p in range(len(keys)) if p not in top),
    )
    require_valid(coalgebra)
    return coalgebra


def upper_triangular_positions(coalgebra: LieCoalgebra) -> Dict[Tuple[int, int, int, int], int]:
    """Inverse of upper_triangular_name: (i, j, a, b) -> generator index (a, b zero-based)."""
    out = {}
    for p, name in enumerate(coalgebra.names):
        head, _, entry = name[1:].partition("[")
        i, j = (int(x) for x in head.split("_"))
        if entry:
            a, b = (int(x) - 1 for x in entry.rstrip("]").split(","))
        else:
            a = b = 0
        out[(i, j, a, b)] = p
    return out


# ---------------------------------------------------------------------------
# Lie algebras used throughout the test suite and data files
# ---------------------------------------------------------------------------

def abelian_lie_algebra(n: int) -> GradedLieAlgebra:
    return GradedLieAlgebra(names=tuple(f"e{i}" for i in range(1, n + 1)), degrees=(0,) * n, table={})


def _antisymmetric(brackets: Mapping[Tuple[int, int], Mapping[int, int]]):
    table = {}
    for (i, j), result in brackets.items():
        table[(i, j)] = dict(result)
        table[(j, i)] = {k: -c for k, c in result.items()}
    return table


def heisenberg_lie_algebra() -> GradedLieAlgebra:
    return GradedLieAlgebra(names=("e1", "e2", "e3"), degrees=(0, 0, 0),
                            table=_antisymmetric({(0, 1): {2: 1}}))


def sl2_lie_algebra() -> GradedLieAlgebra:
    """Basis e, f, h with [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return GradedLieAlgebra(names=("e", "f", "h"), degrees=(0, 0, 0),
                            table=_antisymmetric({(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}))


def aff1_lie_algebra() -> GradedLieAlgebra:
    return GradedLieAlgebra(names=("e1", "e2"), degrees=(0, 0), table=_antisymmetric({(0, 1): {1: 1}}))


STANDARD_LIE_ALGEBRAS = {
    "abelian2": lambda: abelian_lie_algebra(2),
    "heisenberg": heisenberg_lie_algebra,
    "sl2": sl2_lie_algebra,
    "aff1": aff1_lie_algebra,
}


# ---------------------------------------------------------------------------
# Exterior DGCA
# ---------------------------------------------------------------------------

def _wedge_sign(s: Sequence[int], t: Sequence[int]) -> int:
    return koszul(sum(1 for x in s for y in t if x > y))


def exterior_algebra(generators: Sequence[str], differential: Optional[Mapping[str, Mapping]] = None) -> DGCAlgebra:
    """Lambda(x1..xn) on degree-one generators; differential given on generators.

    differential maps a generator to {monomial: coefficient} where a monomial
    is a product of generator names written in increasing order ("xy").
    """
    n = len(generators)
    subsets: List[Tuple[int, ...]] = []
    for size in range(n + 1):
        subsets.extend(itertools.combinations(range(n), size))
    names = tuple("".join(generators[i] for i in s) or "1" for s in subsets)
    pos = {s: p for p, s in enumerate(subsets)}
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for s in subsets:
        for t in subsets:
            if set(s) & set(t):
                continue
            union = tuple(sorted(s + t))
            table[(pos[s], pos[t])] = {pos[union]: Fraction(_wedge_sign(s, t))}

    base = DGCAlgebra(names=names, degrees=tuple(len(s) for s in subsets), table=table)
    d_gen: Dict[int, Dict[int, Fraction]] = {}
    for gen, image in (differential or {}).items():
        d_gen[base.index(gen)] = {base.index(m): to_scalar(c) for m, c in image.items()}

    def apply_on_subset(s: Tuple[int, ...]) -> Dict[int, Fraction]:
        # Leibniz over the wedge x_{s1} ... x_{sk}
        out: Dict[int, Fraction] = {}
        for p, g in enumerate(s):
            image = d_gen.get(pos[(g,)], {})
            if not image:
                continue
            before, after = s[:p], s[p + 1:]
            sign = koszul(len(before))
            for m, c in image.items():
                monomial = subsets[m]
                if set(monomial) & (set(before) | set(after)):
                    continue
                left = tuple(sorted(before + monomial))
                full = tuple(sorted(left + after))
                coeff = sign * c * _wedge_sign(before, monomial) * _wedge_sign(left, after)
                out[pos[full]] = out.get(pos[full], Fraction(0)) + coeff
        return {k: v for k, v in out.items() if v}

    full_diff = {}
    for s in subsets:
        image = apply_on_subset(s)
        if image:
            full_diff[pos[s]] = image
    algebra = DGCAlgebra(names=names, degrees=base.degrees, table=table, differential=full_diff)
    require_valid(algebra)
    return algebra


# ---------------------------------------------------------------------------
# Local bases (maximal ideal only)
# ---------------------------------------------------------------------------

def _power_name(var: str, k: int) -> str:
    return var if k == 1 else f"{var}^{k}"


def power_series_base(order: int) -> LocalBaseAlgebra:
    """Maximal ideal of K[t]/(t^{order+1})."""
    if order < 1:
        raise UsageError("truncation order must be at least 1", order=order)
    table = {(a - 1, b - 1): {a + b - 1: 1}
             for a in range(1, order + 1) for b in range(1, order + 1) if a + b <= order}
    return LocalBaseAlgebra(names=tuple(_power_name("t", k) for k in range(1, order + 1)),
                            degrees=(0,) * order, table=table)


def _cusp_name(weight: int) -> str:
    if weight % 2 == 0:
        return _power_name("u", weight // 2)
    a = (weight - 3) // 2
    return "v" if a == 0 else f"{_power_name('u', a)}*v"


def cusp_base(max_weight: int) -> LocalBaseAlgebra:
    """Maximal ideal of K[u,v]/(u^3 - v^2), u of weight 2 and v of weight 3, truncated above max_weight."""
    if max_weight < 2:
        raise UsageError("cusp truncation needs max_weight >= 2", max_weight=max_weight)
    weights = list(range(2, max_weight + 1))
    pos = {w: p for p, w in enumerate(weights)}
    table = {(pos[a], pos[b]): {pos[a + b]: 1} for a in weights for b in weights if a + b <= max_weight}
    return LocalBaseAlgebra(names=tuple(_cusp_name(w) for w in weights), degrees=(0,) * len(weights), table=table)


def _pair_name(a: int, has_u: bool) -> str:
    if not has_u:
        return _power_name("t", a)
    return "u" if a == 0 else f"{_power_name('t', a)}*u"


def pair_base(max_weight: int, relation: Tuple = (1, -1)) -> LocalBaseAlgebra:
    """Maximal ideal of K[t,u]/(a u^2 + b t^2 u), t of weight 1 and u of weight 2.

    The relation is used as u^2 = -(b/a) t^2 u. relation=(2, 1) is 2u^2 + t^2u = 0.
    """
    if max_weight < 1:
        raise UsageError("pair truncation needs max_weight >= 1", max_weight=max_weight)
    ra, rb = (to_scalar(x) for x in relation)
    if ra == 0:
        raise UsageError("relation must contain u^2")
    u_square = -rb / ra
    elements: List[Tuple[int, bool]] = []
    for w in range(1, max_weight + 1):
        elements.append((w, False))
        if w >= 2:
            elements.append((w - 2, True))
    pos = {e: p for p, e in enumerate(elements)}

    def weight(e):
        return e[0] + (2 if e[1] else 0)

    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for x in elements:
        for y in elements:
            if weight(x) + weight(y) > max_weight:
                continue
            a = x[0] + y[0]
            if x[1] and y[1]:
                target, coeff = (a + 2, True), u_square
            else:
                target, coeff = (a, x[1] or y[1]), Fraction(1)
            if coeff and target in pos:
                table[(pos[x], pos[y])] = {pos[target]: coeff}
    return LocalBaseAlgebra(names=tuple(_pair_name(a, u) for a, u in elements),
                            degrees=(0,) * len(elements), table=table)
