"""
Massey products in the cohomology of a graded commutative DGA.

Classical and matric products use the upper-triangular defining systems

    d alpha_ij = sum_{i<k<j} (-1)^{|alpha_ik|} alpha_ik alpha_kj,

with the product class taken from the same sum at (1, r+1). The Lie
coalgebra route runs the general coalgebra search with A's product in the
place of the bracket.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from agents.massey_dgla_agent import (
    ClassAssignment,
    MasseyResult,
    coalgebra_stages,
    stage_equations,
)
from agents.stage_search import INITIAL, SOLVE, TARGET, Stage, StageTerm, run_stages
from services.algebra_defs import DGCAlgebra, LieCoalgebra, koszul, require_valid
from services.builders import upper_triangular_positions
from services.ce_complex import TableComplex
from services.errors import ClassCoordinateError, DegreeMismatchError, DimensionMismatchError, UsageError
from services.exact_core import Vector, vector, zero_vector

try:
    import config as cfg  # type: ignore
except Exception:
    cfg = None

SEARCH_MODE = getattr(cfg, "SEARCH_MODE", "greedy")

logger = logging.getLogger(__name__)

ClassInput = Tuple[int, Sequence]


@dataclass
class DefiningSystemDGCA:
    """alpha values in A, keyed by entry key (a1_3, a1_2[1,2]) or by Lie coalgebra generator index."""

    algebra: DGCAlgebra
    alpha: Dict[object, Vector]
    coalgebra: Optional[LieCoalgebra] = None


def entry_key(i: int, j: int, a: int = 0, b: int = 0, blocks: Optional[Sequence[int]] = None) -> str:
    if blocks is None or (blocks[i - 1] == 1 and blocks[j - 1] == 1):
        return f"a{i}_{j}"
    return f"a{i}_{j}[{a + 1},{b + 1}]"


def dgca_symbol(key: str) -> str:
    head, _, entry = key[1:].partition("[")
    i, j = head.split("_")
    label = f"α{i}{j}" if len(i) == 1 and len(j) == 1 else f"α{i},{j}"
    return label + (f"[{entry}" if entry else "")


def _window_degree(q: Sequence[int], i: int, j: int) -> int:
    return sum(q[i - 1:j - 1]) - (j - i - 1)


def _class_coordinates(ambient: TableComplex, degree: int, coords, what: str) -> Vector:
    space = ambient.cohomology(degree)
    coords = vector(coords)
    if len(coords) != space.dimension:
        raise ClassCoordinateError("class coordinates do not match the cohomology dimension",
                                   where=what, degree=degree, expected=space.dimension, got=len(coords))
    return coords


def _upper_triangular_stages(ambient: TableComplex, q: Sequence[int], blocks: Sequence[int],
                             entries: Mapping[Tuple[int, int, int], Vector],
                             target: Optional[Mapping[Tuple[int, int], Vector]]) -> List[Stage]:
    """entries: (i, a, b) -> class coordinates of a_i[a, b]; target: (a, b) -> coordinates of b[a, b]."""
    r = len(q)
    stages: List[Stage] = []
    for span in range(1, r + 1):
        for i in range(1, r + 2 - span):
            j = i + span
            degree = _window_degree(q, i, j)
            for a in range(blocks[i - 1]):
                for b in range(blocks[j - 1]):
                    key = entry_key(i, j, a, b, blocks)
                    if span == 1:
                        stages.append(Stage(key, degree, INITIAL, (), entries[(i, a, b)]))
                        continue
                    terms = []
                    for k in range(i + 1, j):
                        sign = koszul(_window_degree(q, i, k))
                        for c in range(blocks[k - 1]):
                            terms.append(StageTerm(Fraction(sign), entry_key(i, k, a, c, blocks),
                                                   entry_key(k, j, c, b, blocks)))
                    if i == 1 and j == r + 1:
                        coords = None if target is None else target.get((a, b))
                        stages.append(Stage(key, degree, TARGET, tuple(terms), coords))
                    else:
                        stages.append(Stage(key, degree, SOLVE, tuple(terms)))
    return stages


def _run_upper_triangular(algebra: DGCAlgebra, q: Sequence[int], blocks: Sequence[int],
                          entries, target, mode, budget) -> MasseyResult:
    require_valid(algebra)
    ambient = TableComplex(algebra)
    stages = _upper_triangular_stages(ambient, q, blocks, entries, target)
    outcome = run_stages(ambient, stages, mode or SEARCH_MODE, budget)
    r = len(q)
    products: Dict[str, Vector] = {}
    if r == 1:
        products["product"] = zero_vector(ambient.cohomology(sum(q) - (r - 2)).dimension)
    else:
        for key, coords in outcome.products.items():
            entry = key.partition("[")[2]
            products["product" + (f"[{entry}" if entry else "")] = coords
    witness = None
    if outcome.status == "found":
        witness = DefiningSystemDGCA(algebra, dict(outcome.values))
    equations = stage_equations(stages, dgca_symbol, style="product")
    logger.info("upper-triangular Massey search (r=%d, blocks=%s): %s", r, list(blocks), outcome.status)
    return MasseyResult(outcome.status, witness, outcome.obstruction, outcome.log, equations, products)


def dgca_massey(algebra: DGCAlgebra, classes: Sequence[ClassInput], mode: Optional[str] = None,
                budget: Optional[int] = None, target: Optional[ClassInput] = None) -> MasseyResult:
    """<a_1, ..., a_r> with a_i given as (degree q_i, coordinates in H^{q_i})."""
    if not classes:
        raise UsageError("at least one class is needed")
    ambient = TableComplex(algebra)
    q = [int(d) for d, _ in classes]
    entries = {(i + 1, 0, 0): _class_coordinates(ambient, q[i], coords, f"a{i + 1}")
               for i, (_, coords) in enumerate(classes)}
    goal = None
    if target is not None:
        expected = sum(q) - (len(q) - 2)
        if int(target[0]) != expected:
            raise DegreeMismatchError("target class has the wrong degree", expected=expected, got=target[0])
        goal = {(0, 0): _class_coordinates(ambient, expected, target[1], "b")}
    return _run_upper_triangular(algebra, q, [1] * (len(q) + 1), entries, goal, mode, budget)


def matric_massey(algebra: DGCAlgebra, block_sizes: Sequence[int], classes: Sequence[Tuple[int, Sequence[Sequence]]],
                  mode: Optional[str] = None, budget: Optional[int] = None,
                  target: Optional[Tuple[int, Sequence[Sequence]]] = None) -> MasseyResult:
    """Matrix classes a_i of shape p_i x p_{i+1}, entries as coordinate lists in H^{q_i}."""
    r = len(classes)
    blocks = [int(p) for p in block_sizes]
    if r < 1 or len(blocks) != r + 1 or any(p < 1 for p in blocks):
        raise UsageError("need r matrix classes and r+1 positive block sizes", r=r, blocks=blocks)
    ambient = TableComplex(algebra)
    q = [int(d) for d, _ in classes]
    entries = {}
    for i, (degree, matrix) in enumerate(classes, start=1):
        if len(matrix) != blocks[i - 1] or any(len(row) != blocks[i] for row in matrix):
            raise DimensionMismatchError("matrix class shape does not match the block sizes", index=i,
                             expected=(blocks[i - 1], blocks[i]))
        for a, row in enumerate(matrix):
            for b, coords in enumerate(row):
                entries[(i, a, b)] = _class_coordinates(ambient, degree, coords, f"a{i}[{a + 1},{b + 1}]")
    goal = None
    if target is not None:
        expected = sum(q) - (r - 2)
        if int(target[0]) != expected:
            raise DegreeMismatchError("target class has the wrong degree", expected=expected, got=target[0])
        goal = {(a, b): _class_coordinates(ambient, expected, coords, "b")
                for a, row in enumerate(target[1]) for b, coords in enumerate(row)}
    return _run_upper_triangular(algebra, q, blocks, entries, goal, mode, budget)


def _entry_order(coalgebra: LieCoalgebra) -> Optional[Dict[str, int]]:
    """Rank upper-triangular generators by (i, j, a, b); None for other Lie coalgebras."""
    try:
        positions = upper_triangular_positions(coalgebra)
    except ValueError:
        return None
    return {coalgebra.names[positions[key]]: rank for rank, key in enumerate(sorted(positions))}


def lie_coalgebra_massey(algebra: DGCAlgebra, coalgebra: LieCoalgebra, a: Mapping[int, Sequence],
                         b: Optional[Mapping[int, Sequence]] = None, mode: Optional[str] = None,
                         budget: Optional[int] = None) -> MasseyResult:
    """d alpha = mu (alpha x alpha) Delta over a Lie coalgebra Q, values in A^{deg f + 1}."""
    require_valid(coalgebra)
    require_valid(algebra)
    ambient = TableComplex(algebra)
    names = coalgebra.names
    degrees = {names[k]: coalgebra.degrees[k] + 1 for k in range(coalgebra.dim)}
    for k in a:
        if k not in coalgebra.f0:
            raise ClassCoordinateError("class assigned to a generator outside Q0", generator=names[k])
    classes = ClassAssignment(
        {k: _class_coordinates(ambient, degrees[names[k]], v, names[k]) for k, v in a.items()},
        None if b is None else {k: _class_coordinates(ambient, degrees[names[k]] + 1, v, names[k]) for k, v in b.items()},
    )

    def commutative_swap(x: str, y: str) -> Fraction:
        return Fraction(koszul(degrees[x] * degrees[y]))

    order = _entry_order(coalgebra)
    stages = coalgebra_stages(coalgebra, classes, commutative_swap, order)
    outcome = run_stages(ambient, stages, mode or SEARCH_MODE, budget)
    witness = None
    if outcome.status == "found":
        index = {name: k for k, name in enumerate(names)}
        witness = DefiningSystemDGCA(algebra, {index[key]: v for key, v in outcome.values.items()}, coalgebra)
    symbol = (lambda key: dgca_symbol("a" + key[1:])) if order else (lambda key: f"α[{key}]")
    equations = stage_equations(stages, symbol, style="product")
    logger.info("Lie coalgebra Massey search over %d generators: %s", coalgebra.dim, outcome.status)
    return MasseyResult(outcome.status, witness, outcome.obstruction, outcome.log, equations, outcome.products)
