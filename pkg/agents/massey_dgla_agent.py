"""
Massey F-products in the cohomology of a DGLA.

The DGLA is either C*(g; g) for an ungraded Lie algebra g or a FiniteDGLA
given by tables. The parameter is a coalgebra F with filtration F0 in F1:
generators of F0 get cocycle representatives of the given classes, every
other generator of F1 solves

    d alpha_k = sum_{ij} c_k^{ij} [alpha_i, alpha_j],   c = (-1)^{deg f_i} d,

and generators outside F1 produce the classes of the product.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from agents.stage_search import (
    INITIAL,
    SOLVE,
    TARGET,
    Stage,
    StageRecord,
    StageTerm,
    assert_closed,
    canonical_terms,
    render_equation,
    run_stages,
    stage_rhs,
)
from services.algebra_defs import (
    Coalgebra,
    FiniteDGLA,
    GradedLieAlgebra,
    LieCoalgebra,
    Violation,
    koszul,
    require_valid,
)
from services.ce_complex import CEComplex, Cochain, TableComplex
from services.errors import ClassCoordinateError, DegreeMismatchError, InvalidStructureError
from services.exact_core import Vector, vector

try:
    import config as cfg  # type: ignore
except Exception:
    cfg = None

SEARCH_MODE = getattr(cfg, "SEARCH_MODE", "greedy")

logger = logging.getLogger(__name__)


@dataclass
class ClassAssignment:
    """a: F0 generator -> class coordinates in H^{deg f + 1}; b: generator outside F1 -> coordinates in H^{deg f + 2}."""

    a: Dict[int, Vector] = field(default_factory=dict)
    b: Optional[Dict[int, Vector]] = None


@dataclass
class DefiningSystemDGLA:
    coalgebra: Coalgebra
    target: object
    alpha: Dict[int, Vector]


@dataclass
class MasseyResult:
    status: str
    witness: Optional[object] = None  # DefiningSystemDGLA, or DefiningSystemDGCA from the DGCA routes
    obstruction: Optional[Tuple[str, Vector]] = None
    search_log: List[StageRecord] = field(default_factory=list)
    equations: List[str] = field(default_factory=list)
    products: Dict[str, Vector] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)


def ambient_for(target):
    if isinstance(target, FiniteDGLA):
        return TableComplex(target)
    if isinstance(target, GradedLieAlgebra):
        return CEComplex(target)
    return target


def element_vector(value) -> Vector:
    return value.values if isinstance(value, Cochain) else vector(value)


def lie_swap_factor(degrees: Mapping[str, int]) -> Callable[[str, str], Fraction]:
    """[y, x] = -(-1)^{|x||y|} [x, y]."""
    return lambda x, y: Fraction(-koszul(degrees[x] * degrees[y]))


def default_symbol(name: str) -> str:
    match = re.fullmatch(r"(f|phi)(\d+)", name)
    if match:
        return ("α" if match.group(1) == "f" else "β") + match.group(2)
    return f"α[{name}]"


def coalgebra_stages(coalgebra: Coalgebra, classes: ClassAssignment,
                     swap_factor: Optional[Callable] = None,
                     term_order: Optional[Mapping[str, int]] = None) -> List[Stage]:
    """Stages in dependency order; unknowns have ambient degree deg f + 1.

    term_order ranks generator names for writing quadratic terms; dependency order by default.
    """
    names = coalgebra.names
    degrees = {names[k]: coalgebra.degrees[k] + 1 for k in range(coalgebra.dim)}
    order = coalgebra.topological_order()
    position = {names[k]: p for p, k in enumerate(order)}
    swap = swap_factor or lie_swap_factor(degrees)
    f0, f1 = set(coalgebra.f0), set(coalgebra.f1)
    stages = []
    for k in order:
        raw = [(c, names[i], names[j]) for (i, j), c in sorted(coalgebra.bracket_coefficients(k).items())]
        terms = canonical_terms(raw, term_order or position, swap)
        key, degree = names[k], degrees[names[k]]
        if k in f0:
            if k not in classes.a:
                raise ClassCoordinateError("no class given for an F0 generator", generator=key)
            stages.append(Stage(key, degree, INITIAL, (), vector(classes.a[k])))
        elif k in f1:
            stages.append(Stage(key, degree, SOLVE, terms))
        else:
            coords = None if classes.b is None or k not in classes.b else vector(classes.b[k])
            stages.append(Stage(key, degree, TARGET, terms, coords))
    return stages


def stage_equations(stages: Sequence[Stage], symbol: Callable[[str], str] = default_symbol,
                    style: str = "bracket") -> List[str]:
    return [render_equation(s, symbol, style) for s in stages if s.role != INITIAL]


def _check_classes(coalgebra: Coalgebra, classes: ClassAssignment):
    if isinstance(coalgebra, LieCoalgebra):
        raise InvalidStructureError("DGLA Massey products need a cocommutative coalgebra, got a Lie coalgebra",
                                    kind=coalgebra.kind)
    for k in classes.a:
        if k not in coalgebra.f0:
            raise ClassCoordinateError("class assigned to a generator outside F0", generator=coalgebra.names[k])
    if classes.b is not None:
        for k in classes.b:
            if k in coalgebra.f1:
                raise ClassCoordinateError("target class assigned to a generator inside F1",
                                           generator=coalgebra.names[k])


def verify_defining_system(ds: DefiningSystemDGLA, classes: ClassAssignment) -> MasseyResult:
    """Check d alpha = mu (alpha x alpha) Delta on F1 and both class diagrams."""
    coalgebra = ds.coalgebra
    require_valid(coalgebra)
    _check_classes(coalgebra, classes)
    ambient = ambient_for(ds.target)
    names = coalgebra.names
    degrees = {names[k]: coalgebra.degrees[k] + 1 for k in range(coalgebra.dim)}
    values: Dict[str, Vector] = {}
    for k in coalgebra.f1:
        if k not in ds.alpha:
            raise DegreeMismatchError("defining system misses an F1 generator", generator=names[k])
    for k, v in ds.alpha.items():
        v = element_vector(v)
        if len(v) != ambient.dimension(degrees[names[k]]):
            raise DegreeMismatchError("alpha value has the wrong degree", generator=names[k],
                                      expected=ambient.dimension(degrees[names[k]]), got=len(v))
        values[names[k]] = v

    violations: List[Violation] = []
    products: Dict[str, Vector] = {}
    f0, f1 = set(coalgebra.f0), set(coalgebra.f1)
    for k in coalgebra.topological_order():
        key = names[k]
        stage = Stage(key, degrees[key], SOLVE, _raw_terms(coalgebra, k))
        rhs = stage_rhs(ambient, stage, values, degrees)
        if k in f1:
            lhs = ambient.apply_differential(degrees[key], values[key])
            if tuple(lhs) != tuple(rhs):
                violations.append(Violation("defining_equation", (k,), f"d alpha({key}) differs from the quadratic term"))
                continue
            if k in f0:
                space = ambient.cohomology(degrees[key])
                expected = classes.a.get(k)
                if expected is None:
                    raise ClassCoordinateError("no class given for an F0 generator", generator=key)
                if len(expected) != space.dimension:
                    raise ClassCoordinateError("class coordinates do not match the cohomology dimension",
                                               generator=key, expected=space.dimension, got=len(expected))
                if tuple(space.coordinates(values[key])) != tuple(vector(expected)):
                    violations.append(Violation("initial_class", (k,), f"alpha({key}) does not represent a({key})"))
        else:
            assert_closed(ambient, degrees[key] + 1, rhs, key)
            coords = ambient.cohomology(degrees[key] + 1).coordinates(rhs)
            products[key] = coords
            if classes.b is not None and k in classes.b and tuple(coords) != tuple(vector(classes.b[k])):
                violations.append(Violation("target_class", (k,), f"product class at {key} differs from b({key})"))
    status = "violation" if violations else "verified"
    if violations:
        logger.info("defining system fails %s at %s", violations[0].identity, violations[0].indices)
    return MasseyResult(status, ds if not violations else None, None, [], [], products, violations)


def _raw_terms(coalgebra: Coalgebra, k: int):
    names = coalgebra.names
    return tuple(StageTerm(c, names[i], names[j]) for (i, j), c in sorted(coalgebra.bracket_coefficients(k).items()))


def massey_search(target, coalgebra: Coalgebra, classes: ClassAssignment, mode: Optional[str] = None,
                  budget: Optional[int] = None, symbol: Callable[[str], str] = default_symbol) -> MasseyResult:
    """Search a defining system stage by stage (greedy or bounded backtracking)."""
    require_valid(coalgebra)
    _check_classes(coalgebra, classes)
    ambient = ambient_for(target)
    stages = coalgebra_stages(coalgebra, classes)
    outcome = run_stages(ambient, stages, mode or SEARCH_MODE, budget)
    equations = stage_equations(stages, symbol)
    index = {name: k for k, name in enumerate(coalgebra.names)}
    witness = None
    if outcome.status == "found":
        alpha = {index[key]: v for key, v in outcome.values.items()}
        witness = DefiningSystemDGLA(coalgebra, target, alpha)
        check = verify_defining_system(witness, classes)
        if check.status != "verified":
            raise InvalidStructureError("search produced a defining system that does not verify",
                                        violations=check.violations)
    logger.info("massey search over %d generators: %s", coalgebra.dim, outcome.status)
    return MasseyResult(outcome.status, witness, outcome.obstruction, outcome.log, equations, outcome.products)


def obstruction_class(prefix: DefiningSystemDGLA, stage: int) -> Vector:
    """Class of sum c_k^{ij}[alpha_i, alpha_j] at generator `stage`; zero iff the stage is solvable."""
    coalgebra = prefix.coalgebra
    ambient = ambient_for(prefix.target)
    names = coalgebra.names
    degrees = {names[k]: coalgebra.degrees[k] + 1 for k in range(coalgebra.dim)}
    values = {names[k]: element_vector(v) for k, v in prefix.alpha.items()}
    for k in coalgebra.dependencies(stage):
        if k not in prefix.alpha:
            raise InvalidStructureError("prefix misses a generator the stage depends on", generator=names[k])
    for k in prefix.alpha:
        if k not in coalgebra.f1 or any(d not in prefix.alpha for d in coalgebra.dependencies(k)):
            continue
        rhs = stage_rhs(ambient, Stage(names[k], degrees[names[k]], SOLVE, _raw_terms(coalgebra, k)), values, degrees)
        if tuple(ambient.apply_differential(degrees[names[k]], values[names[k]])) != tuple(rhs):
            raise InvalidStructureError("prefix is not a verified defining system", generator=names[k])
    key = names[stage]
    rhs = stage_rhs(ambient, Stage(key, degrees[key], SOLVE, _raw_terms(coalgebra, stage)), values, degrees)
    assert_closed(ambient, degrees[key] + 1, rhs, key)
    return ambient.cohomology(degrees[key] + 1).coordinates(rhs)
