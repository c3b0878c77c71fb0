"""
Stage-by-stage construction of defining systems.

A problem is a list of stages in dependency order. Each stage owns one
unknown element of the ambient complex:

  initial  a cocycle representing a given class (generators of F0 / Q0)
  solve    x with d x = sum c * (left . right) over earlier stages
  target   no unknown; the sum itself is a cocycle whose class is the product

The ambient supplies dimension(d), differential(d), apply_differential(d, v),
cohomology(d) and multiply(d1, v1, d2, v2). The search is generic over it, so
CE complexes, finite DGLAs and DGCAs share one engine.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from services.errors import ClassCoordinateError, ClosednessViolation, UsageError
from services.exact_core import ZERO, Vector, combine, solve_affine, zero_vector

try:
    import config as cfg  # type: ignore
except Exception:
    cfg = None

DEFAULT_BUDGET = int(getattr(cfg, "SEARCH_BUDGET", 64))
NODE_LIMIT = int(getattr(cfg, "SEARCH_NODE_LIMIT", 20000))
GRID = tuple(getattr(cfg, "BACKTRACK_GRID", (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2))))

logger = logging.getLogger(__name__)

INITIAL, SOLVE, TARGET = "initial", "solve", "target"


@dataclass(frozen=True)
class StageTerm:
    coefficient: Fraction
    left: str
    right: str


@dataclass(frozen=True)
class Stage:
    key: str
    degree: int
    role: str
    terms: Tuple[StageTerm, ...] = ()
    class_coordinates: Optional[Vector] = None


@dataclass
class StageRecord:
    key: str
    role: str
    degree: int
    solution_dimension: int = 0
    choice: Tuple[Fraction, ...] = ()
    obstruction: Optional[Vector] = None
    shared_by: Tuple[str, ...] = ()

    def as_dict(self):
        return {
            "stage": self.key,
            "role": self.role,
            "degree": self.degree,
            "solution_dimension": self.solution_dimension,
            "choice": list(self.choice),
            "obstruction": list(self.obstruction) if self.obstruction is not None else None,
            "shared_by": list(self.shared_by),
        }


@dataclass
class SearchOutcome:
    status: str
    values: Dict[str, Vector] = field(default_factory=dict)
    obstruction: Optional[Tuple[str, Vector]] = None
    products: Dict[str, Vector] = field(default_factory=dict)
    log: List[StageRecord] = field(default_factory=list)
    nodes: int = 0


def shared_by(stages: Sequence[Stage]) -> Dict[str, Tuple[str, ...]]:
    """For every stage the later stages whose right-hand side uses it."""
    users: Dict[str, List[str]] = {s.key: [] for s in stages}
    for s in stages:
        for t in s.terms:
            for k in (t.left, t.right):
                if s.key not in users[k]:
                    users[k].append(s.key)
    return {k: tuple(v) for k, v in users.items()}


def stage_rhs(ambient, stage: Stage, values: Dict[str, Vector], degrees: Dict[str, int]) -> Vector:
    out = zero_vector(ambient.dimension(stage.degree + 1))
    parts = []
    for t in stage.terms:
        left, right = values[t.left], values[t.right]
        if not any(left) or not any(right):
            continue
        parts.append((t.coefficient, ambient.multiply(degrees[t.left], left, degrees[t.right], right)))
    if parts:
        out = combine([c for c, _ in parts], [v for _, v in parts], len(out))
    return out


def assert_closed(ambient, degree: int, v: Vector, stage: str) -> None:
    if any(v) and any(ambient.apply_differential(degree, v)):
        raise ClosednessViolation("right-hand side is not a cocycle", stage=stage)


def canonical_terms(raw: Sequence[Tuple[Fraction, str, str]], order: Dict[str, int],
                    swap_factor) -> Tuple[StageTerm, ...]:
    """Merge (c, y, x) into (c * swap_factor(x, y), x, y) when x precedes y; drop zeros.

    swap_factor(x, y) is the scalar s with y.x = s * x.y, or None when the
    product has no symmetry and terms are kept as given.
    """
    merged: Dict[Tuple[str, str], Fraction] = {}
    for c, left, right in raw:
        if not c:
            continue
        if order[right] < order[left]:
            factor = swap_factor(right, left)
            if factor is not None:
                c, left, right = c * factor, right, left
        merged[(left, right)] = merged.get((left, right), ZERO) + c
    items = sorted(((k, v) for k, v in merged.items() if v), key=lambda kv: (order[kv[0][0]], order[kv[0][1]]))
    return tuple(StageTerm(v, l, r) for (l, r), v in items)


def render_equation(stage: Stage, name, style: str = "bracket") -> str:
    """Human-readable form, e.g. 'δγ8 = -[γ2,γ6] - [γ3,γ5] - 1/2[γ4,γ4]'; name maps stage keys to symbols."""
    head = f"δ{name(stage.key)} ="
    if not stage.terms:
        return f"{head} 0"
    pieces = []
    for n, t in enumerate(stage.terms):
        a, b = name(t.left), name(t.right)
        product = f"[{a},{b}]" if style == "bracket" else f"{a}*{b}"
        c = t.coefficient
        mag = "" if abs(c) == 1 else f"{abs(c)}"
        if n == 0:
            pieces.append(("-" if c < 0 else "") + mag + product)
        else:
            pieces.append(("- " if c < 0 else "+ ") + mag + product)
    return f"{head} " + " ".join(pieces)


def _offsets(basis: Sequence[Vector], dim: int, grid: Sequence[Fraction]) -> Iterator[Tuple[Tuple[Fraction, ...], Vector]]:
    """Zero offset first, then combinations of growing support over the nonzero grid values."""
    nonzero = [g for g in grid if g != 0]
    yield tuple(ZERO for _ in basis), zero_vector(dim)
    for size in range(1, len(basis) + 1):
        for support in itertools.combinations(range(len(basis)), size):
            for values in itertools.product(nonzero, repeat=size):
                coeffs = [ZERO] * len(basis)
                for s, v in zip(support, values):
                    coeffs[s] = v
                yield tuple(coeffs), combine(coeffs, basis, dim)


class StageSearch:
    """Greedy or depth-first search over a fixed stage list."""

    def __init__(self, ambient, stages: Sequence[Stage], mode: str = "greedy",
                 budget: Optional[int] = None, node_limit: Optional[int] = None,
                 grid: Optional[Sequence[Fraction]] = None):
        if mode not in ("greedy", "backtrack"):
            raise UsageError("search mode must be greedy or backtrack", mode=mode)
        budget = DEFAULT_BUDGET if budget is None else int(budget)
        if mode == "backtrack" and budget <= 0:
            raise UsageError("backtrack mode needs a positive budget", budget=budget)
        self.ambient = ambient
        self.stages = list(stages)
        self.mode = mode
        self.budget = budget
        self.node_limit = NODE_LIMIT if node_limit is None else int(node_limit)
        self.grid = tuple(grid) if grid is not None else GRID
        self.degrees = {s.key: s.degree for s in self.stages}
        self.shared = shared_by(self.stages)
        self._nodes = 0
        self._bounded = False
        self._first_obstruction: Optional[Tuple[str, Vector]] = None
        self._first_log: Optional[List[StageRecord]] = None

    # -- stage primitives --------------------------------------------------

    def _record(self, stage: Stage, **kw) -> StageRecord:
        return StageRecord(stage.key, stage.role, stage.degree, shared_by=self.shared.get(stage.key, ()), **kw)

    def _initial_space(self, stage: Stage):
        space = self.ambient.cohomology(stage.degree)
        coords = stage.class_coordinates if stage.class_coordinates is not None else zero_vector(space.dimension)
        if len(coords) != space.dimension:
            raise ClassCoordinateError("class coordinates do not match the cohomology dimension",
                                       stage=stage.key, expected=space.dimension, got=len(coords))
        rep = space.quotient.lift(coords) if space.dimension else zero_vector(self.ambient.dimension(stage.degree))
        return rep, list(space.quotient.boundary_basis)

    def _solve_space(self, stage: Stage, values):
        rhs = stage_rhs(self.ambient, stage, values, self.degrees)
        assert_closed(self.ambient, stage.degree + 1, rhs, stage.key)
        sol = solve_affine(self.ambient.differential(stage.degree), rhs)
        if sol is None:
            coords = self.ambient.cohomology(stage.degree + 1).coordinates(rhs)
            return None, coords
        return sol, None

    def _target(self, stage: Stage, values) -> Tuple[Vector, bool]:
        beta = stage_rhs(self.ambient, stage, values, self.degrees)
        assert_closed(self.ambient, stage.degree + 1, beta, stage.key)
        coords = self.ambient.cohomology(stage.degree + 1).coordinates(beta)
        ok = stage.class_coordinates is None or tuple(coords) == tuple(stage.class_coordinates)
        return coords, ok

    # -- greedy ------------------------------------------------------------

    def _greedy(self) -> SearchOutcome:
        values: Dict[str, Vector] = {}
        products: Dict[str, Vector] = {}
        log: List[StageRecord] = []
        mismatch = False
        for stage in self.stages:
            if stage.role == INITIAL:
                rep, boundaries = self._initial_space(stage)
                values[stage.key] = rep
                log.append(self._record(stage, solution_dimension=len(boundaries)))
            elif stage.role == SOLVE:
                sol, obstruction = self._solve_space(stage, values)
                if sol is None:
                    log.append(self._record(stage, obstruction=obstruction))
                    logger.info("stage %s obstructed", stage.key)
                    return SearchOutcome("obstructed", values, (stage.key, obstruction), products, log)
                values[stage.key] = sol.particular
                log.append(self._record(stage, solution_dimension=len(sol.kernel_basis)))
            else:
                coords, ok = self._target(stage, values)
                products[stage.key] = coords
                mismatch = mismatch or not ok
                log.append(self._record(stage))
        # one branch cannot refute membership when the product class differs
        return SearchOutcome("inconclusive" if mismatch else "found", values, None, products, log)

    # -- backtrack ---------------------------------------------------------

    def _candidates(self, base: Vector, basis: Sequence[Vector], dim: int):
        count = 0
        for coeffs, offset in _offsets(basis, dim, self.grid):
            if count >= self.budget:
                self._bounded = True
                return
            if self._nodes >= self.node_limit:
                self._bounded = True
                return
            count += 1
            self._nodes += 1
            yield coeffs, tuple(a + b for a, b in zip(base, offset))
        if basis:
            # the grid samples a positive-dimensional affine space
            self._bounded = True

    def _dfs(self, index: int, values: Dict[str, Vector], log: List[StageRecord],
             products: Dict[str, Vector]) -> Optional[SearchOutcome]:
        if index == len(self.stages):
            return SearchOutcome("found", dict(values), None, dict(products), list(log))
        stage = self.stages[index]
        if stage.role == TARGET:
            coords, ok = self._target(stage, values)
            if not ok:
                self._note_failure(stage, None, log)
                return None
            products[stage.key] = coords
            log.append(self._record(stage))
            found = self._dfs(index + 1, values, log, products)
            log.pop()
            products.pop(stage.key, None)
            return found
        if stage.role == INITIAL:
            base, basis = self._initial_space(stage)
        else:
            sol, obstruction = self._solve_space(stage, values)
            if sol is None:
                self._note_failure(stage, obstruction, log)
                return None
            base, basis = sol.particular, list(sol.kernel_basis)
        dim = self.ambient.dimension(stage.degree)
        for coeffs, candidate in self._candidates(base, basis, dim):
            values[stage.key] = candidate
            log.append(self._record(stage, solution_dimension=len(basis), choice=coeffs))
            found = self._dfs(index + 1, values, log, products)
            log.pop()
            if found is not None:
                return found
        values.pop(stage.key, None)
        return None

    def _note_failure(self, stage: Stage, obstruction, log):
        if self._first_log is None:
            self._first_obstruction = (stage.key, obstruction) if obstruction is not None else None
            self._first_log = list(log) + [self._record(stage, obstruction=obstruction)]

    def _backtrack(self) -> SearchOutcome:
        found = self._dfs(0, {}, [], {})
        if found is not None:
            found.nodes = self._nodes
            return found
        status = "inconclusive" if self._bounded else "obstructed"
        logger.info("backtrack search exhausted after %d nodes: %s", self._nodes, status)
        return SearchOutcome(status, {}, self._first_obstruction, {}, self._first_log or [], self._nodes)

    def run(self) -> SearchOutcome:
        logger.debug("running %s search over %d stages", self.mode, len(self.stages))
        return self._greedy() if self.mode == "greedy" else self._backtrack()


def run_stages(ambient, stages: Sequence[Stage], mode: str = "greedy", budget: Optional[int] = None,
               node_limit: Optional[int] = None, grid: Optional[Sequence[Fraction]] = None) -> SearchOutcome:
    return StageSearch(ambient, stages, mode, budget, node_limit, grid).run()
