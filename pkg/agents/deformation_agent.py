"""
Deformations of a Lie algebra g over a local base S = K1 + m.

A deformed bracket is tau = m_g + sum_i alpha_i (x) m_i with alpha_i in
C^2(g; g). It is a Lie bracket on g (x) S exactly when the Maurer-Cartan
residual

    d alpha_k + 1/2 sum_{ij} s_{ij}^k [alpha_i, alpha_j]

vanishes for every k, s being the multiplication constants of m.
Integration runs the Massey search over the dual coalgebra of m with the
classes -1/2 a and rescales the witness by -2.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from agents.massey_dgla_agent import ClassAssignment, coalgebra_stages, massey_search
from agents.stage_search import Stage, StageRecord, StageTerm, render_equation
from services.algebra_defs import GradedLieAlgebra, LocalBaseAlgebra, dualize, require_valid
from services.ce_complex import Cochain, ce_differential, cohomology, nr_bracket
from services.errors import ClassCoordinateError, InvalidStructureError, NonDeformationError, UsageError
from services.exact_core import ZERO, Vector, unit_vector, vector, zero_vector

try:
    import config as cfg  # type: ignore
except Exception:
    cfg = None

DEFORMATION_ORDER = int(getattr(cfg, "DEFORMATION_ORDER", 4))

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
UNIT = -1


@dataclass
class DeformedBracket:
    base: LocalBaseAlgebra
    g: GradedLieAlgebra
    cochains: Dict[int, Cochain]

    def cochain(self, k: int) -> Cochain:
        return self.cochains.get(k) or Cochain.zero(self.g, 2)


@dataclass
class InfinitesimalDeformation:
    """Classes in H^2(g; g) on the indecomposable basis elements of m, keyed by name."""

    base: LocalBaseAlgebra
    g: GradedLieAlgebra
    classes: Dict[str, Vector]


@dataclass
class IntegrationResult:
    status: str
    bracket: Optional[DeformedBracket] = None
    obstruction: Optional[Tuple[str, Vector]] = None
    search_log: List[StageRecord] = field(default_factory=list)
    equations: List[str] = field(default_factory=list)


def _require_base(base: LocalBaseAlgebra):
    require_valid(base)
    if not base.is_nilpotent():
        raise InvalidStructureError("maximal ideal of the base is not nilpotent")


def trivial_deformation(g: GradedLieAlgebra, base: LocalBaseAlgebra) -> DeformedBracket:
    return DeformedBracket(base, g, {k: Cochain.zero(g, 2) for k in range(base.dim)})


def mc_residual(g: GradedLieAlgebra, base: LocalBaseAlgebra, tau: DeformedBracket) -> Dict[int, Cochain]:
    """Residual per basis element of m (the dual functional m_k^*); all zero iff Maurer-Cartan holds."""
    _require_base(base)
    out = {}
    for k in range(base.dim):
        total = ce_differential(g, tau.cochain(k))
        for (i, j), row in sorted(base.table.items()):
            s = row.get(k)
            if s:
                total = total + nr_bracket(tau.cochain(i), tau.cochain(j)).scaled(HALF * s)
        out[k] = total
    return out


def is_deformation(tau: DeformedBracket) -> bool:
    return all(r.is_zero() for r in mc_residual(tau.g, tau.base, tau).values())


def _tau_basis(tau: DeformedBracket, x: Sequence[Fraction], y: Sequence[Fraction]) -> Dict[int, Vector]:
    """tau(x (x) 1, y (x) 1) split into components along 1 and the m_i."""
    g = tau.g
    n = g.dim
    out = {UNIT: g.bracket(x, y)}
    for k, phi in tau.cochains.items():
        acc = [ZERO] * n
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if yb and a != b:
                    for t, v in enumerate(phi.value((a, b))):
                        if v:
                            acc[t] += xa * yb * v
        out[k] = tuple(acc)
    return out


def _s_product(base: LocalBaseAlgebra, p: int, q: int) -> Dict[int, Fraction]:
    if p == UNIT:
        return {q: Fraction(1)}
    if q == UNIT:
        return {p: Fraction(1)}
    return base.product_basis(p, q)


def _tau(tau: DeformedBracket, u: Mapping[int, Vector], v: Mapping[int, Vector]) -> Dict[int, Vector]:
    """S-bilinear extension to g (x) S, elements as {component: vector in g}."""
    n = tau.g.dim
    out: Dict[int, List[Fraction]] = {}
    for p, x in u.items():
        if not any(x):
            continue
        for q, y in v.items():
            if not any(y):
                continue
            for r, z in _tau_basis(tau, x, y).items():
                if not any(z):
                    continue
                for s, c in _s_product(tau.base, p, r).items():
                    for s2, c2 in _s_product(tau.base, q, s).items():
                        acc = out.setdefault(s2, [ZERO] * n)
                        for t, val in enumerate(z):
                            if val:
                                acc[t] += c * c2 * val
    return {k: tuple(v) for k, v in out.items() if any(v)}


def jacobiator(g: GradedLieAlgebra, base: LocalBaseAlgebra, tau: DeformedBracket) -> Dict[Tuple[int, int, int], Dict[int, Vector]]:
    """Cyclic sum tau(tau(x,y),z) on basis triples x<y<z; components keyed by -1 (unit) or m index."""
    _require_base(base)
    n = g.dim
    out = {}
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                x, y, z = ({UNIT: unit_vector(n, i)} for i in (a, b, c))
                total: Dict[int, List[Fraction]] = {}
                for first, second, third in ((x, y, z), (y, z, x), (z, x, y)):
                    for k, v in _tau(tau, _tau(tau, first, second), third).items():
                        acc = total.setdefault(k, [ZERO] * n)
                        for t, val in enumerate(v):
                            acc[t] += val
                nonzero = {k: tuple(v) for k, v in total.items() if any(v)}
                if nonzero:
                    out[(a, b, c)] = nonzero
    return out


def deformation_differential(tau: DeformedBracket) -> InfinitesimalDeformation:
    """Classes [alpha_phi] for phi running over the dual basis of m / m^2."""
    residual = mc_residual(tau.g, tau.base, tau)
    bad = [tau.base.names[k] for k, r in residual.items() if not r.is_zero()]
    if bad:
        raise NonDeformationError("bracket does not satisfy the Maurer-Cartan equation", components=bad)
    h2 = cohomology(tau.g, 2)
    classes = {}
    for k in tau.base.indecomposables():
        classes[tau.base.names[k]] = h2.coordinates(tau.cochain(k))
    return InfinitesimalDeformation(tau.base, tau.g, classes)


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------

def truncate_base(base: LocalBaseAlgebra, order: int) -> LocalBaseAlgebra:
    """S / m^{order+1}; needs m^{order+1} spanned by basis elements."""
    if order < 1:
        raise UsageError("integration order must be at least 1", order=order)
    spans = base.power_spans()
    if len(spans) <= order:
        return base
    drop = spans[order]
    inside = [k for k in range(base.dim) if drop.contains(unit_vector(base.dim, k))]
    if len(inside) != len(drop):
        raise UsageError("m^{order+1} is not spanned by basis elements", order=order)
    keep = [k for k in range(base.dim) if k not in inside]
    pos = {k: p for p, k in enumerate(keep)}
    table = {}
    for (i, j), row in base.table.items():
        if i in pos and j in pos:
            kept = {pos[k]: c for k, c in row.items() if k in pos}
            if kept:
                table[(pos[i], pos[j])] = kept
    return LocalBaseAlgebra(names=tuple(base.names[k] for k in keep),
                            degrees=tuple(base.degrees[k] for k in keep), table=table)


def base_symbol(names: Sequence[str]):
    """gamma_w for pure t-powers and cusp monomials (w the weight), beta_w for pair monomials containing u."""
    pair = any("t" in n for n in names) and any("u" in n for n in names)

    def weight(name: str) -> Optional[int]:
        total = 0
        for factor in name.split("*"):
            m = re.fullmatch(r"([tuv])(?:\^(\d+))?", factor)
            if not m:
                return None
            power = int(m.group(2) or 1)
            total += power * {"t": 1, "u": 2, "v": 3}[m.group(1)]
        return total

    def symbol(name: str) -> str:
        w = weight(name)
        if w is None:
            return f"γ[{name}]"
        return ("β" if pair and "u" in name else "γ") + str(w)

    return symbol


def integrate(g: GradedLieAlgebra, base: LocalBaseAlgebra, a: Mapping[str, Sequence], order: Optional[int] = None,
              mode: Optional[str] = None, budget: Optional[int] = None) -> IntegrationResult:
    """Extend the infinitesimal deformation a (classes on indecomposables of m) to a deformation over S / m^{order+1}."""
    order = DEFORMATION_ORDER if order is None else int(order)
    base = truncate_base(base, order)
    _require_base(base)
    coalgebra = dualize(base, {"F0": "indecomposable", "F1": "all"})
    h2 = cohomology(g, 2)
    index = {name: k for k, name in enumerate(base.names)}
    assignment: Dict[int, Vector] = {}
    for k in coalgebra.f0:
        name = base.names[k]
        coords = vector(a.get(name, zero_vector(h2.dimension)))
        if len(coords) != h2.dimension:
            raise ClassCoordinateError("class coordinates do not match dim H^2", generator=name,
                                       expected=h2.dimension, got=len(coords))
        assignment[k] = tuple(-HALF * c for c in coords)
    for name in a:
        if name not in index or index[name] not in coalgebra.f0:
            raise ClassCoordinateError("infinitesimal deformation is defined on indecomposables only", generator=name)

    symbol = base_symbol(base.names)
    result = massey_search(g, coalgebra, ClassAssignment(assignment), mode, budget, symbol)
    equations = gamma_equations(coalgebra, symbol)
    if result.status != "found":
        logger.info("integration stopped: %s", result.status)
        return IntegrationResult(result.status, None, result.obstruction, result.search_log, equations)

    cochains = {k: Cochain(g, 2, v).scaled(-2) for k, v in result.witness.alpha.items()}
    bracket = DeformedBracket(base, g, cochains)
    if not is_deformation(bracket):
        raise InvalidStructureError("integrated bracket fails the Maurer-Cartan equation")
    return IntegrationResult("found", bracket, None, result.search_log, equations)


def gamma_equations(coalgebra, symbol) -> List[str]:
    """Stage equations for gamma = -2 alpha: every coefficient becomes -1/2 c."""
    stages = coalgebra_stages(coalgebra, ClassAssignment({k: () for k in coalgebra.f0}))
    out = []
    for s in stages:
        if s.role == "initial":
            continue
        scaled = Stage(s.key, s.degree, s.role, tuple(StageTerm(-HALF * t.coefficient, t.left, t.right) for t in s.terms))
        out.append(render_equation(scaled, symbol))
    return out
