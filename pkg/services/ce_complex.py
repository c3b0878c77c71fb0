"""
Chevalley-Eilenberg cochains C^q(g; g) = Hom(Lambda^q g, g) as a DGLA, with
cohomology computed by exact row reduction.

A cochain has an arity q and an internal degree: the degree shift of its
values against its arguments. Its DGLA degree is q - 1 plus the internal
degree; over a Lie algebra in degree 0 the internal degree is 0. Cochains
whose parent has nonzero degrees are stored and checked for homogeneity,
but the differential and the bracket reject them. Cochains are stored densely:
one block of dim(g) target coordinates per increasing multi-index, blocks
ordered as itertools.combinations(range(n), q).
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from services.algebra_defs import DGCAlgebra, FiniteDGLA, GradedLieAlgebra, koszul
from services.errors import DegreeMismatchError, DimensionMismatchError, ParentMismatchError
from services.exact_core import (
    ZERO,
    Decomposition,
    Matrix,
    Subquotient,
    Vector,
    kernel_basis,
    solve_affine,
    subquotient,
    to_scalar,
    unit_vector,
    zero_vector,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _multi_indices(n: int, arity: int) -> Tuple[Tuple[int, ...], ...]:
    if arity < 0:
        return ()
    return tuple(itertools.combinations(range(n), arity))


@lru_cache(maxsize=None)
def _positions(n: int, arity: int) -> Dict[Tuple[int, ...], int]:
    return {idx: p for p, idx in enumerate(_multi_indices(n, arity))}


def cochain_dimension(n: int, arity: int) -> int:
    return comb(n, arity) * n if 0 <= arity <= n else 0


def _sort_with_sign(args: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign of the sorting permutation, 0 if an index repeats."""
    if len(set(args)) != len(args):
        return 0, ()
    inversions = sum(1 for a, b in itertools.combinations(args, 2) if a > b)
    return koszul(inversions), tuple(sorted(args))


@dataclass(frozen=True, eq=False)
class Cochain:
    parent: GradedLieAlgebra
    arity: int
    values: Vector
    internal_degree: int = 0

    def __post_init__(self):
        expected = cochain_dimension(self.parent.dim, self.arity)
        if len(self.values) != expected:
            raise DimensionMismatchError("cochain coefficient vector has the wrong length",
                                         arity=self.arity, expected=expected, got=len(self.values))
        if self.parent.is_ungraded and not self.internal_degree:
            return
        degrees = self.parent.degrees
        for args, k, _ in self.terms():
            shift = degrees[k] - sum(degrees[a] for a in args)
            if shift != self.internal_degree:
                raise DegreeMismatchError("cochain value has the wrong internal degree",
                                          args=args, target=k, expected=self.internal_degree, got=shift)

    @property
    def degree(self) -> int:
        return self.arity - 1 + self.internal_degree

    @classmethod
    def zero(cls, parent: GradedLieAlgebra, arity: int, internal_degree: int = 0) -> "Cochain":
        return cls(parent, arity, zero_vector(cochain_dimension(parent.dim, arity)), internal_degree)

    @classmethod
    def from_terms(cls, parent: GradedLieAlgebra, arity: int,
                   terms: Mapping[Tuple[int, ...], Mapping[int, object]], internal_degree: int = 0) -> "Cochain":
        """Build from {args: {target: coefficient}}; args in any order, extended by antisymmetry."""
        n = parent.dim
        values = [ZERO] * cochain_dimension(n, arity)
        pos = _positions(n, arity)
        for args, image in terms.items():
            if len(args) != arity:
                raise DegreeMismatchError("argument tuple does not match cochain arity", arity=arity, args=args)
            sign, key = _sort_with_sign(args)
            if not sign:
                continue
            base = pos[key] * n
            for k, c in image.items():
                values[base + k] += sign * to_scalar(c)
        return cls(parent, arity, tuple(values), internal_degree)

    def value(self, args: Sequence[int]) -> Vector:
        """phi(e_{a1}, ..., e_{aq}) for basis indices in any order."""
        n = self.parent.dim
        sign, key = _sort_with_sign(args)
        if not sign:
            return zero_vector(n)
        base = _positions(n, self.arity)[key] * n
        block = self.values[base:base + n]
        return block if sign == 1 else tuple(-x for x in block)

    def terms(self):
        """Nonzero entries as (args, target, coefficient) in storage order."""
        n = self.parent.dim
        for p, idx in enumerate(_multi_indices(n, self.arity)):
            for k in range(n):
                c = self.values[p * n + k]
                if c:
                    yield idx, k, c

    def is_zero(self) -> bool:
        return not any(self.values)

    def _same(self, other: "Cochain"):
        if other.parent is not self.parent:
            raise ParentMismatchError("cochains live over different Lie algebras")
        if other.arity != self.arity:
            raise DegreeMismatchError("cochain arities differ", left=self.arity, right=other.arity)
        if other.internal_degree != self.internal_degree:
            raise DegreeMismatchError("cochain internal degrees differ",
                                      left=self.internal_degree, right=other.internal_degree)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return Cochain(self.parent, self.arity, tuple(a + b for a, b in zip(self.values, other.values)),
                       self.internal_degree)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return Cochain(self.parent, self.arity, tuple(a - b for a, b in zip(self.values, other.values)),
                       self.internal_degree)

    def __neg__(self) -> "Cochain":
        return Cochain(self.parent, self.arity, tuple(-a for a in self.values), self.internal_degree)

    def scaled(self, c) -> "Cochain":
        c = to_scalar(c)
        return Cochain(self.parent, self.arity, tuple(c * a for a in self.values), self.internal_degree)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.parent is other.parent and self.arity == other.arity
                and self.internal_degree == other.internal_degree and self.values == other.values)

    __hash__ = None


def _check_parent(g: GradedLieAlgebra, *cochains: Cochain):
    for phi in cochains:
        if phi.parent is not g:
            raise ParentMismatchError("cochain belongs to a different Lie algebra")
    if not g.is_ungraded:
        raise DegreeMismatchError("Chevalley-Eilenberg cochains need a Lie algebra concentrated in degree 0; "
                                  "use a FiniteDGLA table for graded targets")


def _bracket_with_basis(g: GradedLieAlgebra, i: int, v: Sequence[Fraction], out: list, sign: int):
    for j, b in enumerate(v):
        if b:
            for k, c in g.product_basis(i, j).items():
                out[k] += sign * b * c


def bracket_cochain(g: GradedLieAlgebra) -> Cochain:
    """m in C^2(g; g): m(e_i, e_j) = [e_i, e_j]."""
    _check_parent(g)
    return Cochain.from_terms(g, 2, {(i, j): g.product_basis(i, j) for i, j in _multi_indices(g.dim, 2)})


def ce_differential(g: GradedLieAlgebra, phi: Cochain) -> Cochain:
    """(dphi)(g0..gq) = sum_i (-1)^i [g_i, phi(..^g_i..)] + sum_{i<j} (-1)^{i+j} phi([g_i,g_j], ..^g_i..^g_j..)."""
    _check_parent(g, phi)
    n, q = g.dim, phi.arity
    values = [ZERO] * cochain_dimension(n, q + 1)
    for p, idx in enumerate(_multi_indices(n, q + 1)):
        out = [ZERO] * n
        for i, gi in enumerate(idx):
            rest = idx[:i] + idx[i + 1:]
            _bracket_with_basis(g, gi, phi.value(rest), out, koszul(i))
        for i, j in itertools.combinations(range(len(idx)), 2):
            bracket = g.product_basis(idx[i], idx[j])
            if not bracket:
                continue
            rest = tuple(x for t, x in enumerate(idx) if t not in (i, j))
            sign = koszul(i + j)
            for k, c in bracket.items():
                for t, x in enumerate(phi.value((k,) + rest)):
                    if x:
                        out[t] += sign * c * x
        values[p * n:(p + 1) * n] = out
    return Cochain(g, q + 1, tuple(values), phi.internal_degree)


def insertion(phi: Cochain, psi: Cochain) -> Cochain:
    """phi o psi: psi inserted into the first slot of phi, summed over (q, p-1) shuffles."""
    g = phi.parent
    n, p, q = g.dim, phi.arity, psi.arity
    arity = p + q - 1
    if p == 0 or arity < 0:
        return Cochain.zero(g, max(arity, 0), phi.internal_degree + psi.internal_degree)
    values = [ZERO] * cochain_dimension(n, arity)
    for pos, idx in enumerate(_multi_indices(n, arity)):
        out = [ZERO] * n
        for chosen in itertools.combinations(range(arity), q):
            sign = koszul(sum(s - t for t, s in enumerate(chosen)))
            inner = psi.value(tuple(idx[s] for s in chosen))
            rest = tuple(x for t, x in enumerate(idx) if t not in chosen)
            for k, c in enumerate(inner):
                if c:
                    for t, x in enumerate(phi.value((k,) + rest)):
                        if x:
                            out[t] += sign * c * x
        values[pos * n:(pos + 1) * n] = out
    return Cochain(g, arity, tuple(values), phi.internal_degree + psi.internal_degree)


def nr_bracket(phi: Cochain, psi: Cochain) -> Cochain:
    """[phi, psi] = (-1)^{(p-1)(q-1)} phi o psi - psi o phi, of arity p + q - 1.

    With this sign the differential above is exactly [m, .] for the bracket cochain m.
    """
    if phi.parent is not psi.parent:
        raise ParentMismatchError("cochains live over different Lie algebras")
    _check_parent(phi.parent, phi, psi)
    sign = koszul((phi.arity - 1) * (psi.arity - 1))
    left = insertion(phi, psi)
    right = insertion(psi, phi)
    return Cochain(phi.parent, left.arity, tuple(sign * a - b for a, b in zip(left.values, right.values)),
                   left.internal_degree)


@dataclass(frozen=True, eq=False)
class CohomologySpace:
    """H in one degree: representatives, and decompose(v) -> (coordinates, coboundary preimage)."""

    degree: int
    quotient: Subquotient
    wrap: Callable[[Vector], object] = field(repr=False)
    preimage: Callable[[Vector], Vector] = field(repr=False)
    wrap_lower: Callable[[Vector], object] = field(repr=False, default=lambda v: v)

    @property
    def dimension(self) -> int:
        return self.quotient.dimension

    @property
    def representatives(self):
        return tuple(self.wrap(v) for v in self.quotient.representatives)

    def decompose(self, v) -> Tuple[Vector, object]:
        vec = v.values if isinstance(v, Cochain) else tuple(v)
        parts: Decomposition = self.quotient.decompose(vec)
        return parts.coordinates, self.wrap_lower(self.preimage(parts.remainder))

    def coordinates(self, v) -> Vector:
        vec = v.values if isinstance(v, Cochain) else tuple(v)
        return self.quotient.decompose(vec).coordinates

    def lift(self, coordinates):
        return self.wrap(self.quotient.lift(coordinates))


class CEComplex:
    """C*(g; g) seen as a graded ambient for stage searches; degree d holds arity d + 1."""

    def __init__(self, g: GradedLieAlgebra):
        _check_parent(g)
        self.g = g
        self._differentials: Dict[int, Matrix] = {}
        self._cohomology: Dict[int, CohomologySpace] = {}

    def dimension(self, degree: int) -> int:
        return cochain_dimension(self.g.dim, degree + 1)

    def element(self, degree: int, v: Sequence[Fraction]) -> Cochain:
        return Cochain(self.g, degree + 1, tuple(v))

    def differential(self, degree: int) -> Matrix:
        if degree not in self._differentials:
            src, dst = self.dimension(degree), self.dimension(degree + 1)
            columns = [ce_differential(self.g, self.element(degree, unit_vector(src, i))).values for i in range(src)]
            self._differentials[degree] = Matrix.from_columns(columns, dst) if columns else Matrix.zeros(dst, 0)
        return self._differentials[degree]

    def apply_differential(self, degree: int, v: Sequence[Fraction]) -> Vector:
        return ce_differential(self.g, self.element(degree, v)).values

    def multiply(self, d1: int, v1: Sequence[Fraction], d2: int, v2: Sequence[Fraction]) -> Vector:
        return nr_bracket(self.element(d1, v1), self.element(d2, v2)).values

    def cohomology(self, degree: int) -> CohomologySpace:
        if degree not in self._cohomology:
            self._cohomology[degree] = complex_cohomology(self, degree, wrap=lambda v, d=degree: self.element(d, v),
                                                          wrap_lower=lambda v, d=degree: self.element(d - 1, v))
        return self._cohomology[degree]

    def describe(self, degree: int, v: Sequence[Fraction]):
        return self.element(degree, v)


class TableComplex:
    """A FiniteDGLA or a DGCAlgebra as a graded ambient, elements in degree-local coordinates."""

    def __init__(self, algebra):
        if not isinstance(algebra, (FiniteDGLA, DGCAlgebra)):
            raise DegreeMismatchError("table complexes need a differential", kind=getattr(algebra, "kind", "?"))
        self.algebra = algebra
        self._cohomology: Dict[int, CohomologySpace] = {}

    def dimension(self, degree: int) -> int:
        return self.algebra.component_dim(degree)

    def element(self, degree: int, v: Sequence[Fraction]) -> Vector:
        return tuple(v)

    def differential(self, degree: int) -> Matrix:
        return self.algebra.differential_matrix(degree)

    def apply_differential(self, degree: int, v: Sequence[Fraction]) -> Vector:
        return self.differential(degree).apply(v)

    def multiply(self, d1: int, v1: Sequence[Fraction], d2: int, v2: Sequence[Fraction]) -> Vector:
        return self.algebra.product_local(d1, v1, d2, v2)

    def cohomology(self, degree: int) -> CohomologySpace:
        if degree not in self._cohomology:
            self._cohomology[degree] = complex_cohomology(self, degree)
        return self._cohomology[degree]

    def describe(self, degree: int, v: Sequence[Fraction]) -> Dict[str, Fraction]:
        names = [self.algebra.names[i] for i in self.algebra.degree_indices(degree)]
        return {name: c for name, c in zip(names, v) if c}


def complex_cohomology(ambient, degree: int, wrap: Optional[Callable] = None,
                       wrap_lower: Optional[Callable] = None) -> CohomologySpace:
    """ker d_degree / im d_{degree-1} for any ambient exposing dimension() and differential()."""
    dim = ambient.dimension(degree)
    cycles = kernel_basis(ambient.differential(degree)) if dim else ()
    lower = ambient.differential(degree - 1) if ambient.dimension(degree - 1) else None
    boundaries = [lower.column(j) for j in range(lower.cols)] if lower is not None else []
    quotient = subquotient(cycles, boundaries, ambient_dim=dim)
    lower_dim = ambient.dimension(degree - 1)

    def preimage(boundary: Vector) -> Vector:
        if lower is None or not any(boundary):
            return zero_vector(lower_dim)
        return solve_affine(lower, boundary).particular

    space = CohomologySpace(degree, quotient, wrap or (lambda v: v), preimage, wrap_lower or (lambda v: v))
    logger.debug("H^%d: cycles %d, boundaries %d, dimension %d", degree, len(cycles), len(quotient.boundary_basis),
                 quotient.dimension)
    return space


def cohomology(g: GradedLieAlgebra, q: int) -> CohomologySpace:
    """H^q(g; g), representatives as arity-q cochains."""
    if not 0 <= q <= g.dim:
        raise DegreeMismatchError("cohomology degree out of range", q=q, dim=g.dim)
    return CEComplex(g).cohomology(q - 1)
