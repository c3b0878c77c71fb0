"""
Finite-dimensional algebraic parameters.

Structure tables are sparse: (i, j) -> {k: coefficient}. For algebras the
entry reads e_i * e_j = sum_k c e_k; for coalgebras the same schema stores
the coproduct, Delta f_k contains d f_i (x) f_j.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from services.errors import FiltrationError, InvalidStructureError, MalformedTableError
from services.exact_core import ZERO, EchelonSpan, Matrix, Vector, to_scalar, unit_vector

logger = logging.getLogger(__name__)

Table = Dict[Tuple[int, int], Dict[int, Fraction]]


def koszul(n: int) -> int:
    return -1 if n % 2 else 1


def _clean_table(table: Mapping, size: int, what: str) -> Table:
    out: Table = {}
    for key, result in table.items():
        i, j = key
        if not (0 <= i < size and 0 <= j < size):
            raise MalformedTableError(f"{what} table index out of range", pair=(i, j), size=size)
        row = {}
        for k, c in result.items():
            if not 0 <= k < size:
                raise MalformedTableError(f"{what} table result index out of range", index=k, size=size)
            c = to_scalar(c)
            if c != 0:
                row[k] = c
        if row:
            out[(i, j)] = row
    return out


def _clean_differential(differential: Mapping, size: int) -> Dict[int, Dict[int, Fraction]]:
    out = {}
    for i, result in differential.items():
        if not 0 <= i < size:
            raise MalformedTableError("differential index out of range", index=i, size=size)
        row = {}
        for k, c in result.items():
            if not 0 <= k < size:
                raise MalformedTableError("differential result index out of range", index=k, size=size)
            c = to_scalar(c)
            if c != 0:
                row[k] = c
        if row:
            out[i] = row
    return out


@dataclass(frozen=True)
class Violation:
    identity: str
    indices: Tuple
    detail: str = ""

    def as_dict(self):
        return {"identity": self.identity, "indices": list(self.indices), "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    kind: str
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True, eq=False)
class _Graded:
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise MalformedTableError("basis names and degrees differ in length",
                                      names=len(self.names), degrees=len(self.degrees))
        if len(set(self.names)) != len(self.names):
            raise MalformedTableError("duplicate basis names")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise MalformedTableError("unknown basis element", name=name) from None

    def degree_indices(self, degree: int) -> Tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) if d == degree)


class _TableAlgebra(_Graded):
    """Shared product machinery for Lie and commutative tables."""

    table: Table

    def product_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        return self.table.get((i, j), {})

    def product(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.product_basis(i, j).items():
                    out[k] += a * b * c
        return tuple(out)

    def product_local(self, d1: int, u: Sequence[Fraction], d2: int, v: Sequence[Fraction]) -> Vector:
        """Product of homogeneous elements given in degree-local coordinates."""
        idx1, idx2, target = self.degree_indices(d1), self.degree_indices(d2), self.degree_indices(d1 + d2)
        pos = {k: p for p, k in enumerate(target)}
        out = [ZERO] * len(target)
        for a, i in zip(u, idx1):
            if not a:
                continue
            for b, j in zip(v, idx2):
                if not b:
                    continue
                for k, c in self.product_basis(i, j).items():
                    out[pos[k]] += a * b * c
        return tuple(out)

    def _check_grading(self, what: str) -> List[Violation]:
        found = []
        for (i, j), row in sorted(self.table.items()):
            for k in sorted(row):
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    found.append(Violation("grading", (i, j, k),
                                           f"{what} of degrees {self.degrees[i]},{self.degrees[j]} lands in degree {self.degrees[k]}"))
        return found

    def _check_symmetry(self, sign: int, identity: str) -> List[Violation]:
        found = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                expected_sign = sign * koszul(self.degrees[i] * self.degrees[j])
                left = self.product_basis(i, j)
                right = self.product_basis(j, i)
                for k in sorted(set(left) | set(right)):
                    if left.get(k, ZERO) != expected_sign * right.get(k, ZERO):
                        found.append(Violation(identity, (i, j), f"component {self.names[k]}"))
                        break
        return found


class _DifferentialMixin:
    differential: Dict[int, Dict[int, Fraction]]

    def apply_differential(self, u: Sequence[Fraction]) -> Vector:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if a:
                for k, c in self.differential.get(i, {}).items():
                    out[k] += a * c
        return tuple(out)

    def differential_matrix(self, degree: int) -> Matrix:
        src, dst = self.degree_indices(degree), self.degree_indices(degree + 1)
        pos = {k: p for p, k in enumerate(dst)}
        columns = []
        for i in src:
            col = [ZERO] * len(dst)
            for k, c in self.differential.get(i, {}).items():
                if k not in pos:
                    raise InvalidStructureError("differential does not raise degree by one", source=self.names[i])
                col[pos[k]] += c
            columns.append(col)
        return Matrix.from_columns(columns, len(dst)) if columns else Matrix.zeros(len(dst), 0)

    def component_dim(self, degree: int) -> int:
        return len(self.degree_indices(degree))

    def _check_differential(self, leibniz_sign_rule: str) -> List[Violation]:
        found = []
        for i, row in sorted(self.differential.items()):
            for k in sorted(row):
                if self.degrees[k] != self.degrees[i] + 1:
                    found.append(Violation("differential_degree", (i, k), "differential must have degree +1"))
        for i in range(self.dim):
            dd = self.apply_differential(self.apply_differential(unit_vector(self.dim, i)))
            if any(dd):
                found.append(Violation("differential_square", (i,), "delta(delta(e)) != 0"))
        for i in range(self.dim):
            for j in range(self.dim):
                ei, ej = unit_vector(self.dim, i), unit_vector(self.dim, j)
                lhs = self.apply_differential(self.product(ei, ej))
                first = self.product(self.apply_differential(ei), ej)
                second = self.product(ei, self.apply_differential(ej))
                s = koszul(self.degrees[i])
                rhs = tuple(a + s * b for a, b in zip(first, second))
                if lhs != rhs:
                    found.append(Violation(leibniz_sign_rule, (i, j), "delta is not a derivation"))
        return found


@dataclass(frozen=True, eq=False)
class GradedLieAlgebra(_TableAlgebra):
    table: Table = field(default_factory=dict)

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "table", _clean_table(self.table, len(self.names), "bracket"))

    kind = "lie"

    def bracket(self, u, v) -> Vector:
        return self.product(u, v)

    @property
    def is_ungraded(self) -> bool:
        return all(d == 0 for d in self.degrees)


@dataclass(frozen=True, eq=False)
class FiniteDGLA(GradedLieAlgebra, _DifferentialMixin):
    differential: Dict[int, Dict[int, Fraction]] = field(default_factory=dict)

    kind = "dgla"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "differential", _clean_differential(self.differential, len(self.names)))


@dataclass(frozen=True, eq=False)
class AssocCommAlgebra(_TableAlgebra):
    table: Table = field(default_factory=dict)

    kind = "assoc-comm"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "table", _clean_table(self.table, len(self.names), "product"))

    def power_spans(self) -> List[EchelonSpan]:
        """Spans of G, G^2, G^3, ... until the power vanishes."""
        n = self.dim
        current = [unit_vector(n, i) for i in range(n)]
        spans = []
        while True:
            span = EchelonSpan(n)
            kept = [v for v in current if span.add(v)]
            if not kept:
                break
            spans.append(span)
            if len(spans) > n + 1:
                break
            nxt = []
            for v in kept:
                for i in range(n):
                    nxt.append(self.product(v, unit_vector(n, i)))
            current = nxt
        return spans


@dataclass(frozen=True, eq=False)
class DGCAlgebra(AssocCommAlgebra, _DifferentialMixin):
    differential: Dict[int, Dict[int, Fraction]] = field(default_factory=dict)

    kind = "dgca"

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "differential", _clean_differential(self.differential, len(self.names)))


@dataclass(frozen=True, eq=False)
class Coalgebra(_Graded):
    """Graded cocommutative coassociative coalgebra with filtration F0 in F1."""

    coproduct: Dict[int, Dict[Tuple[int, int], Fraction]] = field(default_factory=dict)
    f0: Tuple[int, ...] = ()
    f1: Tuple[int, ...] = ()

    kind = "coalgebra"
    symmetry = 1

    def __post_init__(self):
        super().__post_init__()
        n = len(self.names)
        clean = {}
        for k, terms in self.coproduct.items():
            if not 0 <= k < n:
                raise MalformedTableError("coproduct source index out of range", index=k, size=n)
            row = {}
            for (i, j), c in terms.items():
                if not (0 <= i < n and 0 <= j < n):
                    raise MalformedTableError("coproduct term index out of range", pair=(i, j), size=n)
                c = to_scalar(c)
                if c != 0:
                    row[(i, j)] = c
            if row:
                clean[k] = row
        object.__setattr__(self, "coproduct", clean)
        object.__setattr__(self, "f0", tuple(sorted(set(self.f0))))
        object.__setattr__(self, "f1", tuple(sorted(set(self.f1))))
        for k in self.f0 + self.f1:
            if not 0 <= k < n:
                raise MalformedTableError("filtration index out of range", index=k, size=n)

    def delta(self, k: int) -> Dict[Tuple[int, int], Fraction]:
        return self.coproduct.get(k, {})

    def bracket_coefficients(self, k: int) -> Dict[Tuple[int, int], Fraction]:
        """c_k^{ij} = (-1)^{deg f_i} d_k^{ij}: the tensor sign of a degree-one alpha."""
        return {(i, j): koszul(self.degrees[i]) * d for (i, j), d in self.delta(k).items()}

    def dependencies(self, k: int) -> Tuple[int, ...]:
        return tuple(sorted({i for i, _ in self.delta(k)} | {j for _, j in self.delta(k)}))

    def topological_order(self) -> Tuple[int, ...]:
        """Order with every generator after the generators in its coproduct; ties by basis order."""
        remaining = set(range(self.dim))
        order: List[int] = []
        while remaining:
            ready = [k for k in sorted(remaining) if all(d not in remaining or d == k for d in self.dependencies(k))]
            if not ready:
                raise InvalidStructureError("coproduct dependencies are cyclic")
            k = ready[0]
            if k in self.dependencies(k):
                raise InvalidStructureError("generator appears in its own coproduct", generator=self.names[k])
            order.append(k)
            remaining.remove(k)
        return tuple(order)

    def truncate(self, keep: Iterable[int]) -> "Coalgebra":
        """Restriction to a Delta-closed set of generators."""
        keep = sorted(set(keep))
        pos = {k: p for p, k in enumerate(keep)}
        coproduct = {}
        for k in keep:
            row = {}
            for (i, j), c in self.delta(k).items():
                if i not in pos or j not in pos:
                    raise FiltrationError("truncation is not closed under the coproduct", generator=self.names[k])
                row[(pos[i], pos[j])] = c
            coproduct[pos[k]] = row
        return type(self)(
            names=tuple(self.names[k] for k in keep),
            degrees=tuple(self.degrees[k] for k in keep),
            coproduct=coproduct,
            f0=tuple(pos[k] for k in self.f0 if k in pos),
            f1=tuple(pos[k] for k in self.f1 if k in pos),
        )


@dataclass(frozen=True, eq=False)
class LieCoalgebra(Coalgebra):
    """Graded Lie coalgebra: co-antisymmetric with the co-Jacobi identity; Q0 = f0, Q1 = f1."""

    kind = "lie-coalgebra"
    symmetry = -1


# ---------------------------------------------------------------------------
# Tensor operators
# ---------------------------------------------------------------------------

Tensor = Dict[Tuple[int, ...], Fraction]


def _accumulate(out: Tensor, key, c):
    if c:
        v = out.get(key, ZERO) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)


def swap(tensor: Tensor, degrees: Sequence[int]) -> Tensor:
    """S(a (x) b) = (-1)^{ab} b (x) a."""
    out: Tensor = {}
    for (a, b), c in tensor.items():
        _accumulate(out, (b, a), koszul(degrees[a] * degrees[b]) * c)
    return out


def cycle(tensor: Tensor, degrees: Sequence[int]) -> Tensor:
    """C(a (x) b (x) c) = (-1)^{a(b+c)} b (x) c (x) a."""
    out: Tensor = {}
    for (a, b, c), x in tensor.items():
        _accumulate(out, (b, c, a), koszul(degrees[a] * (degrees[b] + degrees[c])) * x)
    return out


def coproduct_of(coalgebra: Coalgebra, element: Mapping[int, Fraction]) -> Tensor:
    out: Tensor = {}
    for k, c in element.items():
        for key, d in coalgebra.delta(k).items():
            _accumulate(out, key, c * d)
    return out


def delta_tensor_left(coalgebra: Coalgebra, tensor: Tensor) -> Tensor:
    """(Delta (x) 1) on F (x) F; Delta has degree 0, so no sign."""
    out: Tensor = {}
    for (a, b), c in tensor.items():
        for (i, j), d in coalgebra.delta(a).items():
            _accumulate(out, (i, j, b), c * d)
    return out


def delta_tensor_right(coalgebra: Coalgebra, tensor: Tensor) -> Tensor:
    out: Tensor = {}
    for (a, b), c in tensor.items():
        for (i, j), d in coalgebra.delta(b).items():
            _accumulate(out, (a, i, j), c * d)
    return out


def graded_tensor_map(maps: Sequence[Mapping[int, Mapping[int, Fraction]]], map_degrees: Sequence[int],
                      tensor: Tensor, source_degrees: Sequence[int]) -> Tensor:
    """(f1 (x) ... (x) fn)(x1 (x) ... (x) xn) with (f (x) g)(x (x) y) = (-1)^{gx} f(x) (x) g(y)."""
    out: Tensor = {}
    for key, c in tensor.items():
        sign = 1
        passed = 0
        for pos, x in enumerate(key):
            sign *= koszul(map_degrees[pos] * passed)
            passed += source_degrees[x]
        partial = [((), Fraction(sign) * c)]
        for pos, x in enumerate(key):
            image = maps[pos].get(x, {})
            partial = [(acc + (t,), coeff * v) for acc, coeff in partial for t, v in image.items() if v]
        for target, coeff in partial:
            _accumulate(out, target, coeff)
    return out


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _validate_lie(g: GradedLieAlgebra) -> List[Violation]:
    found = g._check_symmetry(-1, "antisymmetry")
    found += g._check_grading("bracket")
    n = g.dim
    for i, j, k in itertools.combinations_with_replacement(range(n), 3):
        for a, b, c in sorted(set(itertools.permutations((i, j, k)))):
            ea, eb, ec = (unit_vector(n, x) for x in (a, b, c))
            da, db, dc = g.degrees[a], g.degrees[b], g.degrees[c]
            t1 = g.bracket(g.bracket(ea, eb), ec)
            t2 = g.bracket(g.bracket(eb, ec), ea)
            t3 = g.bracket(g.bracket(ec, ea), eb)
            s2 = koszul(da * (db + dc))
            s3 = koszul(dc * (da + db))
            total = tuple(x + s2 * y + s3 * z for x, y, z in zip(t1, t2, t3))
            if any(total):
                found.append(Violation("jacobi", (a, b, c), "cyclic sum is nonzero"))
                break
    return found


def _validate_assoc(g: AssocCommAlgebra) -> List[Violation]:
    found = g._check_symmetry(1, "commutativity")
    found += g._check_grading("product")
    n = g.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        ei, ej, ek = (unit_vector(n, x) for x in (i, j, k))
        if g.product(g.product(ei, ej), ek) != g.product(ei, g.product(ej, ek)):
            found.append(Violation("associativity", (i, j, k), "(ab)c != a(bc)"))
    return found


def _validate_coalgebra(f: Coalgebra) -> List[Violation]:
    found = []
    n = f.dim
    sym = f.symmetry
    name = "cocommutativity" if sym == 1 else "co-antisymmetry"
    for k in range(n):
        dk = f.delta(k)
        for (i, j), d in sorted(dk.items()):
            if d != sym * koszul(f.degrees[i] * f.degrees[j]) * dk.get((j, i), ZERO):
                found.append(Violation(name, (k, i, j), f"coefficient of {f.names[i]}(x){f.names[j]} in Delta {f.names[k]}"))
                break
        for (i, j) in sorted(dk):
            if f.degrees[k] != f.degrees[i] + f.degrees[j]:
                found.append(Violation("grading", (k, i, j), "coproduct does not preserve degree"))
        element = {k: Fraction(1)}
        twice_left = delta_tensor_left(f, coproduct_of(f, element))
        if sym == 1:
            twice_right = delta_tensor_right(f, coproduct_of(f, element))
            if twice_left != twice_right:
                found.append(Violation("coassociativity", (k,), f"(Delta(x)1)Delta != (1(x)Delta)Delta on {f.names[k]}"))
        else:
            c1 = cycle(twice_left, f.degrees)
            c2 = cycle(c1, f.degrees)
            total: Tensor = {}
            for t in (twice_left, c1, c2):
                for key, v in t.items():
                    _accumulate(total, key, v)
            if total:
                found.append(Violation("co-jacobi", (k,), f"(1+C+C^2)(Delta(x)1)Delta != 0 on {f.names[k]}"))
    f0, f1 = set(f.f0), set(f.f1)
    for k in sorted(f0 - f1):
        found.append(Violation("filtration", (k,), "F0 is not contained in F1"))
    for k in sorted(f0):
        if f.delta(k):
            found.append(Violation("filtration", (k,), "F0 generator has nonzero coproduct"))
    for k in range(n):
        for (i, j) in sorted(f.delta(k)):
            if i not in f1 or j not in f1:
                found.append(Violation("filtration", (k, i, j), "image of Delta is not in F1 (x) F1"))
                break
    return found


StructureLike = Union[GradedLieAlgebra, AssocCommAlgebra, Coalgebra]


def validate_structures(obj: StructureLike) -> ValidationReport:
    """Every violated identity with the basis indices witnessing it."""
    if isinstance(obj, FiniteDGLA):
        violations = _validate_lie(obj) + obj._check_differential("leibniz")
    elif isinstance(obj, GradedLieAlgebra):
        violations = _validate_lie(obj)
    elif isinstance(obj, DGCAlgebra):
        violations = _validate_assoc(obj) + obj._check_differential("leibniz")
    elif isinstance(obj, AssocCommAlgebra):
        violations = _validate_assoc(obj)
    elif isinstance(obj, Coalgebra):
        violations = _validate_coalgebra(obj)
    else:
        raise MalformedTableError("unsupported structure", type=type(obj).__name__)
    report = ValidationReport(obj.kind, tuple(violations))
    logger.debug("validated %s of dimension %d: %d violations", obj.kind, obj.dim, len(report.violations))
    return report


def require_valid(obj: StructureLike) -> None:
    report = validate_structures(obj)
    if not report.ok:
        first = report.violations[0]
        raise InvalidStructureError(f"{obj.kind} fails {first.identity} at {first.indices}",
                                    violations=report.violations)


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------

def _coordinate_span(span: EchelonSpan, n: int) -> Optional[Tuple[int, ...]]:
    """Indices k with e_k in the span, if the span is exactly spanned by such unit vectors."""
    inside = tuple(k for k in range(n) if span.contains(unit_vector(n, k)))
    return inside if len(inside) == len(span) else None


def _is_ideal(g: AssocCommAlgebra, indices: Sequence[int]) -> bool:
    members = set(indices)
    for i in members:
        for j in range(g.dim):
            for k in list(g.product_basis(i, j)) + list(g.product_basis(j, i)):
                if k not in members:
                    return False
    return True


def _resolve_filtration_part(g: AssocCommAlgebra, spec, keyword_default: str) -> Tuple[int, ...]:
    n = g.dim
    spec = keyword_default if spec is None else spec
    if isinstance(spec, str):
        if spec == "all":
            return tuple(range(n))
        spans = g.power_spans()
        if spec == "indecomposable":
            if len(spans) < 2:
                return tuple(range(n))
            square = _coordinate_span(spans[1], n)
            if square is None:
                raise FiltrationError("G^2 is not spanned by basis elements; give F0 explicitly")
            return tuple(k for k in range(n) if k not in square)
        if spec == "below-top":
            if len(spans) < 2:
                return tuple(range(n))
            top = _coordinate_span(spans[-1], n)
            if top is None:
                raise FiltrationError("top power of G is not spanned by basis elements; give F1 explicitly")
            return tuple(k for k in range(n) if k not in top)
        raise FiltrationError("unknown filtration keyword", keyword=spec)
    return tuple(sorted(g.index(name) if isinstance(name, str) else int(name) for name in spec))


def dualize(g: AssocCommAlgebra, filtration_spec: Optional[Mapping] = None,
            names: Optional[Sequence[str]] = None) -> Coalgebra:
    """Coalgebra on the dual basis: d_k^{ij} is the coefficient of g^k in g^i g^j.

    filtration_spec maps "F0" and "F1" to lists of basis names or to the
    keywords "indecomposable" (F0* = G/G^2, the default for F0), "below-top"
    (F1* = G modulo its top nonzero power, the default for F1) and "all".
    """
    require_valid(g)
    spec = dict(filtration_spec or {})
    f0 = _resolve_filtration_part(g, spec.get("F0"), "indecomposable")
    f1 = _resolve_filtration_part(g, spec.get("F1"), "below-top")
    n = g.dim
    i0 = [k for k in range(n) if k not in f0]
    i1 = [k for k in range(n) if k not in f1]
    if not _is_ideal(g, i0):
        raise FiltrationError("complement of F0 is not an ideal of G")
    if not _is_ideal(g, i1):
        raise FiltrationError("complement of F1 is not an ideal of G")
    coproduct: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
    for (i, j), row in g.table.items():
        for k, c in row.items():
            coproduct.setdefault(k, {})[(i, j)] = c
    coalgebra = Coalgebra(
        names=tuple(names) if names is not None else g.names,
        degrees=g.degrees,
        coproduct=coproduct,
        f0=f0,
        f1=f1,
    )
    report = validate_structures(coalgebra)
    if not report.ok:
        first = report.violations[0]
        if first.identity == "filtration":
            raise FiltrationError(f"filtration is not admissible: {first.detail}", indices=first.indices)
        raise InvalidStructureError(f"dual coalgebra fails {first.identity}", violations=report.violations)
    return coalgebra


def dual_algebra(f: Coalgebra) -> AssocCommAlgebra:
    """Transpose back: g^i g^j = sum_k d_k^{ij} g^k."""
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for k, terms in f.coproduct.items():
        for (i, j), d in terms.items():
            table.setdefault((i, j), {})[k] = d
    return AssocCommAlgebra(names=f.names, degrees=f.degrees, table=table)


@dataclass(frozen=True, eq=False)
class LocalBaseAlgebra(AssocCommAlgebra):
    """Maximal ideal of a local base S = K1 + m; the unit is implicit and not stored."""

    kind = "local-base"

    @property
    def nilpotency(self) -> int:
        """Smallest N with m^N = 0."""
        return len(self.power_spans()) + 1

    def is_nilpotent(self) -> bool:
        return len(self.power_spans()) <= self.dim

    def indecomposables(self) -> Tuple[int, ...]:
        return _resolve_filtration_part(self, "indecomposable", "indecomposable")
