"""
Exact rational linear algebra.

Dense matrices over Fraction, an affine solver with a canonical pivot rule
(first nonzero entry, columns left to right, rows top to bottom) and a
subquotient helper that realises H = Z / B with explicit witnesses.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from services.errors import DimensionMismatchError, NotInSpanError

Scalar = Fraction
Vector = Tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating-point input is not accepted; pass an int, a Fraction or a 'p/q' string")
    return Fraction(value)


def vector(values: Iterable) -> Vector:
    return tuple(to_scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError("vector lengths differ", left=len(u), right=len(v))
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatchError("vector lengths differ", left=len(u), right=len(v))
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def combine(coefficients: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n: int) -> Vector:
    """Linear combination sum c_i v_i in a space of dimension n."""
    out = [ZERO] * n
    for c, v in zip(coefficients, vectors):
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x:
                out[k] += c * x
    return tuple(out)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                "entries do not fill the matrix", rows=self.rows, cols=self.cols, entries=len(self.entries)
            )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat: List[Fraction] = []
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatchError("ragged rows", expected=cols, got=len(r))
            flat.extend(to_scalar(x) for x in r)
        return cls(len(rows), cols, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        for c in columns:
            if len(c) != rows:
                raise DimensionMismatchError("column length differs from row count", expected=rows, got=len(c))
        flat = [to_scalar(columns[j][i]) for i in range(rows) for j in range(len(columns))]
        return cls(rows, len(columns), tuple(flat))

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "Matrix":
        return Matrix.from_columns([self.row(i) for i in range(self.rows)], self.cols)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError("vector does not match matrix columns", cols=self.cols, got=len(v))
        out = []
        for i in range(self.rows):
            base = i * self.cols
            s = ZERO
            for j, x in enumerate(v):
                if x:
                    a = self.entries[base + j]
                    if a:
                        s += a * x
            out.append(s)
        return tuple(out)


@dataclass(frozen=True)
class AffineSolution:
    particular: Vector
    kernel_basis: Tuple[Vector, ...]


def _row_reduce(m: Matrix, y: Optional[Sequence[Fraction]]):
    """Reduced row echelon form with the canonical pivot rule.

    Returns (rows, rhs, pivot_columns, free_columns).
    """
    a = [list(m.row(i)) for i in range(m.rows)]
    t = list(y) if y is not None else None
    pivots: List[int] = []
    free: List[int] = []
    piv_r = 0
    for piv_c in range(m.cols):
        pick = None
        for i_row in range(piv_r, m.rows):
            if a[i_row][piv_c] != 0:
                pick = i_row
                break
        if pick is None:
            free.append(piv_c)
            continue
        if pick != piv_r:
            a[piv_r], a[pick] = a[pick], a[piv_r]
            if t is not None:
                t[piv_r], t[pick] = t[pick], t[piv_r]
        fp = a[piv_r][piv_c]
        if fp != 1:
            a[piv_r] = [x / fp for x in a[piv_r]]
            if t is not None:
                t[piv_r] = t[piv_r] / fp
        for r in range(m.rows):
            if r == piv_r:
                continue
            fr = a[r][piv_c]
            if fr == 0:
                continue
            row_p = a[piv_r]
            a[r] = [x - fr * p for x, p in zip(a[r], row_p)]
            if t is not None:
                t[r] -= fr * t[piv_r]
        pivots.append(piv_c)
        piv_r += 1
    return a, t, pivots, free


def rank(m: Matrix) -> int:
    _, _, pivots, _ = _row_reduce(m, None)
    return len(pivots)


def solve_affine(m: Matrix, y: Sequence) -> Optional[AffineSolution]:
    """Solve M x = y exactly.

    Returns None when y is outside the column space. The particular solution
    sets every free variable to zero; kernel vectors are indexed by free
    columns in increasing order.
    """
    if len(y) != m.rows:
        raise DimensionMismatchError("right-hand side length differs from row count", rows=m.rows, got=len(y))
    a, t, pivots, free = _row_reduce(m, vector(y))
    rk = len(pivots)
    for r in range(rk, m.rows):
        if t[r] != 0:
            return None
    particular = [ZERO] * m.cols
    for r, c in enumerate(pivots):
        particular[c] = t[r]
    kernel = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            if a[r][f] != 0:
                v[c] = -a[r][f]
        kernel.append(tuple(v))
    return AffineSolution(tuple(particular), tuple(kernel))


def kernel_basis(m: Matrix) -> Tuple[Vector, ...]:
    sol = solve_affine(m, zero_vector(m.rows))
    return sol.kernel_basis


class EchelonSpan:
    """Incrementally maintained span used for independence tests."""

    def __init__(self, dim: int):
        self.dim = dim
        self._pivots: Dict[int, List[Fraction]] = {}

    def reduce(self, v: Sequence[Fraction]) -> List[Fraction]:
        w = list(v)
        for p in sorted(self._pivots):
            c = w[p]
            if c != 0:
                row = self._pivots[p]
                w = [x - c * r for x, r in zip(w, row)]
        return w

    def add(self, v: Sequence[Fraction]) -> bool:
        w = self.reduce(v)
        lead = next((i for i, x in enumerate(w) if x != 0), None)
        if lead is None:
            return False
        c = w[lead]
        w = [x / c for x in w]
        for p, row in self._pivots.items():
            f = row[lead]
            if f != 0:
                self._pivots[p] = [x - f * y for x, y in zip(row, w)]
        self._pivots[lead] = w
        return True

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero(self.reduce(v))

    def __len__(self):
        return len(self._pivots)


@dataclass(frozen=True)
class Decomposition:
    coordinates: Vector
    remainder: Vector
    boundary_coefficients: Vector


@dataclass(frozen=True)
class Subquotient:
    ambient_dim: int
    representatives: Tuple[Vector, ...]
    boundary_basis: Tuple[Vector, ...]
    _decompose: Callable[[Sequence[Fraction]], Decomposition] = field(repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def decompose(self, v: Sequence[Fraction]) -> Decomposition:
        return self._decompose(v)

    def lift(self, coordinates: Sequence) -> Vector:
        coords = vector(coordinates)
        if len(coords) != self.dimension:
            raise DimensionMismatchError("class coordinates do not match the quotient dimension",
                                         expected=self.dimension, got=len(coords))
        return combine(coords, self.representatives, self.ambient_dim)


def subquotient(z: Sequence[Sequence], b: Sequence[Sequence], ambient_dim: Optional[int] = None) -> Subquotient:
    """span(Z) / span(B) with representatives drawn from Z in order."""
    z = [vector(v) for v in z]
    b = [vector(v) for v in b]
    if ambient_dim is None:
        if z:
            ambient_dim = len(z[0])
        elif b:
            ambient_dim = len(b[0])
        else:
            ambient_dim = 0
    for v in list(z) + list(b):
        if len(v) != ambient_dim:
            raise DimensionMismatchError("vector length differs from ambient dimension",
                                         expected=ambient_dim, got=len(v))

    z_span = EchelonSpan(ambient_dim)
    for v in z:
        z_span.add(v)
    for i, v in enumerate(b):
        if not z_span.contains(v):
            raise NotInSpanError("boundary vector is outside span(Z)", index=i)

    working = EchelonSpan(ambient_dim)
    boundary_basis: List[Vector] = []
    for v in b:
        if working.add(v):
            boundary_basis.append(v)
    reps: List[Vector] = []
    for v in z:
        if working.add(v):
            reps.append(v)

    columns = reps + boundary_basis
    basis_matrix = Matrix.from_columns(columns, ambient_dim) if columns else Matrix.zeros(ambient_dim, 0)
    n_reps = len(reps)

    def _decompose(v: Sequence) -> Decomposition:
        v = vector(v)
        if len(v) != ambient_dim:
            raise DimensionMismatchError("vector length differs from ambient dimension",
                                         expected=ambient_dim, got=len(v))
        sol = solve_affine(basis_matrix, v)
        if sol is None:
            raise NotInSpanError("vector is outside span(Z)")
        coeffs = sol.particular
        remainder = combine(coeffs[n_reps:], boundary_basis, ambient_dim)
        return Decomposition(coeffs[:n_reps], remainder, coeffs[n_reps:])

    return Subquotient(ambient_dim, tuple(reps), tuple(boundary_basis), _decompose)
