"""
Seeded random inputs for the property suites: rationals, cochains, cocycles,
defining systems, Maurer-Cartan brackets and mutated structure tables.
Every generator is reproducible from its seed.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from agents.deformation_agent import DeformedBracket, integrate
from agents.massey_dgla_agent import ClassAssignment, coalgebra_stages
from agents.stage_search import INITIAL, SOLVE, stage_rhs
from services.algebra_defs import Coalgebra, GradedLieAlgebra, LocalBaseAlgebra, Tensor
from services.ce_complex import Cochain, ce_differential, cochain_dimension, cohomology
from services.exact_core import Vector, add, combine, solve_affine, zero_vector

DENOMINATORS = (1, 1, 1, 2, 3)


class TestDataGenerator:
    """Random exact data; the numpy generator only picks small integers."""

    __test__ = False

    def __init__(self, seed: int = 0):
        self.rng = np.random.default_rng(seed)

    def rational(self, bound: int = 3) -> Fraction:
        num = int(self.rng.integers(-bound, bound + 1))
        den = int(self.rng.choice(DENOMINATORS))
        return Fraction(num, den)

    def vector(self, n: int, density: float = 0.6) -> Vector:
        return tuple(self.rational() if self.rng.random() < density else Fraction(0) for _ in range(n))

    def cochain(self, g: GradedLieAlgebra, arity: int, density: float = 0.6) -> Cochain:
        return Cochain(g, arity, self.vector(cochain_dimension(g.dim, arity), density))

    def cocycle(self, ambient, degree: int) -> Vector:
        """Random class representative plus a random boundary."""
        space = ambient.cohomology(degree)
        reps = space.quotient.representatives
        z = combine([self.rational() for _ in reps], reps, ambient.dimension(degree)) if reps \
            else zero_vector(ambient.dimension(degree))
        if degree > 0 and ambient.dimension(degree - 1):
            z = add(z, ambient.apply_differential(degree - 1, self.vector(ambient.dimension(degree - 1))))
        return z

    def defining_system(self, ambient, coalgebra: Coalgebra) -> Optional[Dict[str, Vector]]:
        """Random classes on F0, random particular solutions on F1; None when a stage is obstructed."""
        classes = ClassAssignment({k: tuple(self.rational() for _ in range(
            ambient.cohomology(coalgebra.degrees[k] + 1).dimension)) for k in coalgebra.f0})
        stages = coalgebra_stages(coalgebra, classes)
        degrees = {s.key: s.degree for s in stages}
        values: Dict[str, Vector] = {}
        for stage in stages:
            if stage.role == INITIAL:
                space = ambient.cohomology(stage.degree)
                v = space.quotient.lift(stage.class_coordinates)
                if stage.degree > 0 and ambient.dimension(stage.degree - 1):
                    v = add(v, ambient.apply_differential(stage.degree - 1,
                                                          self.vector(ambient.dimension(stage.degree - 1))))
                values[stage.key] = v
            elif stage.role == SOLVE:
                rhs = stage_rhs(ambient, stage, values, degrees)
                solution = solve_affine(ambient.differential(stage.degree), rhs)
                if solution is None:
                    return None
                kernel = solution.kernel_basis
                v = solution.particular
                if kernel:
                    v = add(v, combine([self.rational() for _ in kernel], kernel, len(v)))
                values[stage.key] = v
        return values

    def deformation(self, g: GradedLieAlgebra, base: LocalBaseAlgebra) -> Optional[DeformedBracket]:
        """Integrated deformation from random classes; None when obstructed."""
        h2 = cohomology(g, 2).dimension
        a = {base.names[k]: [self.rational() for _ in range(h2)] for k in base.indecomposables()}
        result = integrate(g, base, a, order=max(base.nilpotency - 1, 1))
        return result.bracket

    @staticmethod
    def socle(base: LocalBaseAlgebra) -> List[int]:
        """Basis elements of m annihilated by m."""
        return [i for i in range(base.dim) if all(not base.product_basis(i, j) for j in range(base.dim))]

    def perturbed(self, tau: DeformedBracket, k: Optional[int] = None, attempts: int = 20) -> Optional[DeformedBracket]:
        """Add a cochain with nonzero differential on a socle element of m; None if none was drawn."""
        k = self.socle(tau.base)[-1] if k is None else k
        for _ in range(attempts):
            eps = self.cochain(tau.g, 2)
            if not ce_differential(tau.g, eps).is_zero():
                cochains = dict(tau.cochains)
                cochains[k] = tau.cochain(k) + eps
                return DeformedBracket(tau.base, tau.g, cochains)
        return None

    def coboundary_shifted(self, tau: DeformedBracket, attempts: int = 20) -> Optional[DeformedBracket]:
        """Add a nonzero coboundary on every socle element of m; Maurer-Cartan is unchanged there."""
        cochains = dict(tau.cochains)
        shifted = False
        for k in self.socle(tau.base):
            for _ in range(attempts):
                shift = ce_differential(tau.g, self.cochain(tau.g, 1))
                if not shift.is_zero():
                    cochains[k] = tau.cochain(k) + shift
                    shifted = True
                    break
        return DeformedBracket(tau.base, tau.g, cochains) if shifted else None

    def random_bracket(self, g: GradedLieAlgebra, base: LocalBaseAlgebra) -> DeformedBracket:
        return DeformedBracket(base, g, {k: self.cochain(g, 2, 0.3) for k in range(base.dim)})

    def random_tensor(self, coalgebra: Coalgebra, arity: int, terms: int = 4) -> Tensor:
        out: Tensor = {}
        for _ in range(terms):
            key = tuple(int(i) for i in self.rng.integers(0, coalgebra.dim, size=arity))
            c = self.rational()
            if c:
                out[key] = out.get(key, Fraction(0)) + c
        return {k: v for k, v in out.items() if v}

    def mutated_lie_algebra(self, g: GradedLieAlgebra) -> GradedLieAlgebra:
        """Change one structure constant c_{ij}^k (and its antisymmetric partner)."""
        pairs: List[Sequence[int]] = [(i, j) for i in range(g.dim) for j in range(i + 1, g.dim)]
        i, j = pairs[int(self.rng.integers(0, len(pairs)))]
        k = int(self.rng.integers(0, g.dim))
        delta = Fraction(0)
        while not delta:
            delta = self.rational()
        table = {key: dict(row) for key, row in g.table.items()}
        for (a, b), sign in (((i, j), 1), ((j, i), -1)):
            row = table.setdefault((a, b), {})
            row[k] = row.get(k, Fraction(0)) + sign * delta
            if not row[k]:
                del row[k]
        return GradedLieAlgebra(names=g.names, degrees=g.degrees, table=table)
