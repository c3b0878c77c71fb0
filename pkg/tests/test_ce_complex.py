import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.algebra_defs import GradedLieAlgebra, koszul
from services.builders import STANDARD_LIE_ALGEBRAS, abelian_lie_algebra, heisenberg_lie_algebra
from services.ce_complex import (
    CEComplex,
    Cochain,
    bracket_cochain,
    ce_differential,
    cochain_dimension,
    cohomology,
    insertion,
    nr_bracket,
)
from services.errors import DegreeMismatchError, ParentMismatchError
from services.exact_core import add
from utils.generate_test_data import TestDataGenerator

NAMES = ["abelian2", "heisenberg", "sl2", "aff1"]
seeds = st.integers(min_value=0, max_value=10 ** 6)


def test_cochain_dimensions():
    assert cochain_dimension(3, 0) == 3
    assert cochain_dimension(3, 2) == 9
    assert cochain_dimension(3, 4) == 0


def test_from_terms_extends_by_antisymmetry(lie_algebras):
    g = lie_algebras["heisenberg"]
    phi = Cochain.from_terms(g, 2, {(1, 0): {2: 1}})
    assert phi.value((0, 1)) == (0, 0, -1)
    assert phi.value((1, 0)) == (0, 0, 1)
    assert phi.value((1, 1)) == (0, 0, 0)


def test_cohomology_dimensions(lie_algebras):
    abelian = lie_algebras["abelian2"]
    assert [cohomology(abelian, q).dimension for q in range(3)] == [2, 4, 2]
    assert cohomology(lie_algebras["heisenberg"], 0).dimension == 1
    assert [cohomology(lie_algebras["sl2"], q).dimension for q in range(4)] == [0, 0, 0, 0]


def test_cohomology_degree_out_of_range(lie_algebras):
    with pytest.raises(DegreeMismatchError):
        cohomology(lie_algebras["heisenberg"], 4)
    with pytest.raises(DegreeMismatchError):
        cohomology(lie_algebras["heisenberg"], -1)


def odd_square():
    """x in degree 1, y = [x, x] in degree 2."""
    return GradedLieAlgebra(names=("x", "y"), degrees=(1, 2), table={(0, 0): {1: 1}})


def test_graded_cochains_store_their_internal_degree():
    g = odd_square()
    phi = Cochain.from_terms(g, 1, {(0,): {1: 1}}, internal_degree=1)
    assert phi.internal_degree == 1
    assert phi.degree == 1
    assert (phi + phi).internal_degree == 1
    assert (-phi).scaled(3).internal_degree == 1
    with pytest.raises(DegreeMismatchError):
        Cochain.from_terms(g, 1, {(0,): {1: 1}})
    with pytest.raises(DegreeMismatchError):
        Cochain.from_terms(g, 1, {(0,): {1: 1}, (1,): {0: 1}}, internal_degree=1)


def test_graded_lie_algebras_have_no_ce_complex():
    g = odd_square()
    phi = Cochain.from_terms(g, 1, {(0,): {1: 1}}, internal_degree=1)
    with pytest.raises(DegreeMismatchError):
        CEComplex(g)
    with pytest.raises(DegreeMismatchError):
        cohomology(g, 1)
    with pytest.raises(DegreeMismatchError):
        bracket_cochain(g)
    with pytest.raises(DegreeMismatchError):
        ce_differential(g, phi)
    with pytest.raises(DegreeMismatchError):
        nr_bracket(phi, phi)


def test_internal_degree_over_an_ungraded_lie_algebra(lie_algebras):
    g = lie_algebras["sl2"]
    with pytest.raises(DegreeMismatchError):
        Cochain.from_terms(g, 1, {(0,): {1: 1}}, internal_degree=1)
    shifted = Cochain.zero(g, 2, internal_degree=1)
    assert shifted.degree == 2
    assert shifted != Cochain.zero(g, 2)
    with pytest.raises(DegreeMismatchError):
        shifted + Cochain.zero(g, 2)
    bracket = nr_bracket(shifted, Cochain.zero(g, 1, internal_degree=2))
    assert bracket.internal_degree == 3
    assert bracket.degree == shifted.degree + 2
    assert ce_differential(g, shifted).internal_degree == 1


def test_brackets_need_a_common_parent():
    a, b = heisenberg_lie_algebra(), heisenberg_lie_algebra()
    with pytest.raises(ParentMismatchError):
        nr_bracket(bracket_cochain(a), bracket_cochain(b))
    with pytest.raises(ParentMismatchError):
        bracket_cochain(a) + bracket_cochain(b)


def test_insertion_into_a_constant_is_zero(lie_algebras):
    g = lie_algebras["sl2"]
    gen = TestDataGenerator(3)
    phi, psi = gen.cochain(g, 0), gen.cochain(g, 2)
    assert insertion(phi, psi).is_zero()


def test_bracket_of_m_with_itself_vanishes(lie_algebras):
    for g in lie_algebras.values():
        m = bracket_cochain(g)
        assert nr_bracket(m, m).is_zero()


def test_bracket_of_m_measures_the_jacobiator():
    # [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = e3 violates Jacobi on (e1, e2, e3)
    g = GradedLieAlgebra(names=("e1", "e2", "e3"), degrees=(0, 0, 0), table={
        (0, 1): {2: 1}, (1, 0): {2: -1},
        (1, 2): {0: 1}, (2, 1): {0: -1},
        (0, 2): {2: 1}, (2, 0): {2: -1},
    })
    m = bracket_cochain(g)
    jac = [0, 0, 0]
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        inner = g.bracket(*(tuple(1 if k == x else 0 for k in range(3)) for x in (a, b)))
        outer = g.bracket(inner, tuple(1 if k == c else 0 for k in range(3)))
        jac = [x + y for x, y in zip(jac, outer)]
    assert nr_bracket(m, m).value((0, 1, 2)) == tuple(-2 * x for x in jac)


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_differential_squares_to_zero(name, seed):
    g = STANDARD_LIE_ALGEBRAS[name]()
    gen = TestDataGenerator(seed)
    for arity in range(g.dim):
        phi = gen.cochain(g, arity)
        assert ce_differential(g, ce_differential(g, phi)).is_zero()


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_differential_is_bracket_with_m(name, seed):
    g = STANDARD_LIE_ALGEBRAS[name]()
    gen = TestDataGenerator(seed)
    m = bracket_cochain(g)
    for arity in range(g.dim + 1):
        phi = gen.cochain(g, arity)
        assert ce_differential(g, phi) == nr_bracket(m, phi)


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_bracket_is_graded_antisymmetric(name, seed):
    g = STANDARD_LIE_ALGEBRAS[name]()
    gen = TestDataGenerator(seed)
    for p in range(1, 4):
        for q in range(1, 4):
            phi, psi = gen.cochain(g, p), gen.cochain(g, q)
            sign = -koszul((p - 1) * (q - 1))
            assert nr_bracket(phi, psi) == nr_bracket(psi, phi).scaled(sign)


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=10, deadline=None)
@given(seed=seeds)
def test_bracket_satisfies_graded_jacobi(name, seed):
    g = STANDARD_LIE_ALGEBRAS[name]()
    gen = TestDataGenerator(seed)
    arities = [int(x) for x in gen.rng.integers(1, 3, size=3)]
    a, b, c = (gen.cochain(g, p) for p in arities)
    da, db, dc = (p - 1 for p in arities)
    total = (nr_bracket(a, nr_bracket(b, c)).scaled(koszul(da * dc))
             + nr_bracket(b, nr_bracket(c, a)).scaled(koszul(db * da))
             + nr_bracket(c, nr_bracket(a, b)).scaled(koszul(dc * db)))
    assert total.is_zero()


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=10, deadline=None)
@given(seed=seeds)
def test_differential_is_a_derivation(name, seed):
    g = STANDARD_LIE_ALGEBRAS[name]()
    gen = TestDataGenerator(seed)
    p, q = 1 + int(gen.rng.integers(0, 2)), 1 + int(gen.rng.integers(0, 2))
    phi, psi = gen.cochain(g, p), gen.cochain(g, q)
    lhs = ce_differential(g, nr_bracket(phi, psi))
    rhs = nr_bracket(ce_differential(g, phi), psi) + nr_bracket(phi, ce_differential(g, psi)).scaled(koszul(p - 1))
    assert lhs == rhs


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_cocycles_decompose_into_class_and_coboundary(seed):
    g = heisenberg_lie_algebra()
    ambient = CEComplex(g)
    gen = TestDataGenerator(seed)
    z = gen.cocycle(ambient, 1)
    space = ambient.cohomology(1)
    coords, preimage = space.decompose(z)
    rebuilt = add(space.quotient.lift(coords), ce_differential(g, preimage).values)
    assert rebuilt == tuple(z)


def test_abelian_second_cohomology_is_all_cochains():
    g = abelian_lie_algebra(2)
    h2 = cohomology(g, 2)
    assert h2.dimension == 2
    assert [rep.arity for rep in h2.representatives] == [2, 2]
