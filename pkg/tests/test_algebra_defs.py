from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from services.algebra_defs import (
    Coalgebra,
    FiniteDGLA,
    GradedLieAlgebra,
    cycle,
    delta_tensor_left,
    delta_tensor_right,
    dual_algebra,
    dualize,
    graded_tensor_map,
    koszul,
    require_valid,
    swap,
    validate_structures,
)
from services.builders import (
    build_standard_coalgebra,
    build_upper_triangular_lie_coalgebra,
    cusp_base,
    exterior_algebra,
    pair_base,
    power_series_base,
)
from services.ce_complex import bracket_cochain, nr_bracket
from services.errors import FiltrationError, InvalidStructureError, MalformedTableError, UsageError
from services.exact_core import scale, unit_vector
from utils.generate_test_data import TestDataGenerator

HALF = Fraction(1, 2)


def identities(report):
    return {v.identity for v in report.violations}


def test_standard_lie_algebras_validate(lie_algebras):
    for g in lie_algebras.values():
        assert validate_structures(g).ok


def test_jacobi_violation_reports_indices():
    g = GradedLieAlgebra(names=("e1", "e2", "e3"), degrees=(0, 0, 0), table={
        (0, 1): {2: 1}, (1, 0): {2: -1},
        (1, 2): {0: 1}, (2, 1): {0: -1},
        (0, 2): {2: 1}, (2, 0): {2: -1},
    })
    report = validate_structures(g)
    assert not report.ok
    assert "jacobi" in identities(report)
    assert all(len(v.indices) == 3 for v in report.violations if v.identity == "jacobi")
    with pytest.raises(InvalidStructureError):
        require_valid(g)


def test_antisymmetry_violation():
    g = GradedLieAlgebra(names=("e1", "e2"), degrees=(0, 0), table={(0, 1): {1: 1}})
    assert identities(validate_structures(g)) == {"antisymmetry"}


def test_table_index_out_of_range():
    with pytest.raises(MalformedTableError):
        GradedLieAlgebra(names=("e1",), degrees=(0,), table={(0, 3): {0: 1}})


@pytest.mark.parametrize("name", ["heisenberg", "sl2", "aff1"])
def test_mutations_break_validation_and_bracket_together(lie_algebras, name):
    gen = TestDataGenerator(seed=11)
    for _ in range(20):
        g = gen.mutated_lie_algebra(lie_algebras[name])
        m = bracket_cochain(g)
        assert validate_structures(g).ok == nr_bracket(m, m).is_zero()


def test_finite_dgla_checks_differential():
    good = FiniteDGLA(names=("x", "y"), degrees=(1, 2), table={(0, 0): {1: 1}}, differential={})
    assert validate_structures(good).ok
    bad = FiniteDGLA(names=("x", "y"), degrees=(1, 2), table={(0, 0): {1: 1}}, differential={0: {0: 1}})
    assert "differential_degree" in identities(validate_structures(bad))


def test_exterior_algebra_is_a_dgca(triple_algebra):
    assert triple_algebra.names == ("1", "x", "y", "z", "xy", "xz", "yz", "xyz")
    assert validate_structures(triple_algebra).ok
    z = unit_vector(8, triple_algebra.index("z"))
    assert triple_algebra.apply_differential(z) == unit_vector(8, triple_algebra.index("xy"))


@pytest.mark.parametrize("kind,params", [
    ("classical", {"degrees": [1, 1, 1]}),
    ("classical", {"degrees": [2, 1, 3]}),
    ("one-param", {"order": 6}),
    ("singular", {"order": 8}),
    ("pair", {"order": 6}),
])
def test_standard_coalgebras_validate(kind, params):
    assert validate_structures(build_standard_coalgebra(kind, **params)).ok


def test_upper_triangular_lie_coalgebra_validates():
    q = build_upper_triangular_lie_coalgebra([1, 1, 1])
    assert q.kind == "lie-coalgebra"
    assert q.names == ("f1_2", "f2_3", "f3_4", "f1_3", "f2_4", "f1_4")
    assert validate_structures(q).ok
    blocked = build_upper_triangular_lie_coalgebra([1, 2], block_sizes=[1, 2, 1])
    assert validate_structures(blocked).ok


EXPLICIT_ONE_PARAM = {1: {(0, 0): Fraction(-1, 2)}, 2: {(0, 1): Fraction(-1, 2), (1, 0): Fraction(-1, 2)}}


def test_explicit_table_reproduces_the_one_param_coalgebra():
    explicit = build_standard_coalgebra("explicit-table", degrees=[1, 1, 1], coefficients=EXPLICIT_ONE_PARAM)
    named = build_standard_coalgebra("one-param", order=3)
    assert explicit.degrees == named.degrees
    assert explicit.f0 == named.f0 == (0,)
    assert all(explicit.delta(k) == named.delta(k) for k in range(3))


def test_explicit_table_symmetrizes_and_shifts_signs():
    f = build_standard_coalgebra("explicit-table", degrees=[2, 2, 3], coefficients={2: {(0, 1): 1}})
    assert f.degrees == (1, 1, 2)
    assert f.f0 == (0, 1)
    # c' = 1/2 on (0, 1) and -1/2 on (1, 0); d = -c' for q_i = 2
    assert f.delta(2) == {(0, 1): Fraction(-1, 2), (1, 0): Fraction(1, 2)}


@pytest.mark.parametrize("coefficients", [
    {1: {(1, 0): 1}},
    {0: {(1, 2): 1}},
])
def test_explicit_table_support_condition(coefficients):
    with pytest.raises(InvalidStructureError):
        build_standard_coalgebra("explicit-table", degrees=[1, 1, 1], coefficients=coefficients)


def test_explicit_table_support_condition_checks_degrees():
    with pytest.raises(InvalidStructureError):
        build_standard_coalgebra("explicit-table", degrees=[1, 1, 2], coefficients={2: {(0, 1): 1}})


def test_unknown_coalgebra_kind():
    with pytest.raises(UsageError):
        build_standard_coalgebra("nonsense")
    with pytest.raises(UsageError):
        build_standard_coalgebra("one-param", order=0)


def test_cocommutativity_violation():
    f = Coalgebra(names=("f1", "f2", "f3"), degrees=(0, 0, 0), coproduct={2: {(0, 1): 1}}, f0=(0, 1), f1=(0, 1, 2))
    assert "cocommutativity" in identities(validate_structures(f))


def test_filtration_violation():
    f = Coalgebra(names=("f1", "f2"), degrees=(0, 0), coproduct={1: {(0, 0): 1}}, f0=(0, 1), f1=(0, 1))
    assert "filtration" in identities(validate_structures(f))


def test_dualize_power_series():
    f = dualize(power_series_base(3))
    assert f.names == ("t", "t^2", "t^3")
    assert f.delta(1) == {(0, 0): 1}
    assert f.delta(2) == {(0, 1): 1, (1, 0): 1}
    assert f.f0 == (0,)
    # F1* = m / m^3
    assert f.f1 == (0, 1)
    assert dualize(power_series_base(3), {"F1": "all"}).f1 == (0, 1, 2)


def test_dualize_default_filtration_without_products():
    f = dualize(power_series_base(1))
    assert f.f0 == f.f1 == (0,)


def test_dualize_cusp_drops_only_the_top_power():
    base = cusp_base(8)
    f = dualize(base)
    assert tuple(base.names[k] for k in range(base.dim) if k not in f.f1) == (base.names[-1],)


def test_dualize_rejects_non_ideal_filtration():
    with pytest.raises(FiltrationError):
        dualize(power_series_base(3), {"F0": ["t^2"]})


def test_one_param_dual_multiplies_with_minus_half():
    a = dual_algebra(build_standard_coalgebra("one-param", order=5))
    for k in range(1, 5):
        for l in range(1, 6 - k):
            assert a.product_basis(k - 1, l - 1) == {k + l - 1: -HALF}


def test_classical_dual_product_signs():
    a = dual_algebra(build_standard_coalgebra("classical", degrees=[2, 2]))
    f1, f2, f12 = a.index("f1"), a.index("f2"), a.index("f12")
    # epsilon = (q2 + 1)(q1 + 1) = 9 is odd
    assert a.product_basis(f1, f2) == {f12: HALF}
    assert a.product_basis(f2, f1) == {f12: -HALF}


def test_pair_dual_relation():
    a = dual_algebra(build_standard_coalgebra("pair", order=4))
    t = unit_vector(a.dim, a.index("f1"))
    u = unit_vector(a.dim, a.index("phi2"))
    uu = a.product(u, u)
    t2u = a.product(a.product(t, t), u)
    assert any(uu)
    assert uu == scale(Fraction(-2), t2u)


def test_indecomposables_are_the_dual_of_g_mod_g_squared():
    assert dualize(cusp_base(8)).f0 == (0, 1)
    pair = pair_base(4)
    assert tuple(pair.names[k] for k in dualize(pair).f0) == ("t", "u")


def test_local_base_nilpotency():
    base = power_series_base(4)
    assert base.nilpotency == 5
    assert base.is_nilpotent()


def test_truncation_must_be_delta_closed():
    f = build_standard_coalgebra("one-param", order=5)
    assert validate_structures(f.truncate([0, 1, 2])).ok
    with pytest.raises(FiltrationError):
        f.truncate([0, 2])


def _shifted_map(gen, degrees):
    """A degree-one map F -> sF: basis element i goes to elements of the same F-degree."""
    out = {}
    for i, d in enumerate(degrees):
        image = {j: gen.rational() for j, e in enumerate(degrees) if e == d}
        out[i] = {j: c for j, c in image.items() if c}
    return out


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_coassociativity_through_swap_and_cycle(seed):
    gen = TestDataGenerator(seed)
    f = build_standard_coalgebra("classical", degrees=[2, 1, 2])
    tensor = gen.random_tensor(f, 2)
    assert delta_tensor_left(f, tensor) == cycle(delta_tensor_right(f, swap(tensor, f.degrees)), f.degrees)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_cycle_commutes_with_degree_one_maps(seed):
    gen = TestDataGenerator(seed)
    f = build_standard_coalgebra("classical", degrees=[2, 1, 3])
    alpha = _shifted_map(gen, f.degrees)
    shifted = [d + 1 for d in f.degrees]
    tensor = gen.random_tensor(f, 3)
    lhs = cycle(graded_tensor_map([alpha] * 3, [1] * 3, tensor, f.degrees), shifted)
    rhs = graded_tensor_map([alpha] * 3, [1] * 3, cycle(tensor, f.degrees), f.degrees)
    assert lhs == rhs


def test_koszul():
    assert koszul(0) == 1
    assert koszul(3) == -1
    assert koszul(-2) == 1


def test_exterior_builder_rejects_unknown_monomial():
    with pytest.raises(MalformedTableError):
        exterior_algebra(["x", "y"], {"x": {"yz": 1}})
