import itertools

import pytest

from agents.massey_dgca_agent import (
    DefiningSystemDGCA,
    dgca_massey,
    dgca_symbol,
    entry_key,
    lie_coalgebra_massey,
    matric_massey,
)
from services.builders import build_upper_triangular_lie_coalgebra, exterior_algebra, upper_triangular_positions
from services.ce_complex import TableComplex
from services.errors import ClassCoordinateError, DegreeMismatchError, DimensionMismatchError, UsageError
from services.exact_core import add, scale, vector

X, Y = (1, 0), (0, 1)
XXY = [(1, X), (1, X), (1, Y)]


@pytest.mark.parametrize("mode", ["greedy", "backtrack"])
def test_triple_product_of_x_x_y(triple_algebra, mode):
    result = dgca_massey(triple_algebra, XXY, mode=mode, budget=16)
    assert result.status == "found"
    # H^2 is spanned by xz and yz
    assert result.products == {"product": (1, 0)}
    alpha = result.witness.alpha
    assert not any(alpha["a1_3"])
    assert alpha["a2_4"] == (0, 0, -1)


def test_triple_product_equations(triple_algebra):
    result = dgca_massey(triple_algebra, XXY)
    assert result.equations == [
        "δα13 = -α12*α23",
        "δα24 = -α23*α34",
        "δα14 = -α12*α24 - α13*α34",
    ]


def test_target_class_is_checked(triple_algebra):
    assert dgca_massey(triple_algebra, XXY, target=(2, [1, 0])).status == "found"
    for mode in ("greedy", "backtrack"):
        result = dgca_massey(triple_algebra, XXY, mode=mode, budget=16, target=(2, [0, 1]))
        assert result.status == "inconclusive"


def test_unary_product_is_zero(triple_algebra):
    result = dgca_massey(triple_algebra, [(1, X)])
    assert result.status == "found"
    assert result.products == {"product": (0, 0)}


def test_binary_product_carries_the_koszul_sign():
    algebra = exterior_algebra(["x", "y"])
    result = dgca_massey(algebra, [(1, X), (1, Y)])
    assert result.products == {"product": (-1,)}


def test_input_errors(triple_algebra):
    with pytest.raises(UsageError):
        dgca_massey(triple_algebra, [])
    with pytest.raises(ClassCoordinateError):
        dgca_massey(triple_algebra, [(1, (1, 0, 0)), (1, X)])
    with pytest.raises(DegreeMismatchError):
        dgca_massey(triple_algebra, XXY, target=(3, [1]))
    with pytest.raises(DimensionMismatchError):
        matric_massey(triple_algebra, [1, 2, 1], [(1, [[X]]), (1, [[Y], [X]])])
    with pytest.raises(UsageError):
        matric_massey(triple_algebra, [1, 1], [(1, [[X]]), (1, [[Y]])])


def test_matric_with_unit_blocks_matches_the_classical_product(triple_algebra):
    classes = [(q, [[coords]]) for q, coords in XXY]
    matric = matric_massey(triple_algebra, [1, 1, 1, 1], classes)
    classical = dgca_massey(triple_algebra, XXY)
    assert matric.status == classical.status == "found"
    assert matric.products == classical.products


def test_matric_block_product_sums_over_the_middle_block(triple_algebra):
    result = matric_massey(triple_algebra, [1, 2, 1], [(1, [[X, Y]]), (1, [[Y], [X]])])
    assert result.status == "found"
    # -(xy + yx) = 0
    assert result.products == {"product": (0, 0)}


def test_matric_entry_keys():
    assert entry_key(1, 3, blocks=[1, 1, 1]) == "a1_3"
    assert entry_key(1, 2, 0, 1, blocks=[1, 2, 1]) == "a1_2[1,2]"
    assert dgca_symbol("a1_3") == "α13"
    assert dgca_symbol("a1_2[1,2]") == "α12[1,2]"


def test_lie_coalgebra_route_agrees_for_three_classes(triple_algebra):
    q = build_upper_triangular_lie_coalgebra([1, 1, 1])
    index = {name: k for k, name in enumerate(q.names)}
    a = {index["f1_2"]: X, index["f2_3"]: X, index["f3_4"]: Y}
    result = lie_coalgebra_massey(triple_algebra, q, a)
    assert result.status == "found"
    assert result.products["f1_4"] == (1, 0)


def test_lie_coalgebra_classes_stay_on_generators(triple_algebra):
    q = build_upper_triangular_lie_coalgebra([1, 1, 1])
    with pytest.raises(ClassCoordinateError):
        lie_coalgebra_massey(triple_algebra, q, {q.names.index("f1_3"): X})


def test_every_defining_system_of_x_x_y_gives_the_same_class(triple_algebra):
    ambient = TableComplex(triple_algebra)
    h2 = ambient.cohomology(2)
    x, y = vector((1, 0, 0)), vector((0, 1, 0))
    xy = ambient.multiply(1, x, 1, y)
    classes = set()
    # alpha13 = a x + b y is closed, alpha24 = c x + e y - z has d = -xy
    for a, b, c, e in itertools.product(range(-1, 2), repeat=4):
        a13, a24 = vector((a, b, 0)), vector((c, e, -1))
        assert ambient.apply_differential(1, a13) == scale(-1, ambient.multiply(1, x, 1, x))
        assert ambient.apply_differential(1, a24) == scale(-1, xy)
        rhs = scale(-1, add(ambient.multiply(1, x, 1, a24), ambient.multiply(1, a13, 1, y)))
        assert not any(ambient.apply_differential(2, rhs))
        classes.add(h2.coordinates(rhs))
    assert classes == {vector((1, 0))}


def test_x_x_y_has_no_indeterminacy(triple_algebra):
    ambient = TableComplex(triple_algebra)
    h2 = ambient.cohomology(2)
    x, y = vector((1, 0, 0)), vector((0, 1, 0))
    for h in (x, y):
        assert not any(h2.coordinates(ambient.multiply(1, x, 1, h)))
        assert not any(h2.coordinates(ambient.multiply(1, h, 1, y)))


def test_nonvanishing_sub_window_obstructs_the_triple_product():
    algebra = exterior_algebra(["x", "y"])
    assert dgca_massey(algebra, [(1, X), (1, Y)]).products == {"product": (-1,)}
    for mode in ("greedy", "backtrack"):
        result = dgca_massey(algebra, [(1, X), (1, Y), (1, Y)], mode=mode, budget=16)
        assert result.status == "obstructed"
        assert result.obstruction == ("a1_3", (-1,))
        assert result.witness is None


def test_unary_product_lives_one_degree_up():
    algebra = exterior_algebra(["x", "y"])
    result = dgca_massey(algebra, [(1, X)])
    # H^2 of Lambda(x, y) is one-dimensional, H^1 two-dimensional
    assert result.products == {"product": (0,)}


def test_dgca_witness_type(triple_algebra):
    result = dgca_massey(triple_algebra, XXY)
    assert isinstance(result.witness, DefiningSystemDGCA)
    assert result.witness.algebra is triple_algebra
    assert result.witness.coalgebra is None


def test_lie_coalgebra_route_agrees_for_two_classes():
    algebra = exterior_algebra(["x", "y"])
    q = build_upper_triangular_lie_coalgebra([1, 1])
    index = {name: k for k, name in enumerate(q.names)}
    lie = lie_coalgebra_massey(algebra, q, {index["f1_2"]: X, index["f2_3"]: Y})
    classical = dgca_massey(algebra, [(1, X), (1, Y)])
    assert lie.status == "found"
    assert lie.products["f1_3"] == classical.products["product"] == (-1,)
    assert lie.equations == classical.equations == ["δα13 = -α12*α23"]


def test_lie_coalgebra_route_matches_triple_equations_and_witness(triple_algebra):
    q = build_upper_triangular_lie_coalgebra([1, 1, 1])
    index = {name: k for k, name in enumerate(q.names)}
    lie = lie_coalgebra_massey(triple_algebra, q, {index["f1_2"]: X, index["f2_3"]: X, index["f3_4"]: Y})
    classical = dgca_massey(triple_algebra, XXY)
    assert lie.equations == classical.equations
    assert isinstance(lie.witness, DefiningSystemDGCA)
    assert lie.witness.coalgebra is q
    assert len(lie.witness.alpha) == len(classical.witness.alpha)
    for k, value in lie.witness.alpha.items():
        assert value == classical.witness.alpha["a" + q.names[k][1:]]


def test_lie_coalgebra_route_with_blocks_matches_matric(triple_algebra):
    q = build_upper_triangular_lie_coalgebra([1, 1], block_sizes=[1, 2, 1])
    positions = upper_triangular_positions(q)
    a = {
        positions[(1, 2, 0, 0)]: X,
        positions[(1, 2, 0, 1)]: Y,
        positions[(2, 3, 0, 0)]: Y,
        positions[(2, 3, 1, 0)]: X,
    }
    lie = lie_coalgebra_massey(triple_algebra, q, a)
    matric = matric_massey(triple_algebra, [1, 2, 1], [(1, [[X, Y]]), (1, [[Y], [X]])])
    assert lie.status == matric.status == "found"
    assert lie.products["f1_3"] == matric.products["product"] == (0, 0)
    assert lie.equations == matric.equations
