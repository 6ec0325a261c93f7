import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from homleib.algebra.linalg import (
    LinearMap,
    Product,
    Tensor2,
    Vector,
    dual_map,
    map_apply,
    map_compose,
    map_determinant,
    map_inverse,
    map_kernel,
    map_power,
    map_rank,
    product_apply,
    solve_linear,
    tensor_ops,
    tensor_swap,
)
from homleib.algebra.scalar import FieldSpec
from homleib.core.exceptions import DimensionError, SingularMatrixError

Q = FieldSpec.rationals()
entries = st.integers(min_value=-4, max_value=4)


@st.composite
def square_maps(draw, n=None):
    n = n or draw(st.integers(min_value=1, max_value=4))
    return LinearMap(Q, draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))


@st.composite
def map_and_vector(draw):
    m = draw(square_maps())
    v = Vector(Q, draw(st.lists(entries, min_size=m.dim_in, max_size=m.dim_in)))
    return m, v


@settings(max_examples=200, deadline=None)
@given(map_and_vector())
def test_solve_linear_returns_a_solution(case):
    m, b = case
    assume(not map_determinant(m).is_zero)
    assert m.apply(solve_linear(m, b)) == b


@settings(max_examples=200, deadline=None)
@given(square_maps())
def test_inverse_or_kernel_witness(m):
    ident = LinearMap.identity(Q, m.dim_in)
    if map_determinant(m).is_zero:
        with pytest.raises(SingularMatrixError) as excinfo:
            map_inverse(m)
        witness = excinfo.value.witness
        assert not witness.is_zero
        assert m.apply(witness).is_zero
    else:
        inv = map_inverse(m)
        assert m @ inv == ident
        assert inv @ m == ident


@settings(max_examples=200, deadline=None)
@given(square_maps())
def test_rank_nullity(m):
    kernel = map_kernel(m)
    assert map_rank(m) + len(kernel) == m.dim_in
    for v in kernel:
        assert m.apply(v).is_zero


@settings(max_examples=100, deadline=None)
@given(square_maps(n=3), square_maps(n=3))
def test_determinant_is_multiplicative(a, b):
    assert map_determinant(a @ b) == map_determinant(a) * map_determinant(b)


@settings(max_examples=100, deadline=None)
@given(square_maps(n=3), st.integers(min_value=0, max_value=5))
def test_power_matches_repeated_composition(m, n):
    expected = LinearMap.identity(Q, 3)
    for _ in range(n):
        expected = expected @ m
    assert m.power(n) == expected


@settings(max_examples=100, deadline=None)
@given(square_maps())
def test_dual_map_twice_is_identity(m):
    assert dual_map(dual_map(m)) == m
    assert dual_map(m).entry(0, 0) == -m.entry(0, 0)


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        LinearMap.identity(Q, 2).power(-1)


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        LinearMap.identity(Q, 2).apply(Vector(Q, [1, 2, 3]))
    with pytest.raises(DimensionError):
        Vector(Q, [1]) + Vector(Q, [1, 2])
    with pytest.raises(DimensionError):
        LinearMap(Q, [[1, 2], [3]])
    with pytest.raises(DimensionError):
        map_determinant(LinearMap(Q, [[1, 2]]))


def test_columns_are_images_of_basis_vectors():
    m = LinearMap(Q, [[1, 2], [3, 4]])
    assert m.apply(Vector.basis(Q, 2, 1)) == Vector(Q, [2, 4])
    assert m.column(0) == Vector(Q, [1, 3])
    assert LinearMap.from_columns(Q, [m.column(0), m.column(1)]) == m


def test_direct_sum_and_commutation():
    a = LinearMap.diagonal(Q, [1, 2])
    b = LinearMap(Q, [[0, 1], [0, 0]])
    total = a.direct_sum(LinearMap.identity(Q, 1))
    assert total.shape == (3, 3)
    assert total.entry(1, 1) == 2 and total.entry(2, 2) == 1 and total.entry(0, 2) == 0
    assert not a.commutes_with(b)
    assert a.commutes_with(LinearMap.diagonal(Q, [5, -1]))


def test_product_apply_and_multiplication_maps():
    # [e2, e2] = e1
    br = Product.from_entries(Q, 2, [(1, 1, 0, 1)])
    e1, e2 = Vector.basis(Q, 2, 0), Vector.basis(Q, 2, 1)
    assert br(e2, e2) == e1
    assert br(e1, e2).is_zero
    assert br(e1 + e2, 3 * e2) == Vector(Q, [3, 0])
    assert br.left_multiplication(1) == LinearMap(Q, [[0, 1], [0, 0]])
    assert br.right_multiplication(1) == LinearMap(Q, [[0, 1], [0, 0]])
    assert list(br.entries()) == [(1, 1, 0, Q.one)]


def test_product_repeated_entries_add():
    p = Product.from_entries(Q, 2, [(0, 0, 1, 1), (0, 0, 1, 2)])
    assert p.basis_product(0, 0) == Vector(Q, [0, 3])
    with pytest.raises(DimensionError):
        Product.from_entries(Q, 2, [(0, 2, 0, 1)])


def test_product_morphisms():
    br = Product.from_entries(Q, 2, [(1, 1, 0, 1)])
    alpha = LinearMap(Q, [[1, 1], [0, 1]])
    assert br.is_preserved_by(alpha)
    assert not br.is_preserved_by(LinearMap.diagonal(Q, [1, 2]))
    twisted = br.postcompose(alpha)
    assert twisted.basis_product(1, 1) == Vector(Q, [1, 0])
    assert br.opposite() == br
    assert (br - br).is_zero


def test_tensor_ops_and_swap():
    t = Tensor2.elementary(Q, 2, 0, 1)
    assert tensor_swap(t) == Tensor2.elementary(Q, 2, 1, 0)
    swap_map = LinearMap(Q, [[0, 1], [1, 0]])
    assert tensor_ops(t, swap_map, swap_map) == Tensor2.elementary(Q, 2, 1, 0)
    scaled = tensor_ops(t, LinearMap.diagonal(Q, [2, 1]), LinearMap.diagonal(Q, [1, 5]))
    assert scaled == Tensor2.elementary(Q, 2, 0, 1).scale(10)
    assert [str(c) for c in scaled.flat()] == ["0", "10", "0", "0"]


def test_specialize_map():
    field = FieldSpec.rational_functions("p")
    m = LinearMap(field, [[field.param("p"), 1], [0, field.scalar("p^2")]])
    assert m.specialize({"p": 2}) == LinearMap(Q, [[2, 1], [0, 4]])


def test_map_and_product_application():
    shear = LinearMap(Q, [[1, 1], [0, 1]])
    assert map_apply(shear, Vector(Q, [0, 1])) == Vector(Q, [1, 1])
    assert map_compose(LinearMap.diagonal(Q, [2, 3]), shear) == LinearMap(Q, [[2, 2], [0, 3]])
    assert map_power(shear, 3) == LinearMap(Q, [[1, 3], [0, 1]])
    assert map_power(shear, 0) == LinearMap.identity(Q, 2)
    bracket = Product.from_entries(Q, 3, [(0, 1, 2, 1), (1, 0, 2, -1)])
    e1, e2, e3 = (Vector.basis(Q, 3, i) for i in range(3))
    assert product_apply(bracket, e1, e2) == e3
    assert product_apply(bracket, e2, e1) == -e3
