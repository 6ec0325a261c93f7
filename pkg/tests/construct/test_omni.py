import pytest

from homleib.algebra.linalg import LinearMap
from homleib.algebra.model import VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.construct.omni import adjoint_twist, omni_gl_example
from homleib.construct.sums import sub_adjacent
from homleib.core.exceptions import DimensionError
from homleib.identities.checker import check_variety

Q = FieldSpec.rationals()


def test_adjoint_twist_of_the_identity():
    assert adjoint_twist(LinearMap.identity(Q, 2)).is_identity


def test_adjoint_twist_conjugates_and_acts():
    delta = adjoint_twist(LinearMap.diagonal(Q, [1, 2]))
    rows = delta.to_strings()
    # β E_12 β⁻¹ = E_12 / 2, β E_21 β⁻¹ = 2 E_21
    assert rows[1][1] == "1/2"
    assert rows[2][2] == "2"
    assert rows[0][0] == "1" and rows[3][3] == "1"
    # β u_2 = 2 u_2
    assert rows[5][5] == "2"


@pytest.mark.parametrize("diagonal", [[1, 1], [1, 2], [3, -1]])
def test_yau_omni_structure_is_dendriform(diagonal):
    beta = LinearMap.diagonal(Q, diagonal)
    out = omni_gl_example(2, beta)
    assert out.dim == 6
    assert out.variety == VarietyTag.HOM_LEIBNIZ_DENDRIFORM
    assert out.al == adjoint_twist(beta)
    assert out.name == "omni_gl2_twisted"
    assert check_variety(out).passed


def test_omni_products_on_matrix_units():
    out = omni_gl_example(2, LinearMap.identity(Q, 2))
    prec, succ = out.product("prec"), out.product("succ")
    # E_12 ≺ E_21 = E_11 and E_12 ≻ E_21 = -E_22
    assert prec.basis_product(1, 2).to_strings() == ["1", "0", "0", "0", "0", "0"]
    assert succ.basis_product(1, 2).to_strings() == ["0", "0", "0", "-1", "0", "0"]
    # E_12 ≺ u_2 = u_1
    assert prec.basis_product(1, 5).to_strings() == ["0", "0", "0", "0", "1", "0"]


def test_omni_sub_adjacent_bracket_is_hom_leibniz():
    bracket = sub_adjacent(omni_gl_example(1, LinearMap.diagonal(Q, [2])))
    assert bracket.variety == VarietyTag.HOM_LEIBNIZ
    assert bracket.dim == 2


def test_literal_mode_with_identity_beta():
    out = omni_gl_example(2, LinearMap.identity(Q, 2), mode="literal")
    assert out.name == "omni_gl2_literal"
    assert out.al.is_identity


def test_omni_argument_errors():
    with pytest.raises(ValueError):
        omni_gl_example(2, LinearMap.identity(Q, 2), mode="twisted")
    with pytest.raises(ValueError):
        omni_gl_example(0, LinearMap.identity(Q, 1))
    with pytest.raises(DimensionError):
        omni_gl_example(2, LinearMap.identity(Q, 3))
