import pytest

from homleib.algebra.io import read_presentation
from homleib.algebra.linalg import LinearMap, Product
from homleib.algebra.model import AlgebraPresentation, VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.core.config import DEFAULT_CORPUS_DIR as CORPUS
from homleib.core.exceptions import PreconditionError, PresentationError
from homleib.duality.bialgebra import (
    bialgebra_matchedpair_equiv,
    check_bialgebra,
    coadjoint_actions,
    cobracket_from_dual,
)
from homleib.duality.dual import transpose

Q = FieldSpec.rationals()


@pytest.fixture
def abelian_dual(heisenberg_sign):
    return AlgebraPresentation(
        dim=3,
        field=Q,
        variety=VarietyTag.HOM_LIE,
        products={"br": Product.zero(Q, 3)},
        twists={"al": transpose(heisenberg_sign.al)},
        multiplicative=True,
        name="dual",
    )


def test_cobracket_from_dual_product():
    # {e1*, e2*} = e1*, so Δ(e1) = e1⊗e2
    delta = cobracket_from_dual(Product.from_entries(Q, 2, [(0, 1, 0, 1)]))
    assert delta.shape == (4, 2)
    assert delta.column(0).to_strings() == ["0", "1", "0", "0"]
    assert delta.column(1).is_zero


def test_coadjoint_actions(heisenberg_sign):
    coadjoint = coadjoint_actions(heisenberg_sign, heisenberg_sign.al)
    br = heisenberg_sign.bracket
    assert coadjoint.actions["l"][0] == -transpose(br.left_multiplication(0))
    assert coadjoint.actions["r"][0] == transpose(br.left_multiplication(0)) + transpose(br.right_multiplication(0))
    assert coadjoint.name == "heisenberg_coadjoint"


def test_zero_cobracket_is_a_bialgebra(heisenberg_sign):
    with_delta = heisenberg_sign.replace(cobracket=LinearMap.zero(Q, 9, 3))
    report = check_bialgebra(with_delta)
    assert report.passed
    assert [c.identity for c in report.checks] == ["bialg_1", "bialg_2"]


def test_bialgebra_residual_signs():
    # [e2, e2] = e1 with α = id and Δ(e2) = e2⊗e2
    leibniz = read_presentation(CORPUS / "leibniz-2dim" / "leibniz.alg")
    delta = LinearMap(Q, [[0, 0], [0, 0], [0, 0], [0, 1]])
    report = check_bialgebra(leibniz.replace(cobracket=delta))
    first, second = report.get("bialg_1"), report.get("bialg_2")
    assert first.assignment == [2, 2]
    assert first.residual == ["0", "1", "-1", "0"]
    assert second.assignment == [2, 2]
    assert second.residual == ["0", "-2", "2", "0"]


def test_check_bialgebra_preconditions(heisenberg_sign, twodim):
    with pytest.raises(PresentationError):
        check_bialgebra(heisenberg_sign)
    with pytest.raises(PreconditionError) as excinfo:
        check_bialgebra(twodim.replace(cobracket=LinearMap.zero(Q, 4, 2)))
    assert excinfo.value.precondition == "involutive"


def test_equivalence_agrees_on_the_trivial_dual(heisenberg_sign, abelian_dual):
    report = bialgebra_matchedpair_equiv(heisenberg_sign, abelian_dual)
    assert report.passed
    agree = report.get("verdicts_agree")
    assert agree.required and agree.passed
    informational = [c for c in report.checks if c.identity != "verdicts_agree"]
    assert informational and not any(c.required for c in informational)
    assert {c.context for c in informational if c.identity.startswith("bialg")} == {"bialgebra"}


def test_equivalence_with_coadjoint_form(heisenberg_sign, abelian_dual):
    report = bialgebra_matchedpair_equiv(heisenberg_sign, abelian_dual, coadjoint_form=True)
    for name in ("bialg_equiv_1", "bialg_equiv_2"):
        check = report.get(name)
        assert check.passed and not check.required
        assert check.context == "coadjoint"


def test_equivalence_preconditions(heisenberg_sign, abelian_dual):
    untwisted = abelian_dual.replace(twists={"al": LinearMap.identity(Q, 3)})
    with pytest.raises(PreconditionError) as excinfo:
        bialgebra_matchedpair_equiv(heisenberg_sign, untwisted)
    assert excinfo.value.precondition == "dual twist"
    small = AlgebraPresentation(
        dim=2,
        field=Q,
        variety=VarietyTag.HOM_LIE,
        products={},
        twists={"al": LinearMap.identity(Q, 2)},
    )
    with pytest.raises(PreconditionError) as excinfo:
        bialgebra_matchedpair_equiv(heisenberg_sign, small)
    assert excinfo.value.precondition == "dual"
