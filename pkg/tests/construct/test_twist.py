import json

import pytest

from homleib.algebra.io import map_from_rows, read_presentation
from homleib.algebra.linalg import LinearMap, Product
from homleib.algebra.model import AlgebraPresentation, VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.construct.twist import (
    YAU_FROM_UNTWISTED,
    TwistRecipe,
    derived_algebra,
    morphism_report,
    verify_output,
    yau_twist,
)
from homleib.core.config import DEFAULT_CORPUS_DIR
from homleib.core.exceptions import PreconditionError, VerificationError

Q = FieldSpec.rationals()
DENDR3 = DEFAULT_CORPUS_DIR / "dendr3"
BIHOM_DENDR = DEFAULT_CORPUS_DIR / "bihom-dendr"


def test_derived_algebras_match_the_worked_example(dendr3):
    assert derived_algebra(dendr3, 1, 1, strict=False) == read_presentation(DENDR3 / "derived1.alg")
    assert derived_algebra(dendr3, 2, 2, strict=False) == read_presentation(DENDR3 / "derived2.alg")


def test_derived_algebra_requires_multiplicativity_when_strict(dendr3):
    with pytest.raises(PreconditionError) as excinfo:
        derived_algebra(dendr3, 1, 1)
    assert excinfo.value.precondition == "multiplicative"
    assert excinfo.value.report.first_failure().identity == "multiplicativity_al_prec"


def test_derived_algebra_exponents(twodim):
    out = derived_algebra(twodim, 1, 2)
    assert out.al == twodim.al.power(3)
    assert out.name == "twodim_derived1_2"
    second = derived_algebra(twodim, 2, 2)
    # type 2, n = 2: products through α³, twist α⁴
    assert second.al == twodim.al.power(4)
    with pytest.raises(ValueError):
        derived_algebra(twodim, 3, 1)
    with pytest.raises(ValueError):
        derived_algebra(twodim, 1, 0)


def test_twisting_by_the_twist_is_the_first_derived_algebra(twodim):
    twisted = yau_twist(twodim, TwistRecipe.single(twodim.al))
    assert twisted == derived_algebra(twodim, 1, 1)
    assert twisted.name == "twodim_twisted"


def test_bihom_twist_by_two_morphisms():
    entry = json.loads((BIHOM_DENDR / "entry.json").read_text())
    morphisms = next(c for c in entry["checks"] if c["kind"] == "twist")["morphisms"]
    p = read_presentation(BIHOM_DENDR / "dendr.alg")
    recipe = TwistRecipe.pair(map_from_rows(morphisms["al"], p.field), map_from_rows(morphisms["be"], p.field))
    out = yau_twist(p, recipe, strict=False)
    assert out == read_presentation(BIHOM_DENDR / "twisted.alg")
    assert out.al == p.al @ recipe.morphisms["al"]
    assert out.be == p.be @ recipe.morphisms["be"]


def test_recipe_shape_preconditions(twodim, bihom_rb):
    rb = bihom_rb[0]
    with pytest.raises(PreconditionError, match="single morphism"):
        yau_twist(twodim, TwistRecipe.pair(twodim.al, twodim.al))
    with pytest.raises(PreconditionError) as excinfo:
        yau_twist(rb, TwistRecipe.single(rb.al))
    assert excinfo.value.precondition == "recipe"
    with pytest.raises(ValueError):
        TwistRecipe(mode="sideways")


def test_yau_from_untwisted_needs_identity_twists(twodim):
    with pytest.raises(PreconditionError) as excinfo:
        yau_twist(twodim, TwistRecipe.single(twodim.al, YAU_FROM_UNTWISTED))
    assert excinfo.value.precondition == "untwisted"


def test_morphisms_must_commute_with_the_twist(twodim):
    with pytest.raises(PreconditionError) as excinfo:
        yau_twist(twodim, TwistRecipe.single(LinearMap.diagonal(Q, [1, 2])))
    assert excinfo.value.precondition == "commuting twists"


def test_non_morphism_is_fatal_only_when_strict(twodim):
    doubling = LinearMap.diagonal(Q, [2, 2])
    assert not morphism_report(doubling, twodim).passed
    with pytest.raises(PreconditionError) as excinfo:
        yau_twist(twodim, TwistRecipe.single(doubling))
    assert excinfo.value.precondition == "morphism al"

    plain = twodim.replace(multiplicative=False)
    out = yau_twist(plain, TwistRecipe.single(doubling), strict=False)
    assert out.bracket.basis_product(1, 1)[0] == 2
    assert out.al == twodim.al.scale(2)


def test_morphism_report_names_each_property(twodim):
    report = morphism_report(twodim.al, twodim)
    assert report.passed
    assert [c.identity for c in report.checks] == ["preserves_br", "intertwines_al"]


def test_verify_output_rejects_a_broken_result():
    not_lie = AlgebraPresentation(
        dim=2,
        field=Q,
        variety=VarietyTag.HOM_LIE,
        products={"br": Product.from_entries(Q, 2, [(1, 1, 0, 1)])},
        twists={"al": LinearMap.identity(Q, 2)},
    )
    with pytest.raises(VerificationError) as excinfo:
        verify_output(not_lie, "test construction")
    assert excinfo.value.report.first_failure().identity == "skew_symmetry"
    assert excinfo.value.exit_code == 3
