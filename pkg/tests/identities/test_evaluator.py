import pytest

from homleib.algebra.linalg import LinearMap, Tensor2, Vector
from homleib.algebra.model import AlgebraPresentation, VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.core.exceptions import DimensionError, PresentationError, UnknownSymbolError
from homleib.identities.catalog import get_identity
from homleib.identities.evaluator import (
    context_for_algebra,
    context_for_module,
    context_for_pair,
    evaluate_identity,
    evaluate_on_vectors,
    residual_coords,
)
from homleib.identities.parser import parse_identity

Q = FieldSpec.rationals()


@pytest.fixture
def with_coalgebra():
    """Δ(e1) = e1⊗e2 - e2⊗e1, form swapping the basis, α = diag(2, 1)."""
    return AlgebraPresentation(
        dim=2,
        field=Q,
        variety=VarietyTag.HOM_LEIBNIZ,
        products={},
        twists={"al": LinearMap.diagonal(Q, [2, 1])},
        form=LinearMap(Q, [[0, 1], [1, 0]]),
        cobracket=LinearMap(Q, [[0, 0], [1, 0], [-1, 0], [0, 0]]),
        name="coalg",
    )


def test_skew_residual_at_basis_tuple(twodim):
    ctx = context_for_algebra(twodim)
    skew = get_identity("skew_symmetry")
    assert evaluate_identity(skew, ctx, {"x": 1, "y": 1}) == Vector(Q, [2, 0])
    assert evaluate_identity(skew, ctx, {"x": 0, "y": 1}).is_zero


def test_evaluate_on_arbitrary_vectors(twodim):
    ctx = context_for_algebra(twodim)
    skew = get_identity("skew_symmetry")
    v = Vector(Q, [1, 3])
    # [v, v] = 9 e1, so the residual is 18 e1
    assert evaluate_on_vectors(skew, ctx, {"x": v, "y": v}) == Vector(Q, [18, 0])


def test_missing_bindings_and_bad_indices(twodim):
    ctx = context_for_algebra(twodim)
    with pytest.raises(UnknownSymbolError, match="form"):
        evaluate_identity(get_identity("form_skew"), ctx, {"x": 0, "y": 0})
    with pytest.raises(DimensionError):
        evaluate_identity(get_identity("skew_symmetry"), ctx, {"x": 0, "y": 2})
    assert ctx.missing(get_identity("homleib_bimod_1")) == ["beV", "l"]


def test_form_values(with_coalgebra):
    ctx = context_for_algebra(with_coalgebra)
    identity = parse_identity("f over (x: A, y: A) : form(x, y) = 0")
    assert evaluate_identity(identity, ctx, {"x": 0, "y": 1}) == 1
    assert evaluate_identity(identity, ctx, {"x": 0, "y": 0}) == 0
    assert evaluate_identity(get_identity("form_skew"), ctx, {"x": 0, "y": 1}) == 2


def test_cobracket_terms(with_coalgebra):
    ctx = context_for_algebra(with_coalgebra)
    antisymmetry = parse_identity("a over (x: A) : Delta(x) + sigma(Delta(x)) = 0")
    assert evaluate_identity(antisymmetry, ctx, {"x": 0}).is_zero
    twisted = parse_identity("k over (x: A) : kron(al, id)(Delta(x)) = 0")
    value = evaluate_identity(twisted, ctx, {"x": 0})
    assert value == Tensor2(Q, [[0, 2], [-1, 0]])
    assert [str(c) for c in residual_coords(value)] == ["0", "2", "-1", "0"]


def test_module_context(twodim, twodim_regular):
    ctx = context_for_module(twodim, twodim_regular)
    assert ctx.dims == {"A": 2, "V": 2}
    assert ctx.provides("l") and ctx.provides("beV") and not ctx.provides("lprec")
    action = parse_identity("m over (x: A, v: V) : l(x)(v) = 0")
    assert evaluate_identity(action, ctx, {"x": 1, "v": 1}) == Vector(Q, [1, 0])


def test_dendriform_context_binds_split_sums(dendr3):
    ctx = context_for_algebra(dendr3)
    assert ctx.products["br"] == dendr3.product("prec") + dendr3.product("succ")


def test_pair_context_suffixes(bihom_sqrt2):
    A, B, AonB, BonA = bihom_sqrt2
    ctx = context_for_pair(A, B, AonB, BonA)
    assert ctx.maps["al2"] == B.al and ctx.maps["be2"] == B.be
    assert ctx.products["br2"] == B.bracket
    assert ctx.actions["l2"] == BonA.actions["l"]
    rational = AlgebraPresentation(
        dim=3,
        field=Q,
        variety=VarietyTag.BIHOM_LEIBNIZ,
        products={},
        twists={"al": LinearMap.identity(Q, 3), "be": LinearMap.identity(Q, 3)},
    )
    with pytest.raises(PresentationError):
        context_for_pair(A, rational)
