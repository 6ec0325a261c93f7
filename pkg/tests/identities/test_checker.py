import pytest

from homleib.algebra.linalg import LinearMap, Product
from homleib.algebra.model import AlgebraPresentation, VarietyTag, zero_actions
from homleib.algebra.scalar import FieldSpec
from homleib.core.exceptions import UnknownSymbolError
from homleib.identities.catalog import get_identity
from homleib.identities.checker import (
    FAIL,
    PASS,
    PRECONDITION_FAILED,
    CheckReport,
    Report,
    bimodule_identities,
    check_bimodule,
    check_identities,
    check_identity,
    check_matched_pair,
    check_named,
    check_variety,
    matched_identities,
    spot_check,
    variety_identities,
)
from homleib.identities.evaluator import context_for_algebra

Q = FieldSpec.rationals()


@pytest.fixture
def idempotents():
    """[e2, e2] = e2 and [e4, e4] = e4 with α = id: Hom-Leibniz fails only on (e2, e2, e2) and (e4, e4, e4)."""
    return AlgebraPresentation(
        dim=4,
        field=Q,
        variety=VarietyTag.HOM_LEIBNIZ,
        products={"br": Product.from_entries(Q, 4, [(1, 1, 1, 1), (3, 3, 3, 1)])},
        twists={"al": LinearMap.identity(Q, 4)},
        name="idempotents",
    )


def test_basis_enumeration_counts(twodim):
    ctx = context_for_algebra(twodim)
    leibniz = check_identity(get_identity("hom_leibniz"), ctx)
    assert leibniz.status == PASS
    assert leibniz.assignments == 8
    assert leibniz.assignment is None and leibniz.residual is None
    assert check_identity(get_identity("multiplicativity_al"), ctx).assignments == 4


def test_first_failure_is_reported(twodim):
    report = check_identity(get_identity("skew_symmetry"), context_for_algebra(twodim))
    assert report.status == FAIL
    assert report.assignments == 4
    assert report.assignment == [2, 2]
    assert report.residual == ["2", "0"]
    assert report.named_assignment == {"x": 1, "y": 1}


def test_lexicographic_order_picks_smallest_tuple(idempotents):
    report = check_identity(get_identity("hom_leibniz"), context_for_algebra(idempotents), jobs=1)
    assert report.assignment == [2, 2, 2]
    assert report.assignments == 22
    assert report.residual == ["0", "-1", "0", "0"]


@pytest.mark.parametrize("jobs", [2, 3, 4, 8])
def test_parallel_jobs_do_not_change_the_report(idempotents, jobs):
    ctx = context_for_algebra(idempotents)
    identity = get_identity("hom_leibniz")
    assert check_identity(identity, ctx, jobs=jobs) == check_identity(identity, ctx, jobs=1)


def test_missing_symbols_raise(twodim):
    with pytest.raises(UnknownSymbolError):
        check_identity(get_identity("form_skew"), context_for_algebra(twodim))


def test_short_circuit(twodim):
    ctx = context_for_algebra(twodim)
    identities = [get_identity(n) for n in ("skew_symmetry", "hom_leibniz")]
    assert len(check_identities(identities, ctx)) == 2
    assert len(check_identities(identities, ctx, short_circuit=True)) == 1


def test_spot_check_agrees_with_basis_verdict(twodim):
    ctx = context_for_algebra(twodim)
    passed = spot_check(get_identity("hom_leibniz"), ctx, n=25, seed=3)
    assert passed.identity == "hom_leibniz:spot"
    assert passed.status == PASS and passed.note == ""
    failed_basis = spot_check(get_identity("skew_symmetry"), ctx, n=25, seed=3)
    assert failed_basis.status == PASS
    assert failed_basis.note.endswith("of 25 random tuples nonzero")


def test_spot_check_flags_a_wrong_basis_verdict(twodim):
    ctx = context_for_algebra(twodim)
    identity = get_identity("skew_symmetry")
    lying = CheckReport(identity=identity.name, status=PASS)
    report = spot_check(identity, ctx, n=50, seed=1, basis_verdict=lying)
    assert report.status == FAIL
    assert report.residual is not None


def test_variety_identity_sets(twodim, dendr3, heisenberg_sign, bihom_rb):
    assert variety_identities(twodim) == ["hom_leibniz", "multiplicativity_al"]
    assert variety_identities(heisenberg_sign) == ["skew_symmetry", "hom_jacobi", "multiplicativity_al"]
    assert variety_identities(dendr3) == ["dendr_1", "dendr_2", "dendr_3"]
    rb = bihom_rb[0]
    assert variety_identities(rb) == [
        "bihom_twist_commute",
        "bihom_leibniz",
        "multiplicativity_al",
        "multiplicativity_be",
    ]
    assert variety_identities(bihom_rb[3])[-4:] == [
        "multiplicativity_al_prec",
        "multiplicativity_al_succ",
        "multiplicativity_be_prec",
        "multiplicativity_be_succ",
    ]
    assert matched_identities(VarietyTag.BIHOM_LEIBNIZ_DENDRIFORM)[-1] == "bihom_dendr_matched_18"


def test_check_variety(twodim, heisenberg_sign):
    report = check_variety(twodim)
    assert report.passed
    assert [c.identity for c in report.checks] == ["hom_leibniz", "multiplicativity_al"]
    assert check_variety(heisenberg_sign).passed


def test_check_variety_detects_non_multiplicative_twist(twodim):
    broken = twodim.replace(twists={"al": LinearMap.diagonal(Q, [1, 2])})
    report = check_variety(broken)
    assert not report.passed
    assert report.first_failure().identity == "multiplicativity_al"


def test_check_bimodule_regular(twodim, twodim_regular):
    report = check_bimodule(twodim, twodim_regular)
    assert report.passed
    assert [c.identity for c in report.checks] == bimodule_identities(twodim, twodim_regular) + [
        "homleib_bimod_consequence"
    ]


def test_check_bimodule_shape_precondition(twodim, dendr3):
    report = check_bimodule(twodim, zero_actions(dendr3, 2))
    assert report.status == PRECONDITION_FAILED
    assert report.precondition == "shape"
    assert report.checks == []


def test_trivial_matched_pair(twodim):
    actions = zero_actions(twodim, 2, {"beV": twodim.al})
    report = check_matched_pair(twodim, twodim, actions, actions)
    assert report.passed
    coupling = [c for c in report.checks if c.context == "coupling"]
    assert [c.identity for c in coupling][:6] == matched_identities(VarietyTag.HOM_LEIBNIZ)
    assert report.get("matched_pair_6_alt").required is False


def test_matched_pair_twist_precondition(twodim):
    identity_twist = zero_actions(twodim, 2)
    report = check_matched_pair(twodim, twodim, identity_twist, identity_twist)
    assert report.status == PRECONDITION_FAILED
    assert report.precondition == "twists"


def test_check_named(twodim):
    report = check_named(["skew_symmetry", "hom_jacobi"], context_for_algebra(twodim), title="lie?")
    assert report.title == "lie?"
    assert not report.passed
    assert report.get("hom_jacobi").passed


def test_report_aggregation():
    report = Report(title="outer")
    report.add(CheckReport.fact("determinant", True))
    optional = Report(checks=[CheckReport.fact("optional", False, required=False)], notes=["n"])
    report.extend(optional, context="inner")
    assert report.passed
    assert report.get("optional").context == "inner"
    assert report.notes == ["n"]
    assert report.first_failure() is None
    report.fail_precondition("involutive", "α² ≠ id")
    assert report.status == PRECONDITION_FAILED
    assert report.notes[-1] == "α² ≠ id"
