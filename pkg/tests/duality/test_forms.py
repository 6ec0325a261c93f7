import pytest

from homleib.algebra.linalg import LinearMap
from homleib.algebra.model import VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.core.exceptions import DimensionError
from homleib.duality.forms import (
    BilinearFormData,
    check_form,
    manin_check,
    manin_double,
    nondegeneracy_check,
    standard_form,
)

Q = FieldSpec.rationals()

SYMPLECTIC_2 = LinearMap(Q, [[0, 1], [-1, 0]])


def test_standard_form_gram_matrix():
    form = standard_form(2)
    assert form.matrix.to_strings() == [
        ["0", "0", "-1", "0"],
        ["0", "0", "0", "-1"],
        ["1", "0", "0", "0"],
        ["0", "1", "0", "0"],
    ]
    assert form.claims == {"nondegenerate", "skew"}
    assert form.dim == 4


def test_form_data_validation():
    with pytest.raises(DimensionError):
        BilinearFormData(LinearMap(Q, [[1, 0]]))
    with pytest.raises(ValueError):
        BilinearFormData(SYMPLECTIC_2, frozenset({"symmetric"}))


def test_nondegeneracy_by_determinant():
    good = nondegeneracy_check(BilinearFormData(SYMPLECTIC_2))
    assert good.passed and good.note == "determinant 1"
    bad = nondegeneracy_check(BilinearFormData(LinearMap.zero(Q, 2)))
    assert not bad.passed and bad.note == "determinant is 0"


def test_check_form_reports_each_property(twodim):
    form = BilinearFormData(SYMPLECTIC_2, frozenset({"skew", "cyclic_invariant"}))
    report = check_form(twodim, form)
    assert [c.identity for c in report.checks] == [
        "nondegenerate",
        "form_skew",
        "form_alpha_invariant",
        "form_cyclic_invariant",
    ]
    assert report.get("form_skew").passed
    cyclic = report.get("form_cyclic_invariant")
    assert not cyclic.passed
    assert cyclic.assignment == [2, 2, 2]
    assert "claimed property cyclic_invariant does not hold" in report.notes


def test_check_form_on_an_abelian_algebra(abelian3):
    report = check_form(abelian3, BilinearFormData(LinearMap.identity(Q, 3)))
    assert not report.get("form_skew").passed
    assert report.get("form_alpha_invariant").passed
    assert report.get("form_cyclic_invariant").passed
    with pytest.raises(DimensionError):
        check_form(abelian3, BilinearFormData(SYMPLECTIC_2))


def test_check_form_property_subset(twodim):
    report = check_form(twodim, BilinearFormData(SYMPLECTIC_2), ("skew",))
    assert [c.identity for c in report.checks] == ["form_skew"]


def test_manin_double_of_the_heisenberg_algebra(heisenberg_sign):
    double, form, split = manin_double(heisenberg_sign)
    assert double.dim == 6
    assert double.variety == VarietyTag.HOM_LEIBNIZ
    assert double.form == form.matrix
    assert split == ({1, 2, 3}, {4, 5, 6})
    report = manin_check(double, form, split)
    assert report.get("nondegenerate").passed
    for part in ("first", "second"):
        assert report.get(f"subalgebra_{part}").passed
        assert report.get(f"twist_invariant_{part}").passed
        assert report.get(f"isotropic_{part}").passed
    assert report.get("isotropic_first").context == "{e1, e2, e3}"


def test_manin_check_detects_a_bad_split(heisenberg_sign):
    form = BilinearFormData(LinearMap.identity(Q, 3))
    report = manin_check(heisenberg_sign, form, ({1, 2}, {3}))
    # [e1, e2] = e3 leaves the first part
    assert not report.get("subalgebra_first").passed
    assert report.get("subalgebra_second").passed
    assert not report.get("isotropic_second").passed
    with pytest.raises(ValueError):
        manin_check(heisenberg_sign, form, ({1}, {3}))
