import random

from homleib.corpus.fuzz import fuzz, random_case, random_hom_leibniz
from homleib.identities.checker import check_variety


def test_random_algebras_are_hom_leibniz():
    rng = random.Random(7)
    for signs in ([1], [1, -1], [-1, -1, 1]):
        p = random_hom_leibniz(rng, signs, "draw")
        assert p.dim == len(signs)
        assert p.multiplicative
        assert check_variety(p).passed


def test_cases_are_reproducible():
    first = random_case(random.Random(3), 1)
    second = random_case(random.Random(3), 1)
    assert first.algebra == second.algebra
    assert first.dual == second.dual
    assert first.algebra.al == first.dual.al
    assert first.label == f"case 1 (dim {first.algebra.dim})"


def test_fuzz_finds_no_disagreement():
    report = fuzz(cases=4, seed=11, spot_checks=5)
    assert report.title == "fuzz 4 cases, seed 11"
    agree = [c for c in report.checks if c.identity == "verdicts_agree"]
    assert len(agree) == 4
    assert all(c.context.startswith(f"case {i} ") for i, c in enumerate(agree, 1))
    assert report.passed


def test_most_draws_are_non_abelian():
    rng = random.Random(0)
    cases = [random_case(rng, i) for i in range(1, 51)]
    nontrivial = [c for c in cases if not c.algebra.bracket.is_zero and not c.dual.bracket.is_zero]
    assert len(nontrivial) >= 10
    assert all(c.algebra.dim > 1 for c in nontrivial)


def test_default_run_of_two_hundred_cases():
    report = fuzz(cases=200, seed=0, spot_checks=5)
    agree = [c for c in report.checks if c.identity == "verdicts_agree"]
    assert len(agree) == 200
    assert all(c.passed for c in agree)
    assert report.passed
