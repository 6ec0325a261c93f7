import pytest

from homleib.core.exceptions import IdentitySyntaxError, SortError, UnknownSymbolError
from homleib.identities.ast import ActionCall, Kron, MapCall, OpMap, OpMult, ProductCall, Sum, Var
from homleib.identities.parser import parse_identities, parse_identity


def test_parse_skew_symmetry():
    identity = parse_identity("skew over (x: A, y: A) : br(x, y) + br(y, x) = 0")
    assert identity.name == "skew"
    assert identity.variables == (("x", "A"), ("y", "A"))
    assert identity.sort == "A"
    assert [c for c, _ in identity.body.terms] == [1, 1]
    first = identity.body.terms[0][1]
    assert first == ProductCall("br", Var("x", "A"), Var("y", "A"), "A")
    assert identity.symbols() == {"br"}
    assert identity.text == "skew over (x: A, y: A) : br(x, y) + br(y, x) = 0"


def test_integer_coefficients():
    identity = parse_identity("c over (x: A, y: A) : 2*br(x, y) - 3 br(y, x) + al(x) = 0")
    assert [c for c, _ in identity.body.terms] == [2, -3, 1]


def test_parenthesised_sums_distribute_signs():
    identity = parse_identity("d over (x: A, y: A) : al(x) - (al(y) - 2 al(x)) = 0")
    assert [c for c, _ in identity.body.terms] == [1, -1, 2]


def test_sums_inside_arguments():
    identity = parse_identity("s over (x: A, y: A) : br(x + y, x) = 0")
    call = identity.body.terms[0][1]
    assert isinstance(call.left, Sum)
    assert call.right == Var("x", "A")


def test_curried_actions():
    identity = parse_identity("m over (x: A, v: V) : l(al(x))(beV(v)) - beV(l(x)(v)) = 0")
    action = identity.body.terms[0][1]
    assert isinstance(action, ActionCall)
    assert action.sort == "V"
    assert action.acting == MapCall("al", Var("x", "A"), "A")
    assert identity.symbols() == {"l", "al", "beV"}


def test_kron_operators():
    identity = parse_identity("k over (x: A, y: A) : kron(al, L(y))(Delta(x)) - sigma(Delta(x)) = 0")
    kron = identity.body.terms[0][1]
    assert isinstance(kron, Kron)
    assert kron.left == OpMap("al")
    assert isinstance(kron.right, OpMult) and kron.right.side == "L"
    assert identity.sort == "T"
    assert identity.symbols() == {"al", "br", "Delta"}


def test_multiple_identities_with_comments():
    text = """
    # two identities
    one over (x: A) :   # trailing comment
        al(x) - x = 0

    two over (x: A, y: A) :
        br(x, y)
        - br(y, x) = 0
    """
    identities = parse_identities(text, "sample.hli")
    assert [i.name for i in identities] == ["one", "two"]
    assert identities[1].source == "sample.hli"


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("t over (x: A) br(x, x) = 0", 1, 15),
        ("t over (x: A) :\n  br(x, $) = 0", 2, 9),
        ("t over (x: B) : al(x) = 0", 1, 12),
        ("t over (x: A, x: A) : br(x, x) = 0", 1, 15),
        ("t over (al: A) : al = 0", 1, 9),
        ("t over (x: A) : al(x) = 1", 1, 25),
        ("t over (x: A) : 0 al(x) = 0", 1, 17),
        ("t under (x: A) : al(x) = 0", 1, 3),
    ],
)
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(IdentitySyntaxError) as excinfo:
        parse_identity(text)
    assert (excinfo.value.line, excinfo.value.column) == (line, column)


def test_trailing_text_is_rejected():
    with pytest.raises(IdentitySyntaxError):
        parse_identity("t over (x: A) : al(x) = 0 extra")


@pytest.mark.parametrize(
    "text",
    [
        "t over (x: A, v: V) : br(x, v) = 0",
        "t over (x: A, v: V) : br(x, x) + beV(v) = 0",
        "t over (v: V) : al(v) = 0",
        "t over (x: A) : br = 0",
        "t over (x: A) : l(x) = 0",
        "t over (x: A) : x(x) = 0",
        "t over (x: A) : br(x) = 0",
        "t over (x: A) : kron(id, id)(x) = 0",
        "t over (x: A) : kron(T, id)(Delta(x)) = 0",
        "t over (x: A) : sigma(x) = 0",
    ],
)
def test_ill_sorted_identities(text):
    with pytest.raises(SortError):
        parse_identity(text)


def test_undeclared_symbol():
    with pytest.raises(UnknownSymbolError, match="foo"):
        parse_identity("t over (x: A) : foo(x) = 0")
    with pytest.raises(UnknownSymbolError, match="y"):
        parse_identity("t over (x: A) : br(x, y) = 0")
