import pytest

from homleib.algebra.literals import Token, scalar_parse, tokenize
from homleib.algebra.scalar import FieldSpec
from homleib.core.exceptions import LiteralSyntaxError, UnknownSymbolError

Q = FieldSpec.rationals()
Q2 = FieldSpec.quadratic(2)
QPQ = FieldSpec.rational_functions("p", "q")


def test_tokenize():
    kinds = [t.kind for t in tokenize("2p^3 - (q)")]
    assert kinds == [
        Token.integer,
        Token.identifier,
        Token.operator,
        Token.integer,
        Token.operator,
        Token.left_paren,
        Token.identifier,
        Token.right_paren,
        Token.eof,
    ]


def test_rationals():
    assert scalar_parse("-1/2", Q) == Q.from_rational((-1, 2))
    assert scalar_parse("  3 ", Q) == 3
    assert scalar_parse("2/4", Q) == Q.from_rational((1, 2))
    assert scalar_parse("1 - 2*3", Q) == -5
    assert scalar_parse("2^3/4", Q) == 2
    assert scalar_parse("-(-3)", Q) == 3


def test_parameters_and_juxtaposition():
    p, q = QPQ.param("p"), QPQ.param("q")
    assert scalar_parse("p^2/3", QPQ) == p * p / 3
    assert scalar_parse("2p q", QPQ) == 2 * p * q
    assert scalar_parse("(p+1)/(q-1)", QPQ) == (p + 1) / (q - 1)
    assert scalar_parse("-p", QPQ) == -p


def test_sqrt_symbol():
    s = Q2.sqrt_d()
    assert scalar_parse("1 + 3*s", Q2) == 1 + 3 * s
    assert scalar_parse("s^2", Q2) == 2
    assert scalar_parse("1/s", Q2) == s / 2


@pytest.mark.parametrize(
    "text, position",
    [("", 0), ("1 +", 3), ("(1", 2), ("1 + $", 4), ("2^p", 2), ("1)", 1)],
)
def test_syntax_errors(text, position):
    field = QPQ if "p" in text else Q
    with pytest.raises(LiteralSyntaxError) as excinfo:
        scalar_parse(text, field)
    assert excinfo.value.position == position
    assert excinfo.value.text == text


def test_division_by_zero_literal():
    with pytest.raises(LiteralSyntaxError, match="division by zero"):
        scalar_parse("1/0", Q)
    with pytest.raises(LiteralSyntaxError):
        scalar_parse("1/(p - p)", QPQ)


@pytest.mark.parametrize(
    "text, field",
    [("x", Q), ("s", Q), ("s", QPQ), ("pq", QPQ), ("r + 1", QPQ)],
)
def test_unknown_symbols(text, field):
    with pytest.raises(UnknownSymbolError):
        scalar_parse(text, field)
