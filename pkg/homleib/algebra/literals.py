"""
Recursive-descent parser for coefficient literals.

Grammar (whitespace insignificant):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/')? factor)*        juxtaposition multiplies
    factor := ('+'|'-') factor | atom ['^' uint]
    atom   := uint | ident | 's' | '(' expr ')'

so "-1/2", "p^2/3", "2p q", "(p+1)/(q-1)" and "1 + 3*s" are all accepted. A run of
letters is one identifier: "pq" names a single parameter.
"""

from dataclasses import dataclass
from typing import List

from homleib.algebra.scalar import QUADRATIC, SQRT_SYMBOL, FieldSpec, Scalar
from homleib.core.exceptions import LiteralSyntaxError, UnknownSymbolError, ZeroDivision


class Token:
    """Token kinds."""

    integer = "integer"
    identifier = "identifier"
    operator = "operator"
    left_paren = "("
    right_paren = ")"
    eof = "end of input"


OPERATORS = "+-*/^"


@dataclass(frozen=True)
class Lexeme:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Lexeme]:
    tokens: List[Lexeme] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(Lexeme(Token.integer, text[start:i], start))
        elif ch.isalpha():
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Lexeme(Token.identifier, text[start:i], start))
        elif ch in OPERATORS:
            tokens.append(Lexeme(Token.operator, ch, i))
            i += 1
        elif ch in "()":
            tokens.append(Lexeme(ch, ch, i))
            i += 1
        else:
            raise LiteralSyntaxError(f"unexpected character {ch!r}", text, i)
    tokens.append(Lexeme(Token.eof, "", len(text)))
    return tokens


class LiteralParser:
    """Parses one literal straight into a Scalar of the given field."""

    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Lexeme:
        return self.tokens[self.pos]

    def _advance(self) -> Lexeme:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _is_op(self, *ops: str) -> bool:
        return self.current.kind == Token.operator and self.current.text in ops

    def _error(self, message: str, token: Lexeme = None) -> LiteralSyntaxError:
        token = token or self.current
        return LiteralSyntaxError(message, self.text, token.position)

    def parse(self) -> Scalar:
        if self.current.kind == Token.eof:
            raise self._error("empty literal")
        value = self.expr()
        if self.current.kind != Token.eof:
            raise self._error(f"unexpected {self.current.text!r}")
        return value

    def expr(self) -> Scalar:
        negate = False
        if self._is_op("+", "-"):
            negate = self._advance().text == "-"
        value = self.term()
        if negate:
            value = -value
        while self._is_op("+", "-"):
            op = self._advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_factor(self) -> bool:
        return self.current.kind in (Token.integer, Token.identifier, Token.left_paren)

    def term(self) -> Scalar:
        value = self.factor()
        while True:
            if self._is_op("*"):
                self._advance()
                value = value * self.factor()
            elif self._is_op("/"):
                slash = self._advance()
                divisor = self.factor()
                if divisor.is_zero:
                    raise self._error("division by zero", slash)
                value = value / divisor
            elif self._starts_factor():
                value = value * self.factor()
            else:
                return value

    def factor(self) -> Scalar:
        if self._is_op("+", "-"):
            negate = self._advance().text == "-"
            value = self.factor()
            return -value if negate else value
        value = self.atom()
        if self._is_op("^"):
            self._advance()
            if self.current.kind != Token.integer:
                raise self._error("exponent must be a nonnegative integer")
            value = value ** int(self._advance().text)
        return value

    def atom(self) -> Scalar:
        token = self.current
        if token.kind == Token.integer:
            self._advance()
            return self.field.from_rational(int(token.text))
        if token.kind == Token.identifier:
            self._advance()
            return self._identifier(token)
        if token.kind == Token.left_paren:
            self._advance()
            value = self.expr()
            if self.current.kind != Token.right_paren:
                raise self._error("expected ')'")
            self._advance()
            return value
        raise self._error(f"unexpected {token.text or token.kind!r}")

    def _identifier(self, token: Lexeme) -> Scalar:
        name = token.text
        if name == SQRT_SYMBOL and self.field.kind == QUADRATIC:
            return self.field.sqrt_d()
        if name in self.field.params:
            return self.field.param(name)
        raise UnknownSymbolError(
            f"unknown identifier {name!r} at position {token.position} in {self.text!r} "
            f"(field {self.field})"
        )


def scalar_parse(text: str, spec: FieldSpec) -> Scalar:
    """
    Parse a coefficient literal into a canonical Scalar of ``spec``.

    Raises:
        LiteralSyntaxError: malformed text or division by a zero literal
        UnknownSymbolError: identifier that is neither a parameter nor ``s``
    """
    try:
        return LiteralParser(str(text), spec).parse()
    except ZeroDivision as e:
        raise LiteralSyntaxError(str(e), str(text), 0) from e
