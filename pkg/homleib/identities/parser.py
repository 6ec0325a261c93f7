"""
Parser for the identity language.

    file     := identity*
    identity := name 'over' '(' var ':' sort (',' var ':' sort)* ')' ':' expr '=' '0'
    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := [int ['*']] primary
    primary  := atom ('(' expr (',' expr)* ')')*
    atom     := name | '(' expr ')'

Comments run from '#' to the end of the line; identities may span lines.
Parsing happens in two passes: a raw tree is built first and then resolved
against the symbol tables, which assigns sorts and rejects ill-sorted terms.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from homleib.core.exceptions import IdentitySyntaxError, SortError, UnknownSymbolError
from homleib.identities.ast import (
    ACTION_SYMBOLS,
    ALGEBRA,
    MAP_SYMBOLS,
    MODULE,
    PRODUCT_SYMBOLS,
    TENSOR,
    VARIABLE_SORTS,
    ActionCall,
    Delta,
    FormCall,
    Identity,
    Kron,
    MapCall,
    Node,
    Op,
    OpId,
    OpMap,
    OpMult,
    ProductCall,
    Sigma,
    Sum,
    Var,
)

PUNCTUATION = "(),:=+-*"


@dataclass(frozen=True)
class Tok:
    kind: str  # "name", "int", "punct", "eof"
    text: str
    line: int
    col: int
    offset: int


def tokenize(text: str, source: str = "") -> List[Tok]:
    tokens: List[Tok] = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
        elif ch.isspace():
            col, i = col + 1, i + 1
        elif ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Tok("name", text[start:i], line, col, start))
            col += i - start
        elif ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(Tok("int", text[start:i], line, col, start))
            col += i - start
        elif ch in PUNCTUATION:
            tokens.append(Tok("punct", ch, line, col, i))
            col, i = col + 1, i + 1
        else:
            raise IdentitySyntaxError(f"unexpected character {ch!r}", line, col, source)
    tokens.append(Tok("eof", "", line, col, len(text)))
    return tokens


# ---- raw tree ----


@dataclass(frozen=True)
class RawName:
    name: str
    tok: Tok


@dataclass(frozen=True)
class RawApply:
    func: "Raw"
    args: Tuple["Raw", ...]
    tok: Tok


@dataclass(frozen=True)
class RawSum:
    terms: Tuple[Tuple[int, "Raw"], ...]
    tok: Tok


Raw = Union[RawName, RawApply, RawSum]


class IdentityParser:
    def __init__(self, text: str, source: str = ""):
        self.text = text
        self.source = source
        self.tokens = tokenize(text, source)
        self.pos = 0

    @property
    def current(self) -> Tok:
        return self.tokens[self.pos]

    def _advance(self) -> Tok:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _error(self, message: str, tok: Optional[Tok] = None) -> IdentitySyntaxError:
        tok = tok or self.current
        return IdentitySyntaxError(message, tok.line, tok.col, self.source)

    def _is(self, text: str) -> bool:
        return self.current.kind == "punct" and self.current.text == text

    def _expect(self, text: str) -> Tok:
        if not self._is(text):
            found = self.current.text or "end of input"
            raise self._error(f"expected {text!r}, found {found!r}")
        return self._advance()

    def _expect_name(self, what: str) -> Tok:
        if self.current.kind != "name":
            raise self._error(f"expected {what}, found {self.current.text or 'end of input'!r}")
        return self._advance()

    # ---- identities ----

    def parse_file(self) -> List[Identity]:
        identities = []
        while self.current.kind != "eof":
            identities.append(self.parse_identity())
        return identities

    def parse_single(self) -> Identity:
        identity = self.parse_identity()
        if self.current.kind != "eof":
            raise self._error(f"unexpected {self.current.text!r} after identity")
        return identity

    def parse_identity(self) -> Identity:
        start = self._expect_name("identity name")
        over = self._expect_name("'over'")
        if over.text != "over":
            raise self._error("expected 'over'", over)
        self._expect("(")
        variables: List[Tuple[str, str]] = []
        while True:
            var = self._expect_name("variable name")
            self._expect(":")
            sort = self._expect_name("sort")
            if sort.text not in VARIABLE_SORTS:
                raise self._error(f"unknown sort {sort.text!r}; variables range over A or V", sort)
            if var.text in dict(variables):
                raise self._error(f"variable {var.text!r} declared twice", var)
            if var.text in MAP_SYMBOLS or var.text in PRODUCT_SYMBOLS or var.text in ACTION_SYMBOLS:
                raise self._error(f"variable name {var.text!r} shadows a symbol", var)
            variables.append((var.text, sort.text))
            if self._is(","):
                self._advance()
                continue
            break
        self._expect(")")
        self._expect(":")
        raw = self.expr()
        self._expect("=")
        zero = self._advance()
        if zero.kind != "int" or int(zero.text) != 0:
            raise self._error("identity must end with '= 0'", zero)

        body = Resolver(dict(variables), self.source).resolve_sum(raw)
        end = zero.offset + len(zero.text)
        return Identity(
            name=start.text,
            variables=tuple(variables),
            body=body,
            source=self.source,
            text=self.text[start.offset:end],
        )

    # ---- expressions ----

    def expr(self) -> RawSum:
        tok = self.current
        terms: List[Tuple[int, Raw]] = []
        sign = 1
        if self._is("+") or self._is("-"):
            sign = -1 if self._advance().text == "-" else 1
        terms.append(self.term(sign))
        while self._is("+") or self._is("-"):
            sign = -1 if self._advance().text == "-" else 1
            terms.append(self.term(sign))
        return RawSum(tuple(terms), tok)

    def term(self, sign: int) -> Tuple[int, Raw]:
        coeff = 1
        if self.current.kind == "int":
            tok = self._advance()
            coeff = int(tok.text)
            if coeff == 0:
                raise self._error("zero coefficient", tok)
            if self._is("*"):
                self._advance()
        return sign * coeff, self.primary()

    def primary(self) -> Raw:
        tok = self.current
        if tok.kind == "name":
            self._advance()
            node: Raw = RawName(tok.text, tok)
        elif self._is("("):
            self._advance()
            node = self.expr()
            self._expect(")")
        else:
            raise self._error(f"expected a term, found {tok.text or 'end of input'!r}")
        while self._is("("):
            open_tok = self._advance()
            args = [self.expr()]
            while self._is(","):
                self._advance()
                args.append(self.expr())
            self._expect(")")
            node = RawApply(node, tuple(args), open_tok)
        return node


class Resolver:
    """Turns raw trees into sorted nodes."""

    def __init__(self, variables: Dict[str, str], source: str = ""):
        self.variables = variables
        self.source = source

    def _sort_error(self, message: str, tok: Tok) -> SortError:
        where = f"{self.source}:" if self.source else ""
        return SortError(f"{where}{tok.line}:{tok.col}: {message}")

    def resolve_sum(self, raw: Raw) -> Sum:
        terms = self._flatten(raw, 1)
        sorts = {node.sort for _, node in terms}
        if len(sorts) > 1:
            tok = raw.tok
            raise self._sort_error(f"terms of different sorts {sorted(sorts)} are added", tok)
        return Sum(tuple(terms), terms[0][1].sort)

    def _flatten(self, raw: Raw, factor: int) -> List[Tuple[int, Node]]:
        if isinstance(raw, RawSum):
            out: List[Tuple[int, Node]] = []
            for coeff, term in raw.terms:
                out.extend(self._flatten(term, factor * coeff))
            return out
        return [(factor, self.resolve(raw))]

    def _arg(self, raw: Raw) -> Node:
        """An argument position: sums are allowed and kept as Sum nodes."""
        if isinstance(raw, RawSum) and len(raw.terms) == 1 and raw.terms[0][0] == 1:
            return self._arg(raw.terms[0][1])
        if isinstance(raw, RawSum):
            return self.resolve_sum(raw)
        return self.resolve(raw)

    def _expect_sort(self, node: Node, sort: str, what: str, tok: Tok) -> None:
        if node.sort != sort:
            raise self._sort_error(f"{what} expects sort {sort}, got {node.sort}", tok)

    def resolve(self, raw: Raw) -> Node:
        if isinstance(raw, RawSum):
            return self._arg(raw)
        if isinstance(raw, RawName):
            return self._resolve_name(raw)
        return self._resolve_apply(raw)

    def _resolve_name(self, raw: RawName) -> Node:
        if raw.name in self.variables:
            return Var(raw.name, self.variables[raw.name])
        if raw.name in MAP_SYMBOLS or raw.name in PRODUCT_SYMBOLS or raw.name in ACTION_SYMBOLS:
            raise self._sort_error(f"symbol {raw.name!r} used without arguments", raw.tok)
        if raw.name in ("form", "Delta", "sigma", "kron", "id", "L", "R"):
            raise self._sort_error(f"{raw.name!r} cannot stand alone here", raw.tok)
        raise UnknownSymbolError(f"{self.source + ':' if self.source else ''}{raw.tok.line}:{raw.tok.col}: undeclared symbol {raw.name!r}")

    def _resolve_apply(self, raw: RawApply) -> Node:
        func, args, tok = raw.func, raw.args, raw.tok

        # curried forms: action(x)(v) and kron(f, g)(t)
        if isinstance(func, RawApply) and isinstance(func.func, RawName):
            head = func.func.name
            if head in ACTION_SYMBOLS:
                return self._action(head, func.args, args, tok)
            if head == "kron":
                return self._kron(func.args, args, tok)

        if not isinstance(func, RawName):
            raise self._sort_error("only named symbols can be applied", tok)

        name = func.name
        if name in self.variables:
            raise self._sort_error(f"variable {name!r} cannot be applied", tok)
        if name in MAP_SYMBOLS:
            domain, result = MAP_SYMBOLS[name]
            self._arity(name, args, 1, tok)
            arg = self._arg(args[0])
            self._expect_sort(arg, domain, name, tok)
            return MapCall(name, arg, result)
        if name in PRODUCT_SYMBOLS:
            sort = PRODUCT_SYMBOLS[name]
            self._arity(name, args, 2, tok)
            left, right = self._arg(args[0]), self._arg(args[1])
            self._expect_sort(left, sort, name, tok)
            self._expect_sort(right, sort, name, tok)
            return ProductCall(name, left, right, sort)
        if name in ACTION_SYMBOLS:
            raise self._sort_error(f"action {name} applied without module argument", tok)
        if name == "form":
            self._arity(name, args, 2, tok)
            left, right = self._arg(args[0]), self._arg(args[1])
            self._expect_sort(left, ALGEBRA, name, tok)
            self._expect_sort(right, ALGEBRA, name, tok)
            return FormCall(left, right)
        if name == "Delta":
            self._arity(name, args, 1, tok)
            arg = self._arg(args[0])
            self._expect_sort(arg, ALGEBRA, name, tok)
            return Delta(arg)
        if name == "sigma":
            self._arity(name, args, 1, tok)
            arg = self._arg(args[0])
            self._expect_sort(arg, TENSOR, name, tok)
            return Sigma(arg)
        if name == "kron":
            raise self._sort_error("kron(f, g) must be applied to a tensor", tok)
        if name in ("id", "L", "R"):
            raise self._sort_error(f"{name!r} is only allowed as an operator inside kron", tok)
        raise UnknownSymbolError(
            f"{self.source + ':' if self.source else ''}{tok.line}:{tok.col}: undeclared symbol {name!r}"
        )

    def _arity(self, name: str, args, n: int, tok: Tok) -> None:
        if len(args) != n:
            raise self._sort_error(f"{name} takes {n} argument(s), got {len(args)}", tok)

    def _action(self, name: str, acting_args, target_args, tok: Tok) -> ActionCall:
        acting_sort, target_sort = ACTION_SYMBOLS[name]
        self._arity(name, acting_args, 1, tok)
        self._arity(f"{name}(...)", target_args, 1, tok)
        acting = self._arg(acting_args[0])
        target = self._arg(target_args[0])
        self._expect_sort(acting, acting_sort, name, tok)
        self._expect_sort(target, target_sort, f"{name}(...)", tok)
        return ActionCall(name, acting, target, target_sort)

    def _kron(self, op_args, tensor_args, tok: Tok) -> Kron:
        self._arity("kron", op_args, 2, tok)
        self._arity("kron(f, g)", tensor_args, 1, tok)
        left, right = (self._op(a, tok) for a in op_args)
        arg = self._arg(tensor_args[0])
        self._expect_sort(arg, TENSOR, "kron(f, g)", tok)
        return Kron(left, right, arg)

    def _op(self, raw: Raw, tok: Tok) -> Op:
        if isinstance(raw, RawSum) and len(raw.terms) == 1 and raw.terms[0][0] == 1:
            raw = raw.terms[0][1]
        if isinstance(raw, RawName):
            if raw.name == "id":
                return OpId()
            if raw.name in MAP_SYMBOLS and MAP_SYMBOLS[raw.name] == (ALGEBRA, ALGEBRA):
                return OpMap(raw.name)
        if isinstance(raw, RawApply) and isinstance(raw.func, RawName) and raw.func.name in ("L", "R"):
            self._arity(raw.func.name, raw.args, 1, tok)
            arg = self._arg(raw.args[0])
            self._expect_sort(arg, ALGEBRA, raw.func.name, tok)
            return OpMult(raw.func.name, arg)
        raise self._sort_error("kron operators must be id, a map on A, L(e) or R(e)", tok)


def parse_identity(text: str, source: str = "") -> Identity:
    """Parse exactly one identity."""
    return IdentityParser(text, source).parse_single()


def parse_identities(text: str, source: str = "") -> List[Identity]:
    """Parse every identity in a catalog file."""
    return IdentityParser(text, source).parse_file()
