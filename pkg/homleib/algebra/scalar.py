"""
Exact coefficients over three kinds of field: the rationals, one quadratic
extension Q(sqrt d), and rational functions over Q in named parameters.

Rational functions are kept as unreduced fractions of sympy polynomials in a
graded-lexicographic ring. Equality and zero tests go through
cross-multiplication, so no multivariate gcd is ever needed.
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from sympy.ntheory import factorint
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from homleib.core.exceptions import FieldError, PoleError, ZeroDivision

RATIONALS = "rationals"
QUADRATIC = "quadratic"
RATIONAL_FUNCTIONS = "rational_functions"

RESERVED_NAMES = frozenset({"s", "over", "id"})
SQRT_SYMBOL = "s"

_IDENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_FIELD_RE = re.compile(r"^\s*(\w+)\s*(?:\((.*)\))?\s*$")

Number = Union[int, "QQ.dtype"]


def qq(value) -> "QQ.dtype":
    """Coerce an int, a (num, den) pair or a QQ element into QQ."""
    if isinstance(value, tuple):
        return QQ(*value)
    return QQ.convert(value)


def format_rational(c) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class FieldSpec:
    """
    A coefficient field.

    Attributes:
        kind: one of "rationals", "quadratic", "rational_functions"
        d: the square-free radicand for quadratic fields
        params: ordered parameter names for rational-function fields
    """

    kind: str = RATIONALS
    d: Optional[int] = None
    params: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.d is not None or self.params:
                raise FieldError("the rationals take no radicand or parameters")
        elif self.kind == QUADRATIC:
            if self.params:
                raise FieldError("quadratic fields cannot also carry parameters")
            if not isinstance(self.d, int) or self.d in (0, 1):
                raise FieldError(f"radicand must be a nonzero non-square integer, got {self.d!r}")
            if any(exp > 1 for exp in factorint(abs(self.d)).values()):
                raise FieldError(f"radicand {self.d} is not square-free")
        elif self.kind == RATIONAL_FUNCTIONS:
            if not self.params:
                raise FieldError("rational_functions needs at least one parameter")
            if len(set(self.params)) != len(self.params):
                raise FieldError(f"duplicate parameter names in {self.params}")
            for name in self.params:
                if not _IDENT_RE.match(name):
                    raise FieldError(f"invalid parameter name {name!r}")
                if name in RESERVED_NAMES:
                    raise FieldError(f"parameter name {name!r} is reserved")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(RATIONALS)

    @classmethod
    def quadratic(cls, d: int) -> "FieldSpec":
        return cls(QUADRATIC, d=d)

    @classmethod
    def rational_functions(cls, *params: str) -> "FieldSpec":
        return cls(RATIONAL_FUNCTIONS, params=tuple(params))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse "rationals", "quadratic(2)" or "rational_functions(p,q)"."""
        match = _FIELD_RE.match(text or "")
        if not match:
            raise FieldError(f"malformed field declaration {text!r}")
        kind, args = match.group(1), match.group(2)
        if kind == RATIONALS and args is None:
            return cls.rationals()
        if kind == QUADRATIC and args is not None:
            try:
                return cls.quadratic(int(args.strip()))
            except ValueError as e:
                raise FieldError(f"quadratic radicand must be an integer, got {args!r}") from e
        if kind == RATIONAL_FUNCTIONS and args is not None:
            return cls.rational_functions(*(a.strip() for a in args.split(",")))
        raise FieldError(f"malformed field declaration {text!r}")

    def __str__(self) -> str:
        if self.kind == QUADRATIC:
            return f"quadratic({self.d})"
        if self.kind == RATIONAL_FUNCTIONS:
            return f"rational_functions({','.join(self.params)})"
        return RATIONALS

    @cached_property
    def ring(self) -> PolyRing:
        if self.kind != RATIONAL_FUNCTIONS:
            raise FieldError(f"{self} has no parameter ring")
        return PolyRing(self.params, QQ, grlex)

    @property
    def is_parametric(self) -> bool:
        return self.kind == RATIONAL_FUNCTIONS

    # ---- element constructors ----

    def from_rational(self, value) -> "Scalar":
        c = qq(value)
        if self.kind == RATIONALS:
            return RationalScalar(self, c)
        if self.kind == QUADRATIC:
            return QuadraticScalar(self, c, QQ.zero)
        return FunctionScalar(self, self.ring.ground_new(c), self.ring.one)

    @property
    def zero(self) -> "Scalar":
        return self.from_rational(0)

    @property
    def one(self) -> "Scalar":
        return self.from_rational(1)

    def sqrt_d(self) -> "Scalar":
        if self.kind != QUADRATIC:
            raise FieldError(f"{self} has no square root symbol")
        return QuadraticScalar(self, QQ.zero, QQ.one)

    def param(self, name: str) -> "Scalar":
        if name not in self.params:
            raise FieldError(f"{name!r} is not a parameter of {self}")
        R = self.ring
        return FunctionScalar(self, R.gens[self.params.index(name)], R.one)

    def coerce(self, value) -> "Scalar":
        """Bring an int, rational or same-field Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldError(f"cannot mix {value.field} with {self}")
            return value
        return self.from_rational(value)

    def scalar(self, text: str) -> "Scalar":
        """Parse a coefficient literal in this field."""
        from homleib.algebra.literals import scalar_parse

        return scalar_parse(text, self)

    def restricted(self, remaining: Iterable[str]) -> "FieldSpec":
        keep = set(remaining)
        remaining = tuple(p for p in self.params if p in keep)
        return FieldSpec.rational_functions(*remaining) if remaining else FieldSpec.rationals()


class Scalar:
    """
    Immutable exact field element.

    Arithmetic between scalars of different fields raises FieldError; ints
    and QQ values are coerced into the field of the other operand.
    """

    __slots__ = ("field",)
    __hash__ = None

    def __init__(self, field: FieldSpec):
        self.field = field

    # ---- subclass hooks ----

    def _add(self, other: "Scalar") -> "Scalar":
        raise NotImplementedError

    def _mul(self, other: "Scalar") -> "Scalar":
        raise NotImplementedError

    def _neg(self) -> "Scalar":
        raise NotImplementedError

    def inverse(self) -> "Scalar":
        raise NotImplementedError

    @property
    def is_zero(self) -> bool:
        raise NotImplementedError

    def canonical(self) -> "Scalar":
        return self

    # ---- operators ----

    def _other(self, other) -> "Scalar":
        return self.field.coerce(other)

    def __add__(self, other):
        return self._add(self._other(other))

    def __radd__(self, other):
        return self._other(other)._add(self)

    def __sub__(self, other):
        return self._add(self._other(other)._neg())

    def __rsub__(self, other):
        return self._other(other)._add(self._neg())

    def __mul__(self, other):
        return self._mul(self._other(other))

    def __rmul__(self, other):
        return self._other(other)._mul(self)

    def __truediv__(self, other):
        return self._mul(self._other(other).inverse())

    def __rtruediv__(self, other):
        return self._other(other)._mul(self.inverse())

    def __neg__(self):
        return self._neg()

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)) or QQ.of_type(other):
            try:
                return (self - other).is_zero
            except FieldError:
                return False
        return NotImplemented

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"Scalar({str(self)!r}, {self.field})"


class RationalScalar(Scalar):
    __slots__ = ("value",)

    def __init__(self, field: FieldSpec, value):
        super().__init__(field)
        self.value = value

    def _add(self, other):
        return RationalScalar(self.field, self.value + other.value)

    def _mul(self, other):
        return RationalScalar(self.field, self.value * other.value)

    def _neg(self):
        return RationalScalar(self.field, -self.value)

    def inverse(self):
        if not self.value:
            raise ZeroDivision("division by zero")
        return RationalScalar(self.field, QQ.one / self.value)

    @property
    def is_zero(self):
        return not self.value

    def __str__(self):
        return format_rational(self.value)


class QuadraticScalar(Scalar):
    """a + b*sqrt(d) with rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, field: FieldSpec, a, b):
        super().__init__(field)
        self.a = a
        self.b = b

    def _add(self, other):
        return QuadraticScalar(self.field, self.a + other.a, self.b + other.b)

    def _mul(self, other):
        d = self.field.d
        return QuadraticScalar(
            self.field,
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def _neg(self):
        return QuadraticScalar(self.field, -self.a, -self.b)

    def inverse(self):
        norm = self.a * self.a - self.field.d * self.b * self.b
        if not norm:
            raise ZeroDivision("division by zero")
        return QuadraticScalar(self.field, self.a / norm, -self.b / norm)

    @property
    def is_zero(self):
        return not self.a and not self.b

    def __str__(self):
        if not self.b:
            return format_rational(self.a)
        if self.b == 1:
            radical = SQRT_SYMBOL
        elif self.b == -1:
            radical = f"-{SQRT_SYMBOL}"
        else:
            radical = f"{format_rational(self.b)}*{SQRT_SYMBOL}"
        if not self.a:
            return radical
        if radical.startswith("-"):
            return f"{format_rational(self.a)} - {radical[1:]}"
        return f"{format_rational(self.a)} + {radical}"


class FunctionScalar(Scalar):
    """num/den of polynomials over Q; den is monic (or 1) after normalization."""

    __slots__ = ("num", "den")

    def __init__(self, field: FieldSpec, num, den):
        super().__init__(field)
        if den.is_zero:
            raise ZeroDivision("division by zero")
        if num.is_zero:
            num, den = field.ring.zero, field.ring.one
        elif den.is_ground:
            num, den = num.quo_ground(den.LC), field.ring.one
        else:
            lc = den.LC
            if lc != 1:
                num, den = num.quo_ground(lc), den.quo_ground(lc)
            quotient, remainder = num.div(den)
            if remainder.is_zero:
                num, den = quotient, field.ring.one
        self.num = num
        self.den = den

    def _add(self, other):
        if self.den == other.den:
            return FunctionScalar(self.field, self.num + other.num, self.den)
        return FunctionScalar(
            self.field, self.num * other.den + other.num * self.den, self.den * other.den
        )

    def _mul(self, other):
        return FunctionScalar(self.field, self.num * other.num, self.den * other.den)

    def _neg(self):
        return FunctionScalar(self.field, -self.num, self.den)

    def inverse(self):
        if self.num.is_zero:
            raise ZeroDivision("division by zero")
        return FunctionScalar(self.field, self.den, self.num)

    @property
    def is_zero(self):
        return self.num.is_zero

    def __eq__(self, other):
        if isinstance(other, FunctionScalar) and other.field == self.field:
            return (self.num * other.den - other.num * self.den).is_zero
        return super().__eq__(other)

    __hash__ = None

    def specialize(self, values: Mapping[str, object]) -> Scalar:
        """
        Substitute rational values for some parameters.

        Returns a scalar of the field over the remaining parameters (or the
        rationals when none remain). Raises PoleError when the denominator
        vanishes under the substitution.
        """
        values = {name: qq(v) for name, v in values.items() if name in self.field.params}
        target = self.field.restricted(p for p in self.field.params if p not in values)
        num = _substitute(self.num, self.field, target, values)
        den = _substitute(self.den, self.field, target, values)
        if all(c == 0 for c in den.values()):
            raise PoleError(f"{self} has a pole at {_format_values(values)}")
        return _from_coefficients(target, num) / _from_coefficients(target, den)

    def __str__(self):
        num = format_polynomial(self.num, self.field.params)
        if self.den == 1:
            return num
        if len(self.num) > 1:
            num = f"({num})"
        den = format_polynomial(self.den, self.field.params)
        if len(self.den) > 1 or sum(1 for e in next(iter(self.den.keys())) if e) > 1:
            den = f"({den})"
        return f"{num}/{den}"


def _format_values(values: Mapping[str, object]) -> str:
    return ", ".join(f"{k}={format_rational(v)}" for k, v in values.items())


def _substitute(poly, source: FieldSpec, target: FieldSpec, values) -> Dict[tuple, object]:
    """Evaluate a polynomial at the given parameter values, keeping the rest symbolic."""
    keep = [i for i, name in enumerate(source.params) if name not in values]
    fixed = [(i, values[name]) for i, name in enumerate(source.params) if name in values]
    out: Dict[tuple, object] = {}
    for monom, coeff in poly.items():
        c = coeff
        for i, value in fixed:
            c *= value ** monom[i]
        key = tuple(monom[i] for i in keep)
        out[key] = out.get(key, QQ.zero) + c
    return out


def _from_coefficients(field: FieldSpec, coeffs: Dict[tuple, object]) -> Scalar:
    if not field.is_parametric:
        return field.from_rational(coeffs.get((), QQ.zero))
    R = field.ring
    return FunctionScalar(field, R.from_dict({m: c for m, c in coeffs.items() if c}), R.one)


def format_polynomial(poly, names: Tuple[str, ...]) -> str:
    """Print a polynomial leading term first, e.g. "1/3*p^2*q - 2*q + 1"."""
    if poly.is_zero:
        return "0"
    pieces = []
    for monom, coeff in poly.terms():
        factors = [
            name if exp == 1 else f"{name}^{exp}" for name, exp in zip(names, monom) if exp
        ]
        magnitude = abs(coeff)
        if not factors:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = f"{format_rational(magnitude)}*" + "*".join(factors)
        pieces.append((coeff < 0, body))

    negative, body = pieces[0]
    text = f"-{body}" if negative else body
    for negative, body in pieces[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text


ARITH_OPS = ("add", "sub", "mul", "div")


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Exact field operation; mixed fields raise FieldError, b = 0 under div raises ZeroDivision."""
    if a.field != b.field:
        raise FieldError(f"mixed-field operands: {a.field} and {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}; expected one of {ARITH_OPS}")


def scalar_is_zero(a: Scalar) -> bool:
    return a.is_zero


def specialize(value: Scalar, values: Mapping[str, object]) -> Scalar:
    """Specialize any scalar; non-parametric scalars pass through unchanged."""
    if isinstance(value, FunctionScalar):
        return value.specialize(values)
    return value


def specialized_field(field: FieldSpec, values: Mapping[str, object]) -> FieldSpec:
    """The field left after substituting ``values``; unknown names are ignored."""
    if not field.is_parametric:
        return field
    return field.restricted(p for p in field.params if p not in values)


def rational_values(values: Mapping[str, object]) -> Dict[str, "QQ.dtype"]:
    """Parse specialization values given as literals such as "2" or "-1/2"."""
    rationals = FieldSpec.rationals()
    out = {}
    for name, value in values.items():
        scalar = rationals.scalar(str(value))
        out[name] = scalar.value
    return out
