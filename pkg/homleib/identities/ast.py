"""Typed syntax tree of multilinear identities."""

from dataclasses import dataclass
from typing import Tuple

# Sorts
ALGEBRA = "A"
MODULE = "V"
TENSOR = "T"
SCALAR = "S"

VARIABLE_SORTS = (ALGEBRA, MODULE)

# Symbol tables: name -> (domain sort(s), result sort)
MAP_SYMBOLS = {
    "al": (ALGEBRA, ALGEBRA),
    "be": (ALGEBRA, ALGEBRA),
    "K": (ALGEBRA, ALGEBRA),
    "al2": (MODULE, MODULE),
    "be2": (MODULE, MODULE),
    "beV": (MODULE, MODULE),
    "beV2": (MODULE, MODULE),
    "T": (MODULE, ALGEBRA),
}

PRODUCT_SYMBOLS = {
    "br": ALGEBRA,
    "prec": ALGEBRA,
    "succ": ALGEBRA,
    "br2": MODULE,
    "prec2": MODULE,
    "succ2": MODULE,
}

_ACTION_STEMS = ("l", "r", "lprec", "rprec", "lsucc", "rsucc", "ldual", "rdual")

# action name -> (acting sort, target sort); the result has the target sort
ACTION_SYMBOLS = {
    **{stem: (ALGEBRA, MODULE) for stem in _ACTION_STEMS},
    **{f"{stem}2": (MODULE, ALGEBRA) for stem in _ACTION_STEMS},
}

SPECIAL_SYMBOLS = ("form", "Delta", "sigma", "kron", "id", "L", "R")


class Node:
    """Base class of typed expression nodes."""

    sort: str


@dataclass(frozen=True)
class Var(Node):
    name: str
    sort: str


@dataclass(frozen=True)
class MapCall(Node):
    symbol: str
    arg: Node
    sort: str


@dataclass(frozen=True)
class ProductCall(Node):
    symbol: str
    left: Node
    right: Node
    sort: str


@dataclass(frozen=True)
class ActionCall(Node):
    symbol: str
    acting: Node
    target: Node
    sort: str


@dataclass(frozen=True)
class FormCall(Node):
    left: Node
    right: Node
    sort: str = SCALAR


@dataclass(frozen=True)
class Delta(Node):
    arg: Node
    sort: str = TENSOR


@dataclass(frozen=True)
class Sigma(Node):
    arg: Node
    sort: str = TENSOR


class Op:
    """Operator on A used inside kron(f, g)."""


@dataclass(frozen=True)
class OpId(Op):
    pass


@dataclass(frozen=True)
class OpMap(Op):
    symbol: str


@dataclass(frozen=True)
class OpMult(Op):
    """L(e) = e ∘ -, R(e) = - ∘ e under br."""

    side: str
    arg: Node


@dataclass(frozen=True)
class Kron(Node):
    left: Op
    right: Op
    arg: Node
    sort: str = TENSOR


@dataclass(frozen=True)
class Sum(Node):
    """Σ coeff·term; coefficients are nonzero integers."""

    terms: Tuple[Tuple[int, Node], ...]
    sort: str


@dataclass(frozen=True)
class Identity:
    name: str
    variables: Tuple[Tuple[str, str], ...]
    body: Sum
    source: str = ""
    text: str = ""

    @property
    def sort(self) -> str:
        return self.body.sort

    @property
    def variable_names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.variables)

    @property
    def sorts(self) -> dict:
        return dict(self.variables)

    def symbols(self) -> set:
        """Every symbol the body refers to."""
        found: set = set()
        _collect(self.body, found)
        return found


def _collect(node, found: set) -> None:
    if isinstance(node, Sum):
        for _, term in node.terms:
            _collect(term, found)
    elif isinstance(node, MapCall):
        found.add(node.symbol)
        _collect(node.arg, found)
    elif isinstance(node, ProductCall):
        found.add(node.symbol)
        _collect(node.left, found)
        _collect(node.right, found)
    elif isinstance(node, ActionCall):
        found.add(node.symbol)
        _collect(node.acting, found)
        _collect(node.target, found)
    elif isinstance(node, FormCall):
        found.add("form")
        _collect(node.left, found)
        _collect(node.right, found)
    elif isinstance(node, Delta):
        found.add("Delta")
        _collect(node.arg, found)
    elif isinstance(node, Sigma):
        _collect(node.arg, found)
    elif isinstance(node, Kron):
        for op in (node.left, node.right):
            if isinstance(op, OpMap):
                found.add(op.symbol)
            elif isinstance(op, OpMult):
                found.add("br")
                _collect(op.arg, found)
        _collect(node.arg, found)
