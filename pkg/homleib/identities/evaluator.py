"""
Exact evaluation of identities on concrete presentations.

An ``EvalContext`` binds the symbols of the identity language to maps,
products, actions, a form and a cobracket. Contexts are assembled from
presentations with the ``context_*`` helpers; dendriform data automatically
also binds ``br``/``l``/``r`` (and their ``2`` variants) to the split sums.
"""

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple, Union

from homleib.algebra.linalg import LinearMap, Product, Tensor2, Vector, tensor_ops, tensor_swap
from homleib.algebra.model import ActionFamily, AlgebraPresentation
from homleib.algebra.scalar import FieldSpec, Scalar
from homleib.core.exceptions import DimensionError, PresentationError, UnknownSymbolError
from homleib.identities.ast import (
    ALGEBRA,
    MODULE,
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

Value = Union[Vector, Tensor2, Scalar]


@dataclass(frozen=True)
class EvalContext:
    """Symbol bindings for one evaluation."""

    field: FieldSpec
    dims: Mapping[str, int]
    maps: Mapping[str, LinearMap] = field(default_factory=dict)
    products: Mapping[str, Product] = field(default_factory=dict)
    actions: Mapping[str, Tuple[LinearMap, ...]] = field(default_factory=dict)
    form: Optional[LinearMap] = None
    cobracket: Optional[Callable[[Vector], Tensor2]] = None
    label: str = ""

    def dim(self, sort: str) -> int:
        if sort not in self.dims:
            raise UnknownSymbolError(f"context has no space of sort {sort}")
        return self.dims[sort]

    def basis(self, sort: str, index: int) -> Vector:
        return Vector.basis(self.field, self.dim(sort), index)

    def provides(self, symbol: str) -> bool:
        if symbol == "form":
            return self.form is not None
        if symbol == "Delta":
            return self.cobracket is not None
        return symbol in self.maps or symbol in self.products or symbol in self.actions

    def missing(self, identity: Identity) -> list:
        return sorted(s for s in identity.symbols() if not self.provides(s))

    def extend(self, **changes) -> "EvalContext":
        merged = {}
        for key in ("maps", "products", "actions", "dims"):
            if key in changes:
                merged[key] = {**getattr(self, key), **changes.pop(key)}
        return replace(self, **merged, **changes)


# ==============================================================================
# Context builders
# ==============================================================================


def _algebra_bindings(p: AlgebraPresentation, suffix: str = "") -> Tuple[dict, dict]:
    maps = {f"al{suffix}": p.al, f"be{suffix}": p.be}
    products = {f"{name}{suffix}": prod for name, prod in p.products.items()}
    if p.variety.is_dendriform:
        products[f"br{suffix}"] = p.bracket
    return maps, products


def _action_bindings(a: ActionFamily, suffix: str = "") -> dict:
    actions = {f"{name}{suffix}": mats for name, mats in a.actions.items()}
    if a.is_dendriform:
        actions[f"l{suffix}"] = a.matrices("l")
        actions[f"r{suffix}"] = a.matrices("r")
    return actions


def context_for_algebra(p: AlgebraPresentation) -> EvalContext:
    maps, products = _algebra_bindings(p)
    cobracket = p.delta if p.cobracket is not None else None
    return EvalContext(
        field=p.field,
        dims={ALGEBRA: p.dim},
        maps=maps,
        products=products,
        form=p.form,
        cobracket=cobracket,
        label=p.name,
    )


def context_for_module(p: AlgebraPresentation, a: ActionFamily) -> EvalContext:
    """Algebra p acting on the module of a (sort V)."""
    if a.algebra_dim != p.dim:
        raise DimensionError(f"action family indexed by {a.algebra_dim} elements, algebra has dimension {p.dim}")
    ctx = context_for_algebra(p)
    return ctx.extend(
        dims={MODULE: a.module_dim},
        maps={"beV": a.beV, "beV2": a.beV2},
        actions=_action_bindings(a),
        label=f"{p.name}/{a.name}" if a.name else p.name,
    )


def context_for_pair(
    pA: AlgebraPresentation,
    pB: AlgebraPresentation,
    aA: Optional[ActionFamily] = None,
    aB: Optional[ActionFamily] = None,
) -> EvalContext:
    """
    Two algebras A (sort A) and B (sort V).

    ``aA`` is A acting on B (bound as l, r, ...); ``aB`` is B acting on A
    (bound as l2, r2, ...). B's twists and products get the suffix 2.
    """
    if pA.field != pB.field:
        raise PresentationError(f"fields {pA.field} and {pB.field} differ")
    ctx = context_for_algebra(pA)
    maps, products = _algebra_bindings(pB, "2")
    actions = {}
    if aA is not None:
        actions.update(_action_bindings(aA))
    if aB is not None:
        actions.update(_action_bindings(aB, "2"))
    return ctx.extend(
        dims={MODULE: pB.dim},
        maps=maps,
        products=products,
        actions=actions,
        label=f"{pA.name}⋈{pB.name}",
    )


# ==============================================================================
# Evaluation
# ==============================================================================


class Evaluator:
    """Evaluates nodes under a variable environment."""

    def __init__(self, ctx: EvalContext):
        self.ctx = ctx

    def _map(self, symbol: str) -> LinearMap:
        try:
            return self.ctx.maps[symbol]
        except KeyError:
            raise UnknownSymbolError(f"context {self.ctx.label!r} does not bind map {symbol!r}") from None

    def _product(self, symbol: str) -> Product:
        try:
            return self.ctx.products[symbol]
        except KeyError:
            raise UnknownSymbolError(f"context {self.ctx.label!r} does not bind product {symbol!r}") from None

    def _apply_action(self, symbol: str, acting: Vector, target: Vector) -> Vector:
        try:
            mats = self.ctx.actions[symbol]
        except KeyError:
            raise UnknownSymbolError(f"context {self.ctx.label!r} does not bind action {symbol!r}") from None
        if len(mats) != acting.dim:
            raise DimensionError(f"action {symbol} is indexed by {len(mats)} elements, argument has dimension {acting.dim}")
        out = None
        for i, xi in acting.nonzero():
            image = mats[i].apply(target).scale(xi)
            out = image if out is None else out + image
        if out is None:
            return Vector.zero(self.ctx.field, target.dim)
        return out

    def _op(self, op: Op, env) -> LinearMap:
        if isinstance(op, OpId):
            return LinearMap.identity(self.ctx.field, self.ctx.dim(ALGEBRA))
        if isinstance(op, OpMap):
            return self._map(op.symbol)
        if isinstance(op, OpMult):
            x = self.eval(op.arg, env)
            br = self._product("br")
            if op.side == "L":
                cols = [br.apply(x, Vector.basis(self.ctx.field, br.dim, j)) for j in range(br.dim)]
            else:
                cols = [br.apply(Vector.basis(self.ctx.field, br.dim, j), x) for j in range(br.dim)]
            return LinearMap.from_columns(self.ctx.field, cols, br.dim)
        raise TypeError(f"unknown operator {op!r}")

    def eval(self, node: Node, env: Mapping[str, Vector]) -> Value:
        if isinstance(node, Var):
            return env[node.name]
        if isinstance(node, Sum):
            total: Optional[Value] = None
            for coeff, term in node.terms:
                value = self.eval(term, env)
                if coeff != 1:
                    value = value * coeff if isinstance(value, Scalar) else value.scale(coeff)
                total = value if total is None else total + value
            return total
        if isinstance(node, MapCall):
            return self._map(node.symbol).apply(self.eval(node.arg, env))
        if isinstance(node, ProductCall):
            return self._product(node.symbol).apply(self.eval(node.left, env), self.eval(node.right, env))
        if isinstance(node, ActionCall):
            return self._apply_action(node.symbol, self.eval(node.acting, env), self.eval(node.target, env))
        if isinstance(node, FormCall):
            if self.ctx.form is None:
                raise UnknownSymbolError(f"context {self.ctx.label!r} carries no bilinear form")
            u, v = self.eval(node.left, env), self.eval(node.right, env)
            gv = self.ctx.form.apply(v)
            acc = self.ctx.field.zero
            for i, ui in u.nonzero():
                acc = acc + ui * gv[i]
            return acc
        if isinstance(node, Delta):
            if self.ctx.cobracket is None:
                raise UnknownSymbolError(f"context {self.ctx.label!r} carries no cobracket")
            return self.ctx.cobracket(self.eval(node.arg, env))
        if isinstance(node, Sigma):
            return tensor_swap(self.eval(node.arg, env))
        if isinstance(node, Kron):
            return tensor_ops(self.eval(node.arg, env), self._op(node.left, env), self._op(node.right, env))
        raise TypeError(f"unknown node {node!r}")


def environment(identity: Identity, ctx: EvalContext, assignment: Sequence[int]) -> Dict[str, Vector]:
    return {
        name: ctx.basis(sort, index) for (name, sort), index in zip(identity.variables, assignment)
    }


def evaluate_identity(identity: Identity, ctx: EvalContext, assignment: Mapping[str, int]) -> Value:
    """
    Residual of ``identity`` with each variable set to a basis vector.

    ``assignment`` maps variable names to 0-based basis indices.
    """
    missing = ctx.missing(identity)
    if missing:
        raise UnknownSymbolError(f"identity {identity.name} needs {missing}, not bound by {ctx.label!r}")
    indices = [assignment[name] for name in identity.variable_names]
    for (name, sort), index in zip(identity.variables, indices):
        if not 0 <= index < ctx.dim(sort):
            raise DimensionError(f"index {index + 1} out of range for {name}: {sort}")
    return Evaluator(ctx).eval(identity.body, environment(identity, ctx, indices))


def evaluate_on_vectors(identity: Identity, ctx: EvalContext, values: Mapping[str, Vector]) -> Value:
    """Residual at arbitrary vectors."""
    return Evaluator(ctx).eval(identity.body, values)


def residual_coords(value: Value) -> list:
    if isinstance(value, Vector):
        return list(value.coords)
    if isinstance(value, Tensor2):
        return value.flat()
    return [value]
