"""
Constructed bimodules: regular and tensor actions, pullbacks along
morphisms, twisted bimodules and power-composed BiHom bimodules.

Every constructor checks its output with check_bimodule and raises
VerificationError when the check fails.
"""

from typing import Dict, Optional, Tuple

from homleib.algebra.linalg import LinearMap, map_inverse
from homleib.algebra.model import ActionFamily, AlgebraPresentation
from homleib.core.exceptions import PreconditionError, VerificationError
from homleib.core.logging import log_debug, logged_operation
from homleib.construct.twist import (
    TwistRecipe,
    morphism_report,
    multiplicativity_report,
    yau_twist,
)
from homleib.identities.checker import Report, check_bimodule

REGULAR_MODES = ("LR", "L0")


def _verified(p: AlgebraPresentation, a: ActionFamily, construction: str, jobs: Optional[int]) -> ActionFamily:
    report = check_bimodule(p, a, jobs=jobs)
    if not report.passed:
        raise VerificationError(construction, report)
    return a


def _precondition(report: Report, name: str) -> None:
    if not report.passed:
        failed = report.first_failure()
        label = failed.identity if failed else report.precondition
        raise PreconditionError(name, f"{label} fails", report)


def _module_twists(p: AlgebraPresentation) -> Dict[str, LinearMap]:
    if p.variety.is_bihom:
        return {"beV": p.al, "beV2": p.be}
    return {"beV": p.al}


def compose_actions(a: ActionFamily, f: LinearMap) -> Dict[str, Tuple[LinearMap, ...]]:
    """X∘f for every action X: the matrix at e_i becomes X(f(e_i))."""
    return {
        aname: tuple(a.action_map(aname, f.column(i)) for i in range(f.dim_in))
        for aname in a.actions
    }


@logged_operation("regular_actions")
def regular_actions(p: AlgebraPresentation, mode: str = "LR", jobs: Optional[int] = None) -> ActionFamily:
    """
    The algebra acting on itself by left and right multiplication.

    ``mode="L0"`` keeps the left multiplications and zeroes every right
    action.
    """
    if mode not in REGULAR_MODES:
        raise ValueError(f"unknown regular mode {mode!r}; expected one of {REGULAR_MODES}")
    if p.variety.is_bihom:
        _precondition(multiplicativity_report(p, jobs), "multiplicative")

    zero = LinearMap.zero(p.field, p.dim)
    actions = {}
    for pname in p.variety.product_names:
        prod = p.product(pname)
        suffix = "" if pname == "br" else pname
        actions[f"l{suffix}"] = tuple(prod.left_multiplication(i) for i in range(p.dim))
        if mode == "LR":
            actions[f"r{suffix}"] = tuple(prod.right_multiplication(i) for i in range(p.dim))
        else:
            actions[f"r{suffix}"] = (zero,) * p.dim

    family = ActionFamily(
        algebra_dim=p.dim,
        module_dim=p.dim,
        field=p.field,
        actions=actions,
        module_twists=_module_twists(p),
        multiplicative=p.multiplicative,
        name=f"regular_{mode}",
    )
    return _verified(p, family, "regular_actions", jobs)


def _kron(a: LinearMap, b: LinearMap) -> LinearMap:
    rows = [
        [a.entry(i, j) * b.entry(k, m) for j in range(a.dim_in) for m in range(b.dim_in)]
        for i in range(a.dim_out)
        for k in range(b.dim_out)
    ]
    return LinearMap(a.field, rows)


@logged_operation("tensor_bimodule")
def tensor_bimodule(p: AlgebraPresentation, jobs: Optional[int] = None) -> ActionFamily:
    """
    (α⊗L, α⊗R) acting on A⊗A with twist α⊗α; the basis element e_a⊗e_b
    has index a·dim + b.
    """
    if p.variety.is_dendriform or p.variety.is_bihom:
        raise PreconditionError("variety", f"tensor bimodules are defined for Hom-Leibniz algebras, not {p.variety.value}")
    _precondition(multiplicativity_report(p, jobs), "multiplicative")
    bracket = p.product("br")
    family = ActionFamily(
        algebra_dim=p.dim,
        module_dim=p.dim * p.dim,
        field=p.field,
        actions={
            "l": tuple(_kron(p.al, bracket.left_multiplication(i)) for i in range(p.dim)),
            "r": tuple(_kron(p.al, bracket.right_multiplication(i)) for i in range(p.dim)),
        },
        module_twists={"beV": _kron(p.al, p.al)},
        multiplicative=True,
        name="tensor",
    )
    return _verified(p, family, "tensor_bimodule", jobs)


@logged_operation("pullback_actions")
def pullback_actions(
    f: LinearMap,
    source: AlgebraPresentation,
    target: AlgebraPresentation,
    actions: Optional[ActionFamily] = None,
    jobs: Optional[int] = None,
) -> ActionFamily:
    """
    Pull an action family of ``target`` back along a morphism
    f: source → target, so that x acts as f(x) does.

    Without ``actions`` the target's regular actions are pulled back, giving
    the target a bimodule structure over the source.
    """
    _precondition(morphism_report(f, source, target), "morphism")
    base = actions if actions is not None else regular_actions(target, jobs=jobs)
    family = base.replace(
        algebra_dim=source.dim,
        actions=compose_actions(base, f),
        name=f"{base.name}_pullback" if base.name else "pullback",
    )
    return _verified(source, family, "pullback_actions", jobs)


@logged_operation("twisted_bimodule")
def twisted_bimodule(
    a: ActionFamily,
    p: AlgebraPresentation,
    beta_prime: LinearMap,
    alpha_prime: LinearMap,
    jobs: Optional[int] = None,
) -> ActionFamily:
    """
    Twist a bimodule of ``p`` along an algebra morphism α′ and a module map β′.

    Every action X becomes (X∘α′)β′ and the module twist becomes ββ′; the
    result is a bimodule of the Yau twist of ``p`` by α′. Requires β′ to
    commute with β and β′∘X(x) = X(α′x)∘β′ for every action.
    """
    if p.variety.is_bihom:
        raise PreconditionError("variety", "twisted bimodules take a single algebra twist")
    if beta_prime.shape != (a.module_dim, a.module_dim):
        raise PreconditionError("shape", f"β′ must be {a.module_dim}×{a.module_dim}")
    if not beta_prime.commutes_with(a.beV):
        raise PreconditionError("commuting twists", "β′ does not commute with the module twist")

    composed = compose_actions(a, alpha_prime)
    for aname, mats in a.actions.items():
        for i, (m, twisted) in enumerate(zip(mats, composed[aname])):
            if beta_prime.compose(m) != twisted.compose(beta_prime):
                raise PreconditionError("intertwining", f"β′∘{aname}(e{i + 1}) differs from {aname}(α′e{i + 1})∘β′")

    twisted_algebra = yau_twist(p, TwistRecipe.single(alpha_prime), jobs=jobs)
    family = a.replace(
        actions={aname: tuple(m.compose(beta_prime) for m in mats) for aname, mats in composed.items()},
        module_twists={"beV": a.beV.compose(beta_prime)},
        name=f"{a.name}_twisted" if a.name else "twisted",
    )
    log_debug(f"Checking twisted bimodule against {twisted_algebra.name or 'the twisted algebra'}")
    return _verified(twisted_algebra, family, "twisted_bimodule", jobs)


@logged_operation("power_bimodule")
def power_bimodule(
    a: ActionFamily,
    p: AlgebraPresentation,
    which: int,
    n: int,
    jobs: Optional[int] = None,
) -> ActionFamily:
    """
    (l∘α₁ⁿ, r∘α₁ⁿ) (``which=1``) or with α₂ (``which=2``) over a
    multiplicative BiHom-Leibniz algebra, module twists unchanged. Negative
    ``n`` uses the inverse twist.
    """
    if not p.variety.is_bihom or p.variety.is_dendriform:
        raise PreconditionError("variety", f"power bimodules are defined for BiHom-Leibniz algebras, not {p.variety.value}")
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which}")
    _precondition(multiplicativity_report(p, jobs), "multiplicative")
    twist = p.al if which == 1 else p.be
    power = twist.power(n) if n >= 0 else map_inverse(twist).power(-n)
    family = a.replace(
        actions=compose_actions(a, power),
        name=f"{a.name or 'actions'}_pow{which}_{n}",
    )
    return _verified(p, family, "power_bimodule", jobs)
