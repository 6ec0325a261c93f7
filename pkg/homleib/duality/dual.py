"""
Dual bimodules of involutive multiplicative algebras.

For a bimodule (l, r, β, V) the dual actions on V* are l*(x) = −l(x)ᵀ and
r*(x) = −r(x)ᵀ (the signed dual). The dual module twist is the plain
transpose βᵀ; with the signed dual −βᵀ the first bimodule axiom fails
whenever l*([x, y]) is nonzero.
"""

from typing import Dict, Optional, Tuple

from homleib.algebra.linalg import LinearMap, dual_map
from homleib.algebra.model import ActionFamily, AlgebraPresentation
from homleib.core.exceptions import PreconditionError, VerificationError
from homleib.core.logging import logged_operation
from homleib.construct.sums import sub_adjacent
from homleib.construct.twist import multiplicativity_report
from homleib.identities.checker import Report, check_bimodule, check_named
from homleib.identities.evaluator import context_for_algebra

# mode -> (left, right) as combinations of l*, r*
DUAL_MODES = {
    "lr": "(l*, r*)",
    "coadjoint": "(l*, -l*-r*)",
    "l0": "(l*, 0)",
    "0r": "(0, r*)",
}

# dendriform combinations: name -> description
DENDRIFORM_DUAL_COMBINATIONS = {
    "sum": "(l*≺ + l*≻, r*≺ + r*≻) over the sub-adjacent algebra",
    "coadjoint": "(l*≻, -l*≻ - r*≺) over the sub-adjacent algebra",
    "split": "(l*≻, r*≺) over the sub-adjacent algebra",
    "dendriform_sum": "(0, l*≺ + l*≻, r*≺ + r*≻, 0) over the dendriform algebra",
    "dendriform_coadjoint": "(0, l*≻, -l*≻ - r*≺, 0) over the dendriform algebra",
    "dendriform_split": "(0, l*≻, r*≺, 0) over the dendriform algebra",
}

Mats = Tuple[LinearMap, ...]


def transpose(m: LinearMap) -> LinearMap:
    """The unsigned transpose, recovered from the signed dual."""
    return -dual_map(m)


def _dual(mats: Mats) -> Mats:
    return tuple(dual_map(m) for m in mats)


def _add(*families: Mats) -> Mats:
    return tuple(sum(ms[1:], ms[0]) for ms in zip(*families))


def _neg(mats: Mats) -> Mats:
    return tuple(-m for m in mats)


def _zero(a: ActionFamily) -> Mats:
    return (LinearMap.zero(a.field, a.module_dim),) * a.algebra_dim


def involutive_report(p: AlgebraPresentation, jobs: Optional[int] = None) -> Report:
    return check_named(["involutive_al"], context_for_algebra(p), jobs=jobs, title="involutive")


def require_involutive_multiplicative(p: AlgebraPresentation, jobs: Optional[int] = None) -> None:
    """The standing hypothesis of the duality constructions, verified."""
    if not involutive_report(p, jobs).passed:
        raise PreconditionError("involutive", f"the twist of {p.name or 'the algebra'} is not involutive")
    report = multiplicativity_report(p, jobs)
    if not report.passed:
        raise PreconditionError("multiplicative", f"{report.first_failure().identity} fails", report)


def _dual_twists(a: ActionFamily) -> Dict[str, LinearMap]:
    return {name: transpose(m) for name, m in a.module_twists.items()}


@logged_operation("dual_actions")
def dual_actions(
    a: ActionFamily,
    p: AlgebraPresentation,
    mode: str = "lr",
    jobs: Optional[int] = None,
) -> ActionFamily:
    """
    The dual bimodule of ``a`` in one of the modes of DUAL_MODES.

    Dendriform families are dualized through their sub-adjacent sums l, r.
    """
    if mode not in DUAL_MODES:
        raise ValueError(f"unknown dual mode {mode!r}; expected one of {list(DUAL_MODES)}")
    if p.variety.is_dendriform or p.variety.is_bihom:
        raise PreconditionError("variety", f"dual bimodules are defined over Hom-Leibniz algebras, not {p.variety.value}")
    require_involutive_multiplicative(p, jobs)

    l_star, r_star = _dual(a.matrices("l")), _dual(a.matrices("r"))
    left, right = {
        "lr": (l_star, r_star),
        "coadjoint": (l_star, _neg(_add(l_star, r_star))),
        "l0": (l_star, _zero(a)),
        "0r": (_zero(a), r_star),
    }[mode]
    family = ActionFamily(
        algebra_dim=a.algebra_dim,
        module_dim=a.module_dim,
        field=a.field,
        actions={"l": left, "r": right},
        module_twists=_dual_twists(a),
        multiplicative=a.multiplicative,
        name=f"{a.name or 'actions'}_dual_{mode}",
    )
    report = check_bimodule(p, family, jobs=jobs)
    if not report.passed:
        raise VerificationError("dual_actions", report)
    return family


@logged_operation("dendriform_dual_bimodules")
def dendriform_dual_bimodules(
    a: ActionFamily,
    p: AlgebraPresentation,
    jobs: Optional[int] = None,
) -> Dict[str, Tuple[ActionFamily, Report]]:
    """
    Every dual combination of a dendriform bimodule, each with its bimodule
    report: the Leibniz-type ones against the sub-adjacent algebra, the
    dendriform ones against ``p`` itself.
    """
    if not p.variety.is_dendriform or p.variety.is_bihom or not a.is_dendriform:
        raise PreconditionError("variety", "dendriform dual bimodules need a Hom-Leibniz dendriform bimodule")
    require_involutive_multiplicative(p, jobs)
    bracket_algebra = sub_adjacent(p, jobs=jobs)

    lp, rp = _dual(a.actions["lprec"]), _dual(a.actions["rprec"])
    ls, rs = _dual(a.actions["lsucc"]), _dual(a.actions["rsucc"])
    zero = _zero(a)
    coadjoint_right = _neg(_add(ls, rp))
    leibniz = {
        "sum": (_add(lp, ls), _add(rp, rs)),
        "coadjoint": (ls, coadjoint_right),
        "split": (ls, rp),
    }
    dendriform = {
        "dendriform_sum": (_add(lp, ls), _add(rp, rs)),
        "dendriform_coadjoint": (ls, coadjoint_right),
        "dendriform_split": (ls, rp),
    }

    out: Dict[str, Tuple[ActionFamily, Report]] = {}
    twists = _dual_twists(a)
    for name, (left, right) in leibniz.items():
        family = ActionFamily(
            algebra_dim=a.algebra_dim,
            module_dim=a.module_dim,
            field=a.field,
            actions={"l": left, "r": right},
            module_twists=twists,
            multiplicative=a.multiplicative,
            name=f"dual_{name}",
        )
        out[name] = (family, check_bimodule(bracket_algebra, family, jobs=jobs))
    for name, (rprec, lsucc) in dendriform.items():
        family = ActionFamily(
            algebra_dim=a.algebra_dim,
            module_dim=a.module_dim,
            field=a.field,
            actions={"lprec": zero, "rprec": rprec, "lsucc": lsucc, "rsucc": zero},
            module_twists=twists,
            multiplicative=a.multiplicative,
            name=f"dual_{name}",
        )
        out[name] = (family, check_bimodule(p, family, jobs=jobs))
    return out
