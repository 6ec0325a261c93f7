"""
Presentation data model: algebras, bimodule action families and O-operators,
all given by structure constants in the standard basis.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

from homleib.algebra.linalg import LinearMap, Product, Tensor2, Vector
from homleib.algebra.scalar import FieldSpec, specialized_field
from homleib.core.exceptions import PresentationError

DENDRIFORM_PRODUCTS = ("prec", "succ")
LEIBNIZ_PRODUCTS = ("br",)
HOM_TWISTS = ("al",)
BIHOM_TWISTS = ("al", "be")
LEIBNIZ_ACTIONS = ("l", "r")
DENDRIFORM_ACTIONS = ("lprec", "rprec", "lsucc", "rsucc")
HOM_MODULE_TWISTS = ("beV",)
BIHOM_MODULE_TWISTS = ("beV", "beV2")

CONVENTIONS = ("hom_paper", "swapped")
CONVENTION_ALIASES = {"standard": "hom_paper"}


class VarietyTag(str, Enum):
    HOM_LEIBNIZ = "HomLeibniz"
    HOM_LIE = "HomLie"
    LEIBNIZ = "Leibniz"
    HOM_LEIBNIZ_DENDRIFORM = "HomLeibnizDendriform"
    BIHOM_LEIBNIZ = "BiHomLeibniz"
    BIHOM_LEIBNIZ_DENDRIFORM = "BiHomLeibnizDendriform"

    @property
    def is_dendriform(self) -> bool:
        return self in (VarietyTag.HOM_LEIBNIZ_DENDRIFORM, VarietyTag.BIHOM_LEIBNIZ_DENDRIFORM)

    @property
    def is_bihom(self) -> bool:
        return self in (VarietyTag.BIHOM_LEIBNIZ, VarietyTag.BIHOM_LEIBNIZ_DENDRIFORM)

    @property
    def product_names(self) -> Tuple[str, ...]:
        return DENDRIFORM_PRODUCTS if self.is_dendriform else LEIBNIZ_PRODUCTS

    @property
    def twist_names(self) -> Tuple[str, ...]:
        return BIHOM_TWISTS if self.is_bihom else HOM_TWISTS

    @property
    def action_names(self) -> Tuple[str, ...]:
        return DENDRIFORM_ACTIONS if self.is_dendriform else LEIBNIZ_ACTIONS

    @property
    def module_twist_names(self) -> Tuple[str, ...]:
        return BIHOM_MODULE_TWISTS if self.is_bihom else HOM_MODULE_TWISTS

    @property
    def leibniz_counterpart(self) -> "VarietyTag":
        """The bracket variety a dendriform structure splits."""
        if self == VarietyTag.HOM_LEIBNIZ_DENDRIFORM:
            return VarietyTag.HOM_LEIBNIZ
        if self == VarietyTag.BIHOM_LEIBNIZ_DENDRIFORM:
            return VarietyTag.BIHOM_LEIBNIZ
        return self

    @property
    def dendriform_counterpart(self) -> "VarietyTag":
        if self.is_dendriform:
            return self
        return VarietyTag.BIHOM_LEIBNIZ_DENDRIFORM if self.is_bihom else VarietyTag.HOM_LEIBNIZ_DENDRIFORM

    @classmethod
    def parse(cls, text: str) -> "VarietyTag":
        try:
            return cls(text)
        except ValueError as e:
            known = ", ".join(t.value for t in cls)
            raise PresentationError(f"unknown variety {text!r}; expected one of {known}", "variety") from e


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """
    An algebra by structure constants.

    ``products`` maps the variety's product names to tensors, ``twists`` maps
    ``al`` (and ``be``) to maps. ``form`` is a Gram matrix G[i][j] = B(e_i, e_j);
    ``cobracket`` is a dim²×dim map whose column j holds Δ(e_j) with row
    index i*dim + k for e_i⊗e_k.
    """

    dim: int
    field: FieldSpec
    variety: VarietyTag
    products: Mapping[str, Product]
    twists: Mapping[str, LinearMap]
    multiplicative: bool = False
    form: Optional[LinearMap] = None
    cobracket: Optional[LinearMap] = None
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise PresentationError(f"dimension must be a positive integer, got {self.dim!r}", "dim")
        products = dict(self.products)
        for pname in products:
            if pname not in self.variety.product_names:
                raise PresentationError(
                    f"product {pname!r} not allowed for {self.variety.value}", f"products.{pname}"
                )
        for pname in self.variety.product_names:
            products.setdefault(pname, Product.zero(self.field, self.dim))
        for pname, prod in products.items():
            if prod.dim != self.dim or prod.field != self.field:
                raise PresentationError(f"product has dimension {prod.dim}", f"products.{pname}")
        object.__setattr__(self, "products", {n: products[n] for n in self.variety.product_names})

        twists = dict(self.twists)
        if self.variety == VarietyTag.LEIBNIZ:
            twists.setdefault("al", LinearMap.identity(self.field, self.dim))
        for tname in twists:
            if tname not in self.variety.twist_names:
                raise PresentationError(f"twist {tname!r} not allowed for {self.variety.value}", f"twists.{tname}")
        for tname in self.variety.twist_names:
            if tname not in twists:
                raise PresentationError(f"missing twist {tname!r}", "twists")
            if twists[tname].shape != (self.dim, self.dim):
                raise PresentationError(
                    f"twist is {twists[tname].dim_out}×{twists[tname].dim_in}, expected {self.dim}×{self.dim}",
                    f"twists.{tname}",
                )
        object.__setattr__(self, "twists", {n: twists[n] for n in self.variety.twist_names})

        if self.variety == VarietyTag.LEIBNIZ and not self.twists["al"].is_identity:
            raise PresentationError("a Leibniz presentation must have al = identity", "twists.al")
        if self.variety.is_bihom and not self.twists["al"].commutes_with(self.twists["be"]):
            raise PresentationError("BiHom twists al and be do not commute", "twists")
        if self.form is not None and self.form.shape != (self.dim, self.dim):
            raise PresentationError(f"form must be {self.dim}×{self.dim}", "form")
        if self.cobracket is not None and self.cobracket.shape != (self.dim * self.dim, self.dim):
            raise PresentationError(f"cobracket must be {self.dim * self.dim}×{self.dim}", "cobracket")

    # ---- accessors ----

    @property
    def al(self) -> LinearMap:
        return self.twists["al"]

    @property
    def be(self) -> LinearMap:
        """Second twist; Hom-type presentations use al for both roles."""
        return self.twists.get("be", self.twists["al"])

    def product(self, pname: str) -> Product:
        return self.products[pname]

    @property
    def bracket(self) -> Product:
        """br, or prec + succ for dendriform presentations."""
        if self.variety.is_dendriform:
            return self.products["prec"] + self.products["succ"]
        return self.products["br"]

    def delta(self, v: Vector) -> Tensor2:
        if self.cobracket is None:
            raise PresentationError("presentation carries no cobracket", "cobracket")
        flat = self.cobracket.apply(v)
        n = self.dim
        return Tensor2(self.field, [flat.coords[i * n:(i + 1) * n] for i in range(n)])

    def replace(self, **changes) -> "AlgebraPresentation":
        return replace(self, **changes)

    def specialize(self, values: Mapping[str, object]) -> "AlgebraPresentation":
        """The presentation with rational values substituted for parameters."""
        return AlgebraPresentation(
            dim=self.dim,
            field=specialized_field(self.field, values),
            variety=self.variety,
            products={n: m.specialize(values) for n, m in self.products.items()},
            twists={n: m.specialize(values) for n, m in self.twists.items()},
            multiplicative=self.multiplicative,
            form=self.form.specialize(values) if self.form is not None else None,
            cobracket=self.cobracket.specialize(values) if self.cobracket is not None else None,
            name=self.name,
        )

    def basis(self, i: int) -> Vector:
        return Vector.basis(self.field, self.dim, i)

    def __eq__(self, other):
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.field == other.field
            and self.variety == other.variety
            and self.multiplicative == other.multiplicative
            and self.products == other.products
            and self.twists == other.twists
            and self.form == other.form
            and self.cobracket == other.cobracket
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ActionFamily:
    """
    Bimodule data: for each action name, one module_dim×module_dim matrix
    per algebra basis element. ``actions["l"][i]`` is l(e_{i+1}).
    """

    algebra_dim: int
    module_dim: int
    field: FieldSpec
    actions: Mapping[str, Tuple[LinearMap, ...]]
    module_twists: Mapping[str, LinearMap]
    multiplicative: bool = False
    name: str = ""

    def __post_init__(self):
        for label, value in (("algebra_dim", self.algebra_dim), ("module_dim", self.module_dim)):
            if not isinstance(value, int) or value < 1:
                raise PresentationError(f"{label} must be a positive integer, got {value!r}", label)
        names = set(self.actions)
        if names == set(LEIBNIZ_ACTIONS):
            order = LEIBNIZ_ACTIONS
        elif names == set(DENDRIFORM_ACTIONS):
            order = DENDRIFORM_ACTIONS
        else:
            raise PresentationError(
                f"action names {sorted(names)} are neither {list(LEIBNIZ_ACTIONS)} nor {list(DENDRIFORM_ACTIONS)}",
                "actions",
            )
        actions = {}
        for aname in order:
            mats = tuple(self.actions[aname])
            if len(mats) != self.algebra_dim:
                raise PresentationError(f"expected {self.algebra_dim} matrices, got {len(mats)}", f"actions.{aname}")
            for i, m in enumerate(mats):
                if m.shape != (self.module_dim, self.module_dim):
                    raise PresentationError(f"matrix must be {self.module_dim}×{self.module_dim}", f"actions.{aname}[{i + 1}]")
            actions[aname] = mats
        object.__setattr__(self, "actions", actions)

        twist_names = set(self.module_twists)
        if twist_names not in (set(HOM_MODULE_TWISTS), set(BIHOM_MODULE_TWISTS)):
            raise PresentationError(f"module twists must be beV or beV, beV2; got {sorted(twist_names)}", "module_twists")
        for tname, m in self.module_twists.items():
            if m.shape != (self.module_dim, self.module_dim):
                raise PresentationError(f"module twist must be {self.module_dim}×{self.module_dim}", f"module_twists.{tname}")
        ordered = BIHOM_MODULE_TWISTS if len(twist_names) == 2 else HOM_MODULE_TWISTS
        object.__setattr__(self, "module_twists", {n: self.module_twists[n] for n in ordered})
        if self.is_bihom and not self.module_twists["beV"].commutes_with(self.module_twists["beV2"]):
            raise PresentationError("module twists beV and beV2 do not commute", "module_twists")

    @property
    def is_dendriform(self) -> bool:
        return "lprec" in self.actions

    @property
    def is_bihom(self) -> bool:
        return "beV2" in self.module_twists

    @property
    def beV(self) -> LinearMap:
        return self.module_twists["beV"]

    @property
    def beV2(self) -> LinearMap:
        return self.module_twists.get("beV2", self.module_twists["beV"])

    def matrices(self, aname: str) -> Tuple[LinearMap, ...]:
        """Action matrices; l and r of a dendriform family are the split sums."""
        if aname in self.actions:
            return self.actions[aname]
        if self.is_dendriform and aname in LEIBNIZ_ACTIONS:
            prec, succ = self.actions[f"{aname}prec"], self.actions[f"{aname}succ"]
            return tuple(a + b for a, b in zip(prec, succ))
        raise PresentationError(f"action family has no action {aname!r}", "actions")

    def action_map(self, aname: str, x: Vector) -> LinearMap:
        """act(x) = Σ x_i act(e_i)."""
        mats = self.matrices(aname)
        out = LinearMap.zero(self.field, self.module_dim)
        for i, xi in x.nonzero():
            out = out + mats[i].scale(xi)
        return out

    def specialize(self, values: Mapping[str, object]) -> "ActionFamily":
        return ActionFamily(
            algebra_dim=self.algebra_dim,
            module_dim=self.module_dim,
            field=specialized_field(self.field, values),
            actions={n: tuple(m.specialize(values) for m in mats) for n, mats in self.actions.items()},
            module_twists={n: m.specialize(values) for n, m in self.module_twists.items()},
            multiplicative=self.multiplicative,
            name=self.name,
        )

    def replace(self, **changes) -> "ActionFamily":
        return replace(self, **changes)

    def __eq__(self, other):
        if not isinstance(other, ActionFamily):
            return NotImplemented
        return (
            self.algebra_dim == other.algebra_dim
            and self.module_dim == other.module_dim
            and self.field == other.field
            and self.multiplicative == other.multiplicative
            and self.actions == other.actions
            and self.module_twists == other.module_twists
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class OOperatorData:
    """
    A linear map T: V → A with the convention used to induce products on V.

    ``hom_paper``: u ≺ v = r(T(v))u, u ≻ v = l(T(u))v (``standard`` is
    accepted as an alias).
    ``swapped``:   u ≺ v = r(T(u))v, u ≻ v = l(T(v))u.
    """

    T: LinearMap
    convention: str = "hom_paper"
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "convention", CONVENTION_ALIASES.get(self.convention, self.convention))
        if self.convention not in CONVENTIONS:
            raise PresentationError(f"unknown convention {self.convention!r}; expected one of {CONVENTIONS}", "convention")

    @property
    def algebra_dim(self) -> int:
        return self.T.dim_out

    @property
    def module_dim(self) -> int:
        return self.T.dim_in

    def specialize(self, values: Mapping[str, object]) -> "OOperatorData":
        return replace(self, T=self.T.specialize(values))


@dataclass
class ValidationReport:
    ok: bool
    problems: List[str] = field(default_factory=list)

    def require(self) -> None:
        if not self.ok:
            raise PresentationError("; ".join(self.problems), "actions")


def validate_pair(p: AlgebraPresentation, a: ActionFamily) -> ValidationReport:
    """Check that an action family fits an algebra: names, dimensions, field and twists."""
    problems: List[str] = []
    if a.field != p.field:
        problems.append(f"field {a.field} does not match algebra field {p.field}")
    if a.algebra_dim != p.dim:
        problems.append(f"action family is indexed by {a.algebra_dim} elements, algebra has dimension {p.dim}")
    expected = set(p.variety.action_names)
    if set(a.actions) != expected:
        problems.append(f"{p.variety.value} needs actions {sorted(expected)}, got {sorted(a.actions)}")
    if a.is_bihom != p.variety.is_bihom:
        problems.append(f"{p.variety.value} needs module twists {list(p.variety.module_twist_names)}")
    return ValidationReport(ok=not problems, problems=problems)


def zero_actions(p: AlgebraPresentation, module_dim: int, module_twists: Optional[Dict[str, LinearMap]] = None) -> ActionFamily:
    """The trivial family: every action is zero; twists default to identity."""
    zero = LinearMap.zero(p.field, module_dim)
    if module_twists is None:
        ident = LinearMap.identity(p.field, module_dim)
        module_twists = {n: ident for n in p.variety.module_twist_names}
    return ActionFamily(
        algebra_dim=p.dim,
        module_dim=module_dim,
        field=p.field,
        actions={n: (zero,) * p.dim for n in p.variety.action_names},
        module_twists=module_twists,
        multiplicative=True,
        name="zero",
    )
