"""
Straight-line reference evaluator for the corpus.

Reads entry documents into nested lists of scalars and evaluates every
identity through a hand-written function of basis vectors. Nothing here
touches the identity engine, the linear-algebra layer or the constructors;
only the scalar field is shared. Golden reports are regenerated from this
module and the engine has to match them record for record.
"""

import itertools
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from homleib.algebra.scalar import FieldSpec, Scalar, specialize, specialized_field
from homleib.core.exceptions import CatalogError, PresentationError
from homleib.output.report import ReportRecord

Vec = List[Scalar]
Mat = List[List[Scalar]]  # rows; column j is the image of e_j
Table = List[List[Vec]]  # table[i][j] = e_i * e_j

PASS, FAIL = "pass", "fail"

DENDRIFORM = ("HomLeibnizDendriform", "BiHomLeibnizDendriform")
BIHOM = ("BiHomLeibniz", "BiHomLeibnizDendriform")


# ==============================================================================
# Nested-list arithmetic
# ==============================================================================


def zeros(field: FieldSpec, n: int) -> Vec:
    return [field.zero for _ in range(n)]


def unit(field: FieldSpec, n: int, i: int) -> Vec:
    v = zeros(field, n)
    v[i] = field.one
    return v


def vadd(u: Vec, v: Vec) -> Vec:
    return [a + b for a, b in zip(u, v)]


def vsub(first: Vec, *rest: Vec) -> Vec:
    out = list(first)
    for v in rest:
        out = [a - b for a, b in zip(out, v)]
    return out


def vsum(first: Vec, *rest: Vec) -> Vec:
    out = list(first)
    for v in rest:
        out = vadd(out, v)
    return out


def apply(m: Mat, v: Vec) -> Vec:
    out = []
    for row in m:
        acc = v[0].field.zero if v else None
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out


def multiply(table: Table, u: Vec, v: Vec, field: FieldSpec) -> Vec:
    n = len(table)
    out = zeros(field, n)
    for i in range(n):
        if u[i].is_zero:
            continue
        for j in range(n):
            if v[j].is_zero:
                continue
            c = u[i] * v[j]
            out = [o + c * t for o, t in zip(out, table[i][j])]
    return out


def act(mats: List[Mat], x: Vec, v: Vec, field: FieldSpec) -> Vec:
    out = zeros(field, len(v) if not mats else len(mats[0]))
    for i, xi in enumerate(x):
        if not xi.is_zero:
            out = vadd(out, [xi * c for c in apply(mats[i], v)])
    return out


def identity_rows(field: FieldSpec, n: int) -> Mat:
    return [unit(field, n, i) for i in range(n)]


def compose(f: Mat, g: Mat) -> Mat:
    """Rows of f∘g."""
    return [[sum((f[i][k] * g[k][j] for k in range(len(g))), f[i][0].field.zero) for j in range(len(g[0]))]
            for i in range(len(f))]


def same(u, v) -> bool:
    if isinstance(u, list):
        return len(u) == len(v) and all(same(a, b) for a, b in zip(u, v))
    return (u - v).is_zero


# ==============================================================================
# Documents
# ==============================================================================


class Algebra:
    """Products and twists of one presentation, read from its document."""

    def __init__(self, data: Mapping):
        self.field = FieldSpec.parse(data["field"])
        self.dim = int(data["dim"])
        self.variety = data["variety"]
        self.multiplicative = bool(data.get("multiplicative", False))
        names = ("prec", "succ") if self.variety in DENDRIFORM else ("br",)
        self.products: Dict[str, Table] = {name: self._empty_table() for name in names}
        for name, entries in (data.get("products") or {}).items():
            for i, j, k, c in entries:
                cell = self.products[name][i - 1][j - 1]
                cell[k - 1] = cell[k - 1] + self.field.scalar(str(c))
        if self.variety in DENDRIFORM:
            prec, succ = self.products["prec"], self.products["succ"]
            self.products["br"] = [[vadd(prec[i][j], succ[i][j]) for j in range(self.dim)] for i in range(self.dim)]
        twists = data.get("twists") or {}
        self.twists: Dict[str, Mat] = {name: read_rows(rows, self.field) for name, rows in twists.items()}
        self.twists.setdefault("al", identity_rows(self.field, self.dim))
        self.twists.setdefault("be", self.twists["al"])

    def _empty_table(self) -> Table:
        return [[zeros(self.field, self.dim) for _ in range(self.dim)] for _ in range(self.dim)]

    def specialized(self, values: Mapping[str, object]) -> "Algebra":
        out = object.__new__(Algebra)
        out.field = specialized_field(self.field, values)
        out.dim = self.dim
        out.variety = self.variety
        out.multiplicative = self.multiplicative
        out.products = {n: [[[specialize(c, values) for c in cell] for cell in row] for row in t]
                        for n, t in self.products.items()}
        out.twists = {n: specialize_rows(m, values) for n, m in self.twists.items()}
        return out


class Module:
    """Action matrices per algebra basis element, and module twists."""

    def __init__(self, data: Mapping):
        self.field = FieldSpec.parse(data["field"])
        self.algebra_dim = int(data["algebra_dim"])
        self.module_dim = int(data["module_dim"])
        self.multiplicative = bool(data.get("multiplicative", False))
        m = self.module_dim
        self.actions: Dict[str, List[Mat]] = {}
        for name, entries in data["actions"].items():
            mats = [[zeros(self.field, m) for _ in range(m)] for _ in range(self.algebra_dim)]
            for i, j, k, c in entries:
                mats[i - 1][k - 1][j - 1] = mats[i - 1][k - 1][j - 1] + self.field.scalar(str(c))
            self.actions[name] = mats
        self.twists = {name: read_rows(rows, self.field) for name, rows in data["module_twists"].items()}
        self.twists.setdefault("beV2", self.twists["beV"])

    def specialized(self, values: Mapping[str, object]) -> "Module":
        out = object.__new__(Module)
        out.field = specialized_field(self.field, values)
        out.algebra_dim = self.algebra_dim
        out.module_dim = self.module_dim
        out.multiplicative = self.multiplicative
        out.actions = {n: [specialize_rows(m, values) for m in mats] for n, mats in self.actions.items()}
        out.twists = {n: specialize_rows(m, values) for n, m in self.twists.items()}
        return out


def read_rows(rows: Sequence[Sequence], field: FieldSpec) -> Mat:
    return [[field.scalar(str(c)) for c in row] for row in rows]


def specialize_rows(m: Mat, values: Mapping[str, object]) -> Mat:
    return [[specialize(c, values) for c in row] for row in m]


# ==============================================================================
# Evaluation environment
# ==============================================================================


class Env:
    """
    The symbols an identity may use. ``A`` is the algebra; ``V`` a module
    over it (l, r, beV, beV2); ``B`` a second algebra acted on by A through
    ``V`` and acting back on A through ``back`` (l2, r2); ``K`` an operator.
    """

    def __init__(
        self,
        A: Algebra,
        V: Optional[Module] = None,
        B: Optional[Algebra] = None,
        back: Optional[Module] = None,
        K: Optional[Mat] = None,
    ):
        self.A, self.V, self.B, self.back, self.K_rows = A, V, B, back, K
        self.field = A.field

    def dim(self, sort: str) -> int:
        if sort == "A":
            return self.A.dim
        if self.B is not None:
            return self.B.dim
        return self.V.module_dim

    # algebra A
    def br(self, u, v):
        return multiply(self.A.products["br"], u, v, self.field)

    def prec(self, u, v):
        return multiply(self.A.products["prec"], u, v, self.field)

    def succ(self, u, v):
        return multiply(self.A.products["succ"], u, v, self.field)

    def al(self, u):
        return apply(self.A.twists["al"], u)

    def be(self, u):
        return apply(self.A.twists["be"], u)

    def K(self, u):
        return apply(self.K_rows, u)

    # A acting on V (or on B)
    def l(self, x, v):
        return act(self.V.actions["l"], x, v, self.field)

    def r(self, x, v):
        return act(self.V.actions["r"], x, v, self.field)

    def beV(self, v):
        return apply(self.V.twists["beV"], v)

    def beV2(self, v):
        return apply(self.V.twists["beV2"], v)

    # algebra B and its action on A
    def br2(self, a, b):
        return multiply(self.B.products["br"], a, b, self.field)

    def al2(self, a):
        return apply(self.B.twists["al"], a)

    def be2(self, a):
        return apply(self.B.twists["be"], a)

    def l2(self, a, x):
        return act(self.back.actions["l"], a, x, self.field)

    def r2(self, a, x):
        return act(self.back.actions["r"], a, x, self.field)


Formula = Callable[..., Vec]

# name -> (sorts of the variables, variable names, residual)
REFERENCE: Dict[str, Tuple[str, Tuple[str, ...], Formula]] = {}


def reference(name: str, sorts: str, variables: str):
    def register(fn: Formula) -> Formula:
        REFERENCE[name] = (sorts, tuple(variables), fn)
        return fn

    return register


# ---- Hom-Leibniz ----


@reference("hom_leibniz", "AAA", "xyz")
def _hom_leibniz(E, x, y, z):
    return vsub(E.br(E.al(x), E.br(y, z)), E.br(E.br(x, y), E.al(z)), E.br(E.al(y), E.br(x, z)))


@reference("skew_symmetry", "AA", "xy")
def _skew(E, x, y):
    return vadd(E.br(x, y), E.br(y, x))


@reference("hom_jacobi", "AAA", "xyz")
def _jacobi(E, x, y, z):
    return vsum(E.br(E.al(x), E.br(y, z)), E.br(E.al(y), E.br(z, x)), E.br(E.al(z), E.br(x, y)))


@reference("involutive_al", "A", "x")
def _involutive(E, x):
    return vsub(E.al(E.al(x)), x)


def _multiplicativity(twist: str, op: str):
    def fn(E, x, y):
        t, m = getattr(E, twist), getattr(E, op)
        return vsub(t(m(x, y)), m(t(x), t(y)))

    return fn


for _twist in ("al", "be"):
    REFERENCE[f"multiplicativity_{_twist}"] = ("AA", ("x", "y"), _multiplicativity(_twist, "br"))
    for _op in ("prec", "succ"):
        REFERENCE[f"multiplicativity_{_twist}_{_op}"] = ("AA", ("x", "y"), _multiplicativity(_twist, _op))


# ---- Hom-Leibniz bimodules ----


@reference("homleib_bimod_1", "AAV", "xyv")
def _hb1(E, x, y, v):
    return vsub(E.l(E.al(x), E.l(y, v)), E.l(E.br(x, y), E.beV(v)), E.l(E.al(y), E.l(x, v)))


@reference("homleib_bimod_2", "AAV", "xyv")
def _hb2(E, x, y, v):
    return vsub(E.l(E.al(x), E.r(y, v)), E.r(E.al(y), E.l(x, v)), E.r(E.br(x, y), E.beV(v)))


@reference("homleib_bimod_3", "AAV", "xyv")
def _hb3(E, x, y, v):
    return vsub(E.r(E.br(x, y), E.beV(v)), E.r(E.al(y), E.r(x, v)), E.l(E.al(x), E.r(y, v)))


@reference("homleib_bimod_4", "AV", "xv")
def _hb4(E, x, v):
    return vsub(E.beV(E.l(x, v)), E.l(E.al(x), E.beV(v)))


@reference("homleib_bimod_5", "AV", "xv")
def _hb5(E, x, v):
    return vsub(E.beV(E.r(x, v)), E.r(E.al(x), E.beV(v)))


@reference("homleib_bimod_consequence", "AAV", "xyv")
def _hb_consequence(E, x, y, v):
    return vadd(E.r(E.al(y), E.l(x, v)), E.r(E.al(y), E.r(x, v)))


# ---- Hom-Leibniz dendriform ----


@reference("dendr_1", "AAA", "xyz")
def _d1(E, x, y, z):
    return vsum(
        E.succ(E.br(x, y), E.al(z)),
        [-c for c in E.succ(E.al(x), E.succ(y, z))],
        E.succ(E.al(y), E.succ(x, z)),
    )


@reference("dendr_2", "AAA", "xyz")
def _d2(E, x, y, z):
    return vsub(E.succ(E.al(x), E.prec(y, z)), E.prec(E.succ(x, y), E.al(z)), E.prec(E.al(y), E.br(x, z)))


@reference("dendr_3", "AAA", "xyz")
def _d3(E, x, y, z):
    return vsub(E.prec(E.al(x), E.br(y, z)), E.prec(E.prec(x, y), E.al(z)), E.succ(E.al(y), E.prec(x, z)))


# ---- BiHom ----


@reference("bihom_twist_commute", "A", "x")
def _commute(E, x):
    return vsub(E.al(E.be(x)), E.be(E.al(x)))


@reference("bihom_leibniz", "AAA", "xyz")
def _bihom_leibniz(E, x, y, z):
    return vsub(
        E.br(E.al(E.be(x)), E.br(y, z)),
        E.br(E.br(E.be(x), y), E.be(z)),
        E.br(E.be(y), E.br(E.al(x), z)),
    )


@reference("bihom_dendr_1", "AAA", "xyz")
def _bd1(E, x, y, z):
    return vsum(
        E.succ(E.br(E.be(x), y), E.be(z)),
        [-c for c in E.succ(E.al(E.be(x)), E.succ(y, z))],
        E.succ(E.be(y), E.succ(E.al(x), z)),
    )


@reference("bihom_dendr_2", "AAA", "xyz")
def _bd2(E, x, y, z):
    return vsub(
        E.succ(E.al(E.be(x)), E.prec(y, z)),
        E.prec(E.succ(E.be(x), y), E.be(z)),
        E.prec(E.be(y), E.br(E.al(x), z)),
    )


@reference("bihom_dendr_3", "AAA", "xyz")
def _bd3(E, x, y, z):
    return vsub(
        E.prec(E.al(E.be(x)), E.br(y, z)),
        E.prec(E.prec(E.be(x), y), E.be(z)),
        E.succ(E.be(y), E.prec(E.al(x), z)),
    )


@reference("bihom_bimod_1", "AAV", "xyv")
def _bb1(E, x, y, v):
    return vsub(
        E.l(E.al(E.be(x)), E.l(y, v)),
        E.l(E.br(E.be(x), y), E.beV2(v)),
        E.l(E.be(y), E.l(E.al(x), v)),
    )


@reference("bihom_bimod_2", "AAV", "xyv")
def _bb2(E, x, y, v):
    return vsub(
        E.l(E.al(E.be(x)), E.r(y, v)),
        E.r(E.be(y), E.l(E.be(x), v)),
        E.r(E.br(E.al(x), y), E.beV2(v)),
    )


@reference("bihom_bimod_3", "AAV", "xyv")
def _bb3(E, x, y, v):
    return vsub(
        E.r(E.br(x, y), E.beV(E.beV2(v))),
        E.r(E.be(y), E.r(x, E.beV2(v))),
        E.l(E.be(x), E.r(y, E.beV(v))),
    )


def _intertwining(module_twist: str, twist: str, action: str):
    def fn(E, x, v):
        t, m, a = getattr(E, twist), getattr(E, module_twist), getattr(E, action)
        return vsub(m(a(x, v)), a(t(x), m(v)))

    return fn


for _index, (_mt, _t, _a) in enumerate(
    (("beV", "al", "l"), ("beV", "al", "r"), ("beV2", "be", "l"), ("beV2", "be", "r")), start=4
):
    REFERENCE[f"bihom_bimod_{_index}"] = ("AV", ("x", "v"), _intertwining(_mt, _t, _a))


@reference("bihom_matched_1", "AVV", "xab")
def _bm1(E, x, a, b):
    return vsub(
        E.l(E.al(E.be(x)), E.br2(a, b)),
        E.l(E.r2(a, E.be(x)), E.be2(b)),
        E.br2(E.l(E.be(x), a), E.be2(b)),
        E.r(E.r2(b, E.al(x)), E.be2(a)),
        E.br2(E.be2(a), E.l(E.al(x), b)),
    )


@reference("bihom_matched_2", "AVV", "xab")
def _bm2(E, x, a, b):
    return vsub(
        vadd(E.r(E.r2(b, x), E.al2(E.be2(a))), E.br2(E.al2(E.be2(a)), E.l(x, b))),
        E.l(E.l2(E.be2(a), x), E.be2(b)),
        E.br2(E.r(x, E.be2(a)), E.be2(b)),
        E.l(E.be(x), E.br2(E.al2(a), b)),
    )


@reference("bihom_matched_3", "AVV", "xab")
def _bm3(E, x, a, b):
    return vsub(
        vadd(E.r(E.l2(b, x), E.al2(E.be2(a))), E.br2(E.al2(E.be2(a)), E.r(x, b))),
        E.r(E.be(x), E.br2(E.be2(a), b)),
        E.r(E.l2(E.al2(a), x), E.be2(b)),
        E.br2(E.be2(b), E.r(x, E.al2(a))),
    )


@reference("bihom_matched_4", "AAV", "xya")
def _bm4(E, x, y, a):
    return vsub(
        E.l2(E.al2(E.be2(a)), E.br(x, y)),
        E.l2(E.r(x, E.be2(a)), E.be(y)),
        E.br(E.l2(E.be2(a), x), E.be(y)),
        E.r2(E.r(y, E.al2(a)), E.be(x)),
        E.br(E.be(x), E.l2(E.al2(a), y)),
    )


@reference("bihom_matched_5", "AAV", "xya")
def _bm5(E, x, y, a):
    return vsub(
        vadd(E.r2(E.r(y, a), E.al(E.be(x))), E.br(E.al(E.be(x)), E.l2(a, y))),
        E.l2(E.l(E.be(x), a), E.be(y)),
        E.br(E.r2(a, E.be(x)), E.be(y)),
        E.l2(E.be2(a), E.br(E.al(x), y)),
    )


@reference("bihom_matched_6", "AAV", "xya")
def _bm6(E, x, y, a):
    return vsub(
        vadd(E.r2(E.l(y, a), E.al(E.be(x))), E.br(E.al(E.be(x)), E.r2(a, y))),
        E.r2(E.be2(a), E.br(E.be(x), y)),
        E.r2(E.l(E.al(x), a), E.be(y)),
        E.br(E.be(y), E.r2(a, E.al(x))),
    )


# ---- Rota-Baxter operators ----


def _rota_baxter(E, x, y):
    return vsub(E.br(E.K(x), E.K(y)), E.K(E.br(E.K(x), y)), E.K(E.br(x, E.K(y))))


def _commutes_with(twist: str):
    def fn(E, x):
        t = getattr(E, twist)
        return vsub(t(E.K(x)), E.K(t(x)))

    return fn


REFERENCE["rota_baxter_hom"] = ("AA", ("x", "y"), _rota_baxter)
REFERENCE["rota_baxter_bihom"] = ("AA", ("x", "y"), _rota_baxter)
REFERENCE["rota_baxter_hom_twist"] = ("A", ("x",), _commutes_with("al"))
REFERENCE["rota_baxter_bihom_twist_1"] = ("A", ("x",), _commutes_with("al"))
REFERENCE["rota_baxter_bihom_twist_2"] = ("A", ("x",), _commutes_with("be"))


# ==============================================================================
# Verdicts
# ==============================================================================


def evaluate(name: str, env: Env) -> ReportRecord:
    """First failing basis tuple in lexicographic order, or a pass."""
    if name not in REFERENCE:
        raise CatalogError(f"no reference formula for {name}")
    sorts, variables, fn = REFERENCE[name]
    dims = [env.dim(s) for s in sorts]
    total = 1
    for d in dims:
        total *= d
    for count, indices in enumerate(itertools.product(*(range(d) for d in dims)), start=1):
        vectors = [unit(env.field, d, i) for d, i in zip(dims, indices)]
        residual = fn(env, *vectors)
        if not all(c.is_zero for c in residual):
            return ReportRecord(
                identity=name,
                status=FAIL,
                assignments=count,
                assignment=[i + 1 for i in indices],
                variables=variables,
                residual=[str(c) for c in residual],
            )
    return ReportRecord(identity=name, status=PASS, assignments=total)


def fact(name: str, ok: bool) -> ReportRecord:
    return ReportRecord(identity=name, status=PASS if ok else FAIL)


def variety_names(A: Algebra) -> List[str]:
    names = {
        "HomLeibniz": ["hom_leibniz"],
        "Leibniz": ["hom_leibniz"],
        "HomLie": ["skew_symmetry", "hom_jacobi"],
        "HomLeibnizDendriform": ["dendr_1", "dendr_2", "dendr_3"],
        "BiHomLeibniz": ["bihom_twist_commute", "bihom_leibniz"],
        "BiHomLeibnizDendriform": ["bihom_twist_commute", "bihom_dendr_1", "bihom_dendr_2", "bihom_dendr_3"],
    }[A.variety]
    if A.multiplicative:
        twists = ("al", "be") if A.variety in BIHOM else ("al",)
        if A.variety in DENDRIFORM:
            names += [f"multiplicativity_{t}_{op}" for t in twists for op in ("prec", "succ")]
        else:
            names += [f"multiplicativity_{t}" for t in twists]
    return names


def variety(A: Algebra) -> List[ReportRecord]:
    env = Env(A)
    return [evaluate(name, env) for name in variety_names(A)]


def bimodule(A: Algebra, V: Module) -> List[ReportRecord]:
    if A.variety in DENDRIFORM:
        raise CatalogError("the reference evaluator covers Leibniz-type bimodules only")
    env = Env(A, V)
    if A.variety in BIHOM:
        indices = [1, 2, 3] + ([4, 5, 6, 7] if V.multiplicative else [])
        records = [evaluate(f"bihom_bimod_{i}", env) for i in indices]
        return records
    indices = [1, 2, 3] + ([4, 5] if V.multiplicative else [])
    records = [evaluate(f"homleib_bimod_{i}", env) for i in indices]
    if all(r.passed for r in records):
        records.append(evaluate("homleib_bimod_consequence", env))
    return records


def _with_context(records: List[ReportRecord], context: str) -> List[ReportRecord]:
    for r in records:
        r.context = context
    return records


def matched(A: Algebra, B: Algebra, on_B: Module, on_A: Module) -> List[ReportRecord]:
    """Both bimodules, then the coupling conditions up to the first failure."""
    if A.variety != "BiHomLeibniz" or B.variety != "BiHomLeibniz":
        raise CatalogError("the reference evaluator covers BiHom-Leibniz matched pairs only")
    records = _with_context(bimodule(A, on_B), "A on B")
    records += _with_context(bimodule(B, on_A), "B on A")
    if not all(r.passed for r in records):
        return records
    agree = (
        same(on_B.twists["beV"], B.twists["al"])
        and same(on_B.twists["beV2"], B.twists["be"])
        and same(on_A.twists["beV"], A.twists["al"])
        and same(on_A.twists["beV2"], A.twists["be"])
    )
    if not agree:
        return records
    env = Env(A, on_B, B, on_A)
    for i in range(1, 7):
        record = evaluate(f"bihom_matched_{i}", env)
        record.context = "coupling"
        records.append(record)
        if not record.passed:
            break
    return records


def rota_baxter(A: Algebra, K: Mat) -> List[ReportRecord]:
    env = Env(A, K=K)
    if A.variety in BIHOM:
        names = ["rota_baxter_bihom", "rota_baxter_bihom_twist_1", "rota_baxter_bihom_twist_2"]
    else:
        names = ["rota_baxter_hom", "rota_baxter_hom_twist"]
    return [evaluate(name, env) for name in names]


# ==============================================================================
# Constructions, recomputed from scratch
# ==============================================================================


def twisted(A: Algebra, al: Mat, be: Mat) -> Algebra:
    """Yau twist: BiHom products x ∘ y ↦ al(x) ∘ be(y), Hom products ↦ al(x ∘ y)."""
    out = object.__new__(Algebra)
    out.field, out.dim, out.variety, out.multiplicative = A.field, A.dim, A.variety, A.multiplicative
    n = A.dim
    basis = [unit(A.field, n, i) for i in range(n)]
    out.products = {}
    for name, table in A.products.items():
        if A.variety in BIHOM:
            cols_al = [[al[k][i] for k in range(n)] for i in range(n)]
            cols_be = [[be[k][j] for k in range(n)] for j in range(n)]
            out.products[name] = [[multiply(table, cols_al[i], cols_be[j], A.field) for j in range(n)] for i in range(n)]
        else:
            out.products[name] = [[apply(al, multiply(table, basis[i], basis[j], A.field)) for j in range(n)]
                                  for i in range(n)]
    out.twists = {"al": compose(A.twists["al"], al)}
    out.twists["be"] = compose(A.twists["be"], be) if A.variety in BIHOM else out.twists["al"]
    return out


def power(m: Mat, k: int) -> Mat:
    out = identity_rows(m[0][0].field, len(m))
    for _ in range(k):
        out = compose(out, m)
    return out


def derived(A: Algebra, kind: int, n: int) -> Algebra:
    """Twist by αᵏ and βᵏ with k = n (type 1) or 2ⁿ − 1 (type 2)."""
    k = n if kind == 1 else 2**n - 1
    return twisted(A, power(A.twists["al"], k), power(A.twists["be"], k))


def same_algebra(X: Algebra, Y: Algebra) -> bool:
    names = ("prec", "succ") if X.variety in DENDRIFORM else ("br",)
    twists = ("al", "be") if X.variety in BIHOM else ("al",)
    return (
        X.variety == Y.variety
        and X.dim == Y.dim
        and X.multiplicative == Y.multiplicative
        and all(same(X.products[n], Y.products[n]) for n in names)
        and all(same(X.twists[t], Y.twists[t]) for t in twists)
    )


def subadjacent(A: Algebra) -> Algebra:
    out = object.__new__(Algebra)
    out.field, out.dim, out.multiplicative = A.field, A.dim, A.multiplicative
    out.variety = "BiHomLeibniz" if A.variety in BIHOM else "HomLeibniz"
    out.products = {"br": A.products["br"]}
    out.twists = dict(A.twists)
    return out


def induced(A: Algebra, K: Mat, convention: str) -> Algebra:
    """The dendriform products a Rota-Baxter operator induces through the regular actions."""
    n = A.dim
    basis = [unit(A.field, n, i) for i in range(n)]
    images = [apply(K, e) for e in basis]
    prec, succ = [], []
    for i in range(n):
        prec_row, succ_row = [], []
        for j in range(n):
            if convention == "hom_paper":
                # e_i ≺ e_j = [e_i, K e_j], e_i ≻ e_j = [K e_i, e_j]
                prec_row.append(multiply(A.products["br"], basis[i], images[j], A.field))
                succ_row.append(multiply(A.products["br"], images[i], basis[j], A.field))
            else:
                # e_i ≺ e_j = [e_j, K e_i], e_i ≻ e_j = [K e_j, e_i]
                prec_row.append(multiply(A.products["br"], basis[j], images[i], A.field))
                succ_row.append(multiply(A.products["br"], images[j], basis[i], A.field))
        prec.append(prec_row)
        succ.append(succ_row)
    out = object.__new__(Algebra)
    out.field, out.dim, out.multiplicative = A.field, n, A.multiplicative
    out.variety = "BiHomLeibnizDendriform" if A.variety in BIHOM else "HomLeibnizDendriform"
    out.products = {
        "prec": prec,
        "succ": succ,
        "br": [[vadd(prec[i][j], succ[i][j]) for j in range(n)] for i in range(n)],
    }
    out.twists = dict(A.twists)
    return out


def bowtie(A: Algebra, B: Algebra, on_B: Module, on_A: Module) -> Algebra:
    """[x + a, y + b] = [x, y] + l2(a)y + r2(b)x + {a, b} + l(x)b + r(y)a on A ⊕ B."""
    n, m = A.dim, B.dim
    field = A.field
    table = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            u, v = unit(field, n + m, i), unit(field, n + m, j)
            x, a = u[:n], u[n:]
            y, b = v[:n], v[n:]
            top = vsum(
                multiply(A.products["br"], x, y, field),
                act(on_A.actions["l"], a, y, field),
                act(on_A.actions["r"], b, x, field),
            )
            bottom = vsum(
                multiply(B.products["br"], a, b, field),
                act(on_B.actions["l"], x, b, field),
                act(on_B.actions["r"], y, a, field),
            )
            row.append(top + bottom)
        table.append(row)
    out = object.__new__(Algebra)
    out.field, out.dim = field, n + m
    # Leibniz-type actions of a Hom-Lie algebra need not give a skew sum
    out.variety = "HomLeibniz" if A.variety == "HomLie" else A.variety
    out.multiplicative = all(s.multiplicative for s in (A, B, on_B, on_A))
    out.products = {"br": table}
    out.twists = {name: block_diagonal(A.twists[name], B.twists[name], field) for name in ("al", "be")}
    return out


def block_diagonal(f: Mat, g: Mat, field: FieldSpec) -> Mat:
    n, m = len(f), len(g)
    top = [list(row) + zeros(field, m) for row in f]
    bottom = [zeros(field, n) + list(row) for row in g]
    return top + bottom


def omni(n: int, beta: Mat) -> Algebra:
    """
    gl(V) ⊕ V with (A+u) ≺ (B+v) = AB + Av and (A+u) ≻ (B+v) = −BA, both
    composed with A+u ↦ βAβ⁻¹ + βu, which is also the twist.
    """
    field = beta[0][0].field
    inv = invert(beta)
    dim = n * n + n

    def as_pair(vec: Vec):
        return [[vec[i * n + j] for j in range(n)] for i in range(n)], vec[n * n:]

    def as_vec(mat, u) -> Vec:
        return [mat[i][j] for i in range(n) for j in range(n)] + list(u)

    def delta(vec: Vec) -> Vec:
        mat, u = as_pair(vec)
        return as_vec(compose(compose(beta, mat), inv), apply(beta, u))

    basis = [unit(field, dim, i) for i in range(dim)]
    prec, succ = [], []
    for i in range(dim):
        prec_row, succ_row = [], []
        for j in range(dim):
            (ma, u), (mb, v) = as_pair(basis[i]), as_pair(basis[j])
            prec_row.append(delta(as_vec(compose(ma, mb), apply(ma, v))))
            succ_row.append(delta(as_vec([[-c for c in row] for row in compose(mb, ma)], zeros(field, n))))
        prec.append(prec_row)
        succ.append(succ_row)

    out = object.__new__(Algebra)
    out.field, out.dim, out.variety, out.multiplicative = field, dim, "HomLeibnizDendriform", True
    out.products = {
        "prec": prec,
        "succ": succ,
        "br": [[vadd(prec[i][j], succ[i][j]) for j in range(dim)] for i in range(dim)],
    }
    delta_rows = [[delta(basis[j])[i] for j in range(dim)] for i in range(dim)]
    out.twists = {"al": delta_rows, "be": delta_rows}
    return out


def invert(m: Mat) -> Mat:
    """Gauss-Jordan inverse over the field of the entries."""
    n = len(m)
    field = m[0][0].field
    work = [list(row) + unit(field, n, i) for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r][col].is_zero), None)
        if pivot is None:
            raise PresentationError("matrix is singular", "beta")
        work[col], work[pivot] = work[pivot], work[col]
        lead = work[col][col]
        work[col] = [c / lead for c in work[col]]
        for r in range(n):
            if r != col and not work[r][col].is_zero:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]
