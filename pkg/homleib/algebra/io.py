"""
JSON documents for presentations, action families and O-operators.

Indices in documents are 1-based; coefficients are literal strings in the
document's field. Sparse tensors are lists of [i, j, k, coeff]; maps are
dense row-major lists of rows.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

from homleib.algebra.linalg import LinearMap, Product
from homleib.algebra.literals import scalar_parse
from homleib.algebra.model import ActionFamily, AlgebraPresentation, OOperatorData, VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.core.data_utils import dump_json
from homleib.core.exceptions import HomLeibError, InputError, PresentationError
from homleib.core.logging import log_debug, log_file_operation

PathLike = Union[str, Path]


# ==============================================================================
# Parsing helpers
# ==============================================================================


def _parse_document(text: str, source: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PresentationError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", source) from e
    if not isinstance(data, dict):
        raise PresentationError("document must be a JSON object", source)
    return data


def _require(data: Dict[str, Any], key: str, kind: type, path: str = ""):
    if key not in data:
        raise PresentationError(f"missing key {key!r}", path or key)
    value = data[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise PresentationError(f"expected an integer, got {value!r}", path or key)
    if kind is not int and not isinstance(value, kind):
        raise PresentationError(f"expected {kind.__name__}, got {type(value).__name__}", path or key)
    return value


def _optional_mapping(data: Dict[str, Any], key: str) -> Dict[str, Any]:
    value = data.get(key, {})
    if not isinstance(value, dict):
        raise PresentationError("expected an object mapping names to entries", key)
    return value


def _coefficient(value: Any, field: FieldSpec, path: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise PresentationError(f"coefficient must be a string or integer, got {value!r}", path)
    try:
        return scalar_parse(str(value), field)
    except InputError as e:
        raise PresentationError(str(e), path) from e


def _field(data: Dict[str, Any]) -> FieldSpec:
    try:
        return FieldSpec.parse(_require(data, "field", str))
    except PresentationError:
        raise
    except HomLeibError as e:
        raise PresentationError(str(e), "field") from e


def _dense(rows: Any, field: FieldSpec, dim_out: int, dim_in: int, path: str) -> LinearMap:
    if not isinstance(rows, list) or len(rows) != dim_out:
        raise PresentationError(f"expected {dim_out} rows", path)
    parsed = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim_in:
            raise PresentationError(f"expected {dim_in} entries", f"{path}[{r + 1}]")
        parsed.append([_coefficient(x, field, f"{path}[{r + 1}][{c + 1}]") for c, x in enumerate(row)])
    return LinearMap(field, parsed)


def map_from_rows(rows: Any, field: FieldSpec, path: str = "map") -> LinearMap:
    """A map written inline as dense rows, rows[i][j] the coefficient of e_i in f(e_j)."""
    if not isinstance(rows, list) or not rows or not isinstance(rows[0], list):
        raise PresentationError("expected a non-empty list of rows", path)
    return _dense(rows, field, len(rows), len(rows[0]), path)


def _sparse_entries(entries: Any, field: FieldSpec, bounds: List[int], path: str):
    """Yield 0-based (i, j, k, coeff) from 1-based [i, j, k, coeff] quadruples."""
    if not isinstance(entries, list):
        raise PresentationError("expected a list of [i, j, k, coeff] entries", path)
    out = []
    for n, entry in enumerate(entries):
        where = f"{path}[{n + 1}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise PresentationError("entry must be [i, j, k, coeff]", where)
        idx = entry[:3]
        for x, bound in zip(idx, bounds):
            if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= bound:
                raise PresentationError(f"index {x!r} outside 1-{bound}", where)
        out.append((idx[0] - 1, idx[1] - 1, idx[2] - 1, _coefficient(entry[3], field, where)))
    return out


def _format_dense(m: LinearMap) -> List[List[str]]:
    return m.to_strings()


def _format_sparse(entries) -> List[List[Any]]:
    return [[i + 1, j + 1, k + 1, str(c)] for i, j, k, c in sorted(entries, key=lambda e: e[:3])]


# ==============================================================================
# Presentations
# ==============================================================================


def presentation_from_dict(data: Dict[str, Any]) -> AlgebraPresentation:
    dim = _require(data, "dim", int)
    if dim < 1:
        raise PresentationError("dimension must be positive", "dim")
    field = _field(data)
    variety = VarietyTag.parse(_require(data, "variety", str))

    products = {}
    for pname, entries in _optional_mapping(data, "products").items():
        path = f"products.{pname}"
        products[pname] = Product.from_entries(field, dim, _sparse_entries(entries, field, [dim] * 3, path))

    twists = {
        tname: _dense(rows, field, dim, dim, f"twists.{tname}") for tname, rows in _optional_mapping(data, "twists").items()
    }

    form = _dense(data["form"], field, dim, dim, "form") if data.get("form") is not None else None

    cobracket = None
    if data.get("cobracket") is not None:
        columns = [[field.zero] * (dim * dim) for _ in range(dim)]
        for j, i, k, c in _sparse_entries(data["cobracket"], field, [dim] * 3, "cobracket"):
            columns[j][i * dim + k] = columns[j][i * dim + k] + c
        cobracket = LinearMap(field, [[columns[j][r] for j in range(dim)] for r in range(dim * dim)])

    multiplicative = data.get("multiplicative", False)
    if not isinstance(multiplicative, bool):
        raise PresentationError("expected true or false", "multiplicative")

    return AlgebraPresentation(
        dim=dim,
        field=field,
        variety=variety,
        products=products,
        twists=twists,
        multiplicative=multiplicative,
        form=form,
        cobracket=cobracket,
        name=str(data.get("name", "")),
    )


def presentation_to_dict(p: AlgebraPresentation) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    if p.name:
        data["name"] = p.name
    data["dim"] = p.dim
    data["field"] = str(p.field)
    data["variety"] = p.variety.value
    data["multiplicative"] = p.multiplicative
    data["products"] = {pname: _format_sparse(prod.entries()) for pname, prod in p.products.items()}
    data["twists"] = {tname: _format_dense(m) for tname, m in p.twists.items()}
    if p.form is not None:
        data["form"] = _format_dense(p.form)
    if p.cobracket is not None:
        n = p.dim
        entries = [
            (j, r // n, r % n, p.cobracket.entry(r, j))
            for j in range(n)
            for r in range(n * n)
            if not p.cobracket.entry(r, j).is_zero
        ]
        data["cobracket"] = _format_sparse(entries)
    return data


def load_presentation(document: str, source: str = "") -> AlgebraPresentation:
    """Parse and validate a presentation document."""
    p = presentation_from_dict(_parse_document(document, source))
    log_debug(f"Loaded {p.variety.value} presentation of dimension {p.dim}", algebra=p.name or source)
    return p


def save_presentation(p: AlgebraPresentation) -> str:
    """Canonical document text; load_presentation(save_presentation(p)) == p."""
    return dump_json(presentation_to_dict(p))


def read_presentation(path: PathLike) -> AlgebraPresentation:
    path = Path(path)
    log_file_operation("read", path)
    p = load_presentation(_read_text(path), str(path))
    return p if p.name else p.replace(name=path.stem)


def write_presentation(p: AlgebraPresentation, path: PathLike) -> None:
    _write_text(Path(path), save_presentation(p))


# ==============================================================================
# Action families
# ==============================================================================


def action_from_dict(data: Dict[str, Any]) -> ActionFamily:
    field = _field(data)
    algebra_dim = _require(data, "algebra_dim", int)
    module_dim = _require(data, "module_dim", int)
    if algebra_dim < 1 or module_dim < 1:
        raise PresentationError("dimensions must be positive", "algebra_dim")

    actions = {}
    for aname, entries in _require(data, "actions", dict).items():
        path = f"actions.{aname}"
        cells = [[[field.zero] * module_dim for _ in range(module_dim)] for _ in range(algebra_dim)]
        for i, j, k, c in _sparse_entries(entries, field, [algebra_dim, module_dim, module_dim], path):
            cells[i][k][j] = cells[i][k][j] + c
        actions[aname] = tuple(LinearMap(field, m) for m in cells)

    module_twists = {
        tname: _dense(rows, field, module_dim, module_dim, f"module_twists.{tname}")
        for tname, rows in _require(data, "module_twists", dict).items()
    }
    multiplicative = data.get("multiplicative", False)
    if not isinstance(multiplicative, bool):
        raise PresentationError("expected true or false", "multiplicative")
    return ActionFamily(
        algebra_dim=algebra_dim,
        module_dim=module_dim,
        field=field,
        actions=actions,
        module_twists=module_twists,
        multiplicative=multiplicative,
        name=str(data.get("name", "")),
    )


def action_to_dict(a: ActionFamily) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    if a.name:
        data["name"] = a.name
    data["field"] = str(a.field)
    data["algebra_dim"] = a.algebra_dim
    data["module_dim"] = a.module_dim
    data["multiplicative"] = a.multiplicative
    actions = {}
    for aname, mats in a.actions.items():
        entries = [
            (i, j, k, m.entry(k, j))
            for i, m in enumerate(mats)
            for j in range(a.module_dim)
            for k in range(a.module_dim)
            if not m.entry(k, j).is_zero
        ]
        actions[aname] = _format_sparse(entries)
    data["actions"] = actions
    data["module_twists"] = {tname: _format_dense(m) for tname, m in a.module_twists.items()}
    return data


def load_action(document: str, source: str = "") -> ActionFamily:
    return action_from_dict(_parse_document(document, source))


def save_action(a: ActionFamily) -> str:
    return dump_json(action_to_dict(a))


def read_action(path: PathLike) -> ActionFamily:
    path = Path(path)
    a = load_action(_read_text(path), str(path))
    return a if a.name else a.replace(name=path.stem)


def write_action(a: ActionFamily, path: PathLike) -> None:
    _write_text(Path(path), save_action(a))


# ==============================================================================
# O-operators
# ==============================================================================


def operator_from_dict(data: Dict[str, Any]) -> OOperatorData:
    field = _field(data)
    algebra_dim = _require(data, "algebra_dim", int)
    module_dim = _require(data, "module_dim", int)
    T = _dense(_require(data, "T", list), field, algebra_dim, module_dim, "T")
    return OOperatorData(T=T, convention=str(data.get("convention", "hom_paper")), name=str(data.get("name", "")))


def operator_to_dict(t: OOperatorData) -> Dict[str, Any]:
    data: Dict[str, Any] = {}
    if t.name:
        data["name"] = t.name
    data["field"] = str(t.T.field)
    data["algebra_dim"] = t.algebra_dim
    data["module_dim"] = t.module_dim
    data["convention"] = t.convention
    data["T"] = _format_dense(t.T)
    return data


def load_operator(document: str, source: str = "") -> OOperatorData:
    return operator_from_dict(_parse_document(document, source))


def save_operator(t: OOperatorData) -> str:
    return dump_json(operator_to_dict(t))


def read_operator(path: PathLike) -> OOperatorData:
    path = Path(path)
    t = load_operator(_read_text(path), str(path))
    return t if t.name else OOperatorData(T=t.T, convention=t.convention, name=path.stem)


# ==============================================================================
# Files
# ==============================================================================


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise InputError(f"file not found: {path}") from e


def _write_text(path: Path, text: str) -> None:
    log_file_operation("write", path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
