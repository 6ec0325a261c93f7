import json
from pathlib import Path
from typing import Any, Dict, List, Set, Tuple, Union

from homleib.core.exceptions import InputError, PresentationError
from homleib.core.logging import log_file_operation


def load_json(file_path: Union[str, Path]) -> Any:
    """
    Load a JSON document.
    Args:
        file_path: Path to the JSON file
    Returns:
        Parsed JSON data
    Raises:
        InputError: If the file is missing
        PresentationError: If the file is not valid JSON (position reported)
    """
    path = Path(file_path)
    log_file_operation("read", path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise InputError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise PresentationError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", str(path)) from e


def dump_json(data: Union[List, Dict]) -> str:
    """Canonical JSON text: two-space indent, insertion key order, trailing newline."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def save_json(file_path: Union[str, Path], data: Union[List, Dict]) -> None:
    """
    Save data to a JSON file in canonical form.
    Args:
        file_path: Path to save JSON file
        data: Data to save
    """
    path = Path(file_path)
    log_file_operation("write", path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(data), encoding="utf-8")


def parse_index_set(arg: str, total: int) -> Set[int]:
    """
    Parse a comma-separated list of 1-based indices and ranges.

    Examples:
        - "1,3,5-7" -> {1, 3, 5, 6, 7}
    Args:
        arg: Comma-separated indices/ranges
        total: Largest admissible index
    Returns:
        Set of indices
    Raises:
        InputError: On malformed parts or indices outside 1..total
    """
    selected: Set[int] = set()
    for part in arg.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                start, end = map(int, part.split("-"))
                if start > end:
                    raise InputError(f"empty range '{part}'")
                selected.update(range(start, end + 1))
            else:
                selected.add(int(part))
        except ValueError as e:
            raise InputError(f"invalid index '{part}'") from e

    out_of_range = sorted(i for i in selected if not 1 <= i <= total)
    if out_of_range:
        raise InputError(f"indices {out_of_range} outside 1-{total}")
    return selected


def parse_split(arg: str, total: int) -> Tuple[Set[int], Set[int]]:
    """
    Parse a basis split such as "1-2;3-4" into two index sets.

    Raises:
        InputError: If the two sets do not partition 1..total
    """
    parts = arg.split(";")
    if len(parts) != 2:
        raise InputError(f"split must have exactly two parts separated by ';', got {arg!r}")
    first, second = (parse_index_set(part, total) for part in parts)
    if first & second or first | second != set(range(1, total + 1)):
        raise InputError(f"split {arg!r} does not partition 1-{total}")
    return first, second
