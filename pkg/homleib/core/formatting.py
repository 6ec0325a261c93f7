from typing import Sequence


def format_time(seconds: float) -> str:
    """
    Format a duration in the most appropriate unit.
    Args:
        seconds: Time in seconds
    Returns:
        Formatted time string with unit
    """
    if seconds < 1e-6:
        return f"{seconds * 1e9:.2f} ns"
    elif seconds < 1e-3:
        return f"{seconds * 1e6:.2f} μs"
    elif seconds < 1:
        return f"{seconds * 1000:.2f} ms"
    else:
        return f"{seconds:.3f} s"


def basis_label(index: int) -> str:
    """0-based basis index to label: e1, e2, ..."""
    return f"e{index + 1}"


def format_coords(coords: Sequence[str]) -> str:
    """Render a coordinate list as "[2, 0]"."""
    return "[" + ", ".join(coords) + "]"


def plural(count: int, word: str) -> str:
    return f"{count} {word}" if count == 1 else f"{count} {word}s"
