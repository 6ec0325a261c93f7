"""
Autocompletion functions for homleib.
"""

from typing import List

from homleib.core.config import HomLeibConfig
from homleib.core.exceptions import HomLeibError

CONSTRUCT_KINDS = (
    "twist",
    "derive",
    "semidirect",
    "matched-sum",
    "subadjacent",
    "dualize",
    "induce",
    "from-form",
    "omni",
)


class Completions:
    """Autocompletion provider for homleib."""

    @staticmethod
    def corpus_entries(incomplete: str) -> List[str]:
        root = HomLeibConfig.from_file().corpus_dir
        if not root.is_dir():
            return []
        names = sorted(p.name for p in root.iterdir() if (p / "entry.json").exists())
        return [n for n in names if n.startswith(incomplete)]

    @staticmethod
    def identities(incomplete: str) -> List[str]:
        from homleib.identities.catalog import load_catalog

        try:
            catalog = load_catalog(HomLeibConfig.from_file().catalog_dir)
        except HomLeibError:
            return []
        return [i.name for i in catalog if i.name.startswith(incomplete)]

    @staticmethod
    def construct_kinds(incomplete: str) -> List[str]:
        return [k for k in CONSTRUCT_KINDS if k.startswith(incomplete.lower())]
