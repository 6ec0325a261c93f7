"""
The identity catalog: every named axiom and condition, loaded from the
``.hli`` files of the catalog directory. Each file is one group.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from homleib.core.config import get_config
from homleib.core.exceptions import CatalogError, InputError
from homleib.core.logging import log_debug
from homleib.identities.ast import Identity
from homleib.identities.parser import parse_identities

CATALOG_SUFFIX = ".hli"

# Names a complete catalog must define; checked by load_catalog(strict=True)
MANIFEST: Tuple[str, ...] = (
    "hom_leibniz",
    "multiplicativity_al",
    "multiplicativity_be",
    "skew_symmetry",
    "hom_jacobi",
    "involutive_al",
    *(f"homleib_bimod_{i}" for i in range(1, 6)),
    "homleib_bimod_consequence",
    *(f"matched_pair_{i}" for i in range(1, 7)),
    "matched_pair_6_alt",
    "form_skew",
    "form_alpha_invariant",
    "form_cyclic_invariant",
    "form_symplectic_prec",
    "form_symplectic_succ",
    "bialg_1",
    "bialg_2",
    "bialg_equiv_1",
    "bialg_equiv_2",
    *(f"dendr_{i}" for i in range(1, 4)),
    "multiplicativity_al_prec",
    "multiplicativity_al_succ",
    "multiplicativity_be_prec",
    "multiplicativity_be_succ",
    *(f"dendr_bimod_{i}" for i in range(1, 14)),
    *(f"dendr_matched_{i}" for i in range(1, 19)),
    "bihom_leibniz",
    "bihom_twist_commute",
    *(f"bihom_bimod_{i}" for i in range(1, 8)),
    *(f"bihom_matched_{i}" for i in range(1, 7)),
    *(f"bihom_dendr_{i}" for i in range(1, 4)),
    *(f"bihom_dendr_bimod_{i}" for i in range(1, 18)),
    *(f"bihom_dendr_matched_{i}" for i in range(1, 19)),
    "ooperator_hom",
    "ooperator_hom_twist",
    "rota_baxter_hom",
    "rota_baxter_hom_twist",
    "ooperator_bihom",
    "ooperator_bihom_twist_1",
    "ooperator_bihom_twist_2",
    "rota_baxter_bihom",
    "rota_baxter_bihom_twist_1",
    "rota_baxter_bihom_twist_2",
)


@dataclass
class IdentityCatalog:
    """Named identities grouped by catalog file."""

    directory: Path
    identities: Dict[str, Identity] = field(default_factory=dict)
    groups: Dict[str, List[str]] = field(default_factory=dict)

    def __contains__(self, name: str) -> bool:
        return name in self.identities

    def __iter__(self) -> Iterator[Identity]:
        return iter(self.identities.values())

    def __len__(self) -> int:
        return len(self.identities)

    def get(self, name: str) -> Identity:
        try:
            return self.identities[name]
        except KeyError:
            raise CatalogError(f"no identity named {name!r} in catalog {self.directory}") from None

    def select(self, names) -> List[Identity]:
        return [self.get(n) for n in names]

    def group_of(self, name: str) -> Optional[str]:
        for group, names in self.groups.items():
            if name in names:
                return group
        return None

    def missing(self) -> List[str]:
        return [n for n in MANIFEST if n not in self.identities]


def _load(directory: Path) -> IdentityCatalog:
    if not directory.is_dir():
        raise CatalogError(f"catalog directory not found: {directory}")
    catalog = IdentityCatalog(directory=directory)
    for path in sorted(directory.glob(f"*{CATALOG_SUFFIX}")):
        try:
            parsed = parse_identities(path.read_text(encoding="utf-8"), path.name)
        except CatalogError:
            raise
        except InputError as e:
            raise CatalogError(f"{path.name}: {e}") from e
        names = []
        for identity in parsed:
            if identity.name in catalog.identities:
                other = catalog.identities[identity.name].source
                raise CatalogError(f"identity {identity.name!r} defined in both {other} and {path.name}")
            catalog.identities[identity.name] = identity
            names.append(identity.name)
        catalog.groups[path.stem] = names
        log_debug(f"Loaded {len(names)} identities from {path.name}")
    return catalog


@lru_cache(maxsize=8)
def _cached(directory: str) -> IdentityCatalog:
    return _load(Path(directory))


def load_catalog(directory: Optional[Path] = None, strict: bool = False) -> IdentityCatalog:
    """
    Load (and cache) the catalog of ``directory``, defaulting to the
    configured catalog directory.

    With ``strict`` every manifest name must be present.
    """
    directory = Path(directory) if directory is not None else get_config().catalog_dir
    catalog = _cached(str(directory.resolve()))
    if strict:
        missing = catalog.missing()
        if missing:
            raise CatalogError(f"catalog {directory} is missing {', '.join(missing)}")
    return catalog


def clear_catalog_cache() -> None:
    _cached.cache_clear()


def get_identity(name: str, directory: Optional[Path] = None) -> Identity:
    return load_catalog(directory).get(name)
