import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

# Configuration defaults - all constants at the top
CONFIG_FILENAME = "homleib_config.json"
CATALOG_ENV_VAR = "HOMLEIB_CATALOG"
PACKAGE_DIR = Path(__file__).resolve().parent.parent
DEFAULT_CATALOG_DIR = PACKAGE_DIR / "identities" / "data"
DEFAULT_CORPUS_DIR = PACKAGE_DIR / "corpus" / "data"
DEFAULT_JOBS = 1
DEFAULT_SEED = 0
DEFAULT_FUZZ_CASES = 200
DEFAULT_SPOT_CHECKS = 100
DEFAULT_REPORT_FORMAT = "text"
REPORT_FORMATS = ("text", "machine")
DEFAULT_SPECIALIZATIONS: List[Dict[str, str]] = [
    {"p": "2", "q": "3"},
    {"p": "-1", "q": "1/2"},
]

_config: Optional["HomLeibConfig"] = None


@dataclass
class CheckConfig:
    """Identity-checking configuration."""

    jobs: int = DEFAULT_JOBS
    seed: int = DEFAULT_SEED
    fuzz_cases: int = DEFAULT_FUZZ_CASES
    spot_checks: int = DEFAULT_SPOT_CHECKS


@dataclass
class CorpusConfig:
    """Corpus configuration: rational specializations applied to parametric entries."""

    specializations: List[Dict[str, str]] = field(
        default_factory=lambda: [dict(s) for s in DEFAULT_SPECIALIZATIONS]
    )


@dataclass
class HomLeibConfig:
    """Main configuration class for homleib."""

    catalog_dir: Path = field(default_factory=lambda: DEFAULT_CATALOG_DIR)
    corpus_dir: Path = field(default_factory=lambda: DEFAULT_CORPUS_DIR)
    report_format: str = DEFAULT_REPORT_FORMAT
    debug: bool = False
    check: CheckConfig = field(default_factory=CheckConfig)
    corpus: CorpusConfig = field(default_factory=CorpusConfig)

    def __post_init__(self):
        if not isinstance(self.catalog_dir, Path):
            self.catalog_dir = Path(self.catalog_dir).expanduser()
        if not isinstance(self.corpus_dir, Path):
            self.corpus_dir = Path(self.corpus_dir).expanduser()
        if self.report_format not in REPORT_FORMATS:
            raise ValueError(f"unknown report format {self.report_format!r}")

    @classmethod
    def from_file(cls, config_path: Optional[Path] = None) -> "HomLeibConfig":
        """Load configuration from file, then apply the environment."""
        config = cls.from_dict(load_config_file(config_path))
        env_catalog = os.environ.get(CATALOG_ENV_VAR)
        if env_catalog:
            config.catalog_dir = Path(env_catalog).expanduser()
        return config

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "HomLeibConfig":
        """Create config from a dictionary, accepting flat or nested keys."""
        config_data = data.copy()

        field_mapping = {
            "jobs": "check.jobs",
            "seed": "check.seed",
            "fuzz_cases": "check.fuzz_cases",
            "spot_checks": "check.spot_checks",
            "specializations": "corpus.specializations",
        }
        for json_key, config_key in field_mapping.items():
            if json_key in config_data:
                value = config_data.pop(json_key)
                parent, child = config_key.split(".", 1)
                config_data.setdefault(parent, {})[child] = value

        if isinstance(config_data.get("check"), dict):
            config_data["check"] = CheckConfig(**config_data["check"])
        if isinstance(config_data.get("corpus"), dict):
            config_data["corpus"] = CorpusConfig(**config_data["corpus"])

        return cls(**config_data)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["catalog_dir"] = str(data["catalog_dir"])
        data["corpus_dir"] = str(data["corpus_dir"])
        return data

    def save(self, path: Optional[Path] = None) -> None:
        if path is None:
            path = Path.home() / f".{CONFIG_FILENAME}"
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)


def load_config_file(config_path: Optional[Path] = None) -> Dict[str, Any]:
    """Return the first readable configuration document, or an empty dict."""
    paths = []
    if config_path:
        paths.append(Path(config_path))
    paths.extend([Path.cwd() / CONFIG_FILENAME, Path.home() / f".{CONFIG_FILENAME}"])

    for path in paths:
        if path.exists():
            try:
                with open(path, "r") as f:
                    return json.load(f)
            except (json.JSONDecodeError, IOError):
                continue
    return {}


def get_config() -> HomLeibConfig:
    global _config
    if _config is None:
        _config = HomLeibConfig.from_file()
    return _config


def set_config(config: Optional[HomLeibConfig]) -> None:
    global _config
    _config = config
