from pathlib import Path

import pytest

from homleib.algebra.io import read_action, read_operator, read_presentation
from homleib.algebra.linalg import LinearMap, Product
from homleib.algebra.model import AlgebraPresentation, VarietyTag
from homleib.algebra.scalar import FieldSpec
from homleib.core.config import DEFAULT_CORPUS_DIR, set_config
from homleib.core.logging import reset_logger
from homleib.identities.catalog import clear_catalog_cache

CORPUS = DEFAULT_CORPUS_DIR
DATA = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def fresh_state(monkeypatch, tmp_path):
    """Defaults only: no config file from the working directory or home."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.delenv("HOMLEIB_CATALOG", raising=False)
    set_config(None)
    clear_catalog_cache()
    yield
    set_config(None)
    reset_logger()
    clear_catalog_cache()


@pytest.fixture
def Q():
    return FieldSpec.rationals()


@pytest.fixture
def twodim():
    """[e2, e2] = e1 with α = [[1, 1], [0, 1]]."""
    return read_presentation(CORPUS / "homleib-2dim" / "twodim.alg")


@pytest.fixture
def twodim_regular():
    return read_action(CORPUS / "homleib-2dim" / "regular.act")


@pytest.fixture
def dendr3():
    return read_presentation(CORPUS / "dendr3" / "dendr3.alg")


@pytest.fixture
def abelian3():
    return read_presentation(CORPUS / "abelian-3" / "abelian.alg")


@pytest.fixture
def bihom_sqrt2():
    root = CORPUS / "bihom-sqrt2"
    return (
        read_presentation(root / "A.alg"),
        read_presentation(root / "B.alg"),
        read_action(root / "A_on_B.act"),
        read_action(root / "B_on_A.act"),
    )


@pytest.fixture
def bihom_rb():
    root = CORPUS / "bihom-rb"
    return (
        read_presentation(root / "rb.alg"),
        read_operator(root / "K.op"),
        read_operator(root / "K_commuting.op"),
        read_presentation(root / "induced.alg"),
    )


@pytest.fixture
def heisenberg_sign(Q):
    """[e1, e2] = e3 = -[e2, e1] with α = diag(1, -1, -1): involutive and multiplicative Hom-Lie."""
    return AlgebraPresentation(
        dim=3,
        field=Q,
        variety=VarietyTag.HOM_LIE,
        products={"br": Product.from_entries(Q, 3, [(0, 1, 2, 1), (1, 0, 2, -1)])},
        twists={"al": LinearMap.diagonal(Q, [1, -1, -1])},
        multiplicative=True,
        name="heisenberg",
    )
