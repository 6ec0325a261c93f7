import pytest

from homleib.core.config import HomLeibConfig, set_config
from homleib.core.exceptions import CatalogError
from homleib.identities.catalog import MANIFEST, get_identity, load_catalog


def test_bundled_catalog_is_complete():
    catalog = load_catalog(strict=True)
    assert catalog.missing() == []
    assert len(catalog) >= len(MANIFEST)
    assert "hom_leibniz" in catalog
    assert catalog.group_of("hom_leibniz") == "hom_leibniz"
    assert catalog.group_of("rota_baxter_bihom") == "ooperator"
    assert catalog.group_of("nonexistent") is None


def test_catalog_is_cached():
    assert load_catalog() is load_catalog()


def test_unknown_identity():
    with pytest.raises(CatalogError, match="no identity named"):
        get_identity("hom_leibnitz")


def test_select_keeps_order():
    names = ["multiplicativity_al", "hom_leibniz"]
    assert [i.name for i in load_catalog().select(names)] == names


def test_identities_keep_their_source_text():
    identity = get_identity("skew_symmetry")
    assert identity.source == "hom_leibniz.hli"
    assert identity.text.startswith("skew_symmetry over (x: A, y: A)")


def test_bihom_dendriform_bimodule_conditions():
    names = [f"bihom_dendr_bimod_{i}" for i in range(1, 18)]
    assert all(load_catalog().group_of(n) == "bihom_dendriform_bimodule" for n in names)
    assert get_identity("bihom_dendr_bimod_5").symbols() == {"lsucc", "rprec", "br", "al", "be", "beV2"}
    assert "r" not in get_identity("bihom_dendr_bimod_7").symbols()
    for i, action in zip(range(10, 18), ["lprec", "rprec", "lsucc", "rsucc"] * 2):
        twist = "beV" if i < 14 else "beV2"
        assert get_identity(f"bihom_dendr_bimod_{i}").symbols() == {twist, action, "al" if i < 14 else "be"}


def test_custom_catalog_directory(tmp_path):
    (tmp_path / "mine.hli").write_text("only over (x: A) : al(x) - x = 0\n")
    catalog = load_catalog(tmp_path)
    assert [i.name for i in catalog] == ["only"]
    assert catalog.groups == {"mine": ["only"]}
    with pytest.raises(CatalogError, match="missing"):
        load_catalog(tmp_path, strict=True)


def test_configured_catalog_directory(tmp_path):
    (tmp_path / "mine.hli").write_text("only over (x: A) : al(x) - x = 0\n")
    set_config(HomLeibConfig(catalog_dir=tmp_path))
    assert get_identity("only").name == "only"


def test_environment_overrides_catalog_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("HOMLEIB_CATALOG", str(tmp_path))
    assert HomLeibConfig.from_file().catalog_dir == tmp_path


def test_duplicate_names_across_files(tmp_path):
    (tmp_path / "a.hli").write_text("same over (x: A) : al(x) = 0\n")
    (tmp_path / "b.hli").write_text("same over (x: A) : be(x) = 0\n")
    with pytest.raises(CatalogError, match="defined in both a.hli and b.hli"):
        load_catalog(tmp_path)


def test_malformed_file_names_the_file(tmp_path):
    (tmp_path / "broken.hli").write_text("bad over (x: A) : al(x) =\n")
    with pytest.raises(CatalogError, match="broken.hli"):
        load_catalog(tmp_path)


def test_missing_directory(tmp_path):
    with pytest.raises(CatalogError, match="not found"):
        load_catalog(tmp_path / "nowhere")
