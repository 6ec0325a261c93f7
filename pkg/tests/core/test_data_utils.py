import json

import pytest

from homleib.core.data_utils import dump_json, load_json, parse_index_set, parse_split, save_json
from homleib.core.exceptions import InputError, PresentationError


def test_parse_index_set():
    assert parse_index_set("1,3,5-7", 10) == {1, 3, 5, 6, 7}
    assert parse_index_set("1-3", 3) == {1, 2, 3}
    assert parse_index_set(" 2 , ,4", 4) == {2, 4}


@pytest.mark.parametrize("arg, match", [("0", "outside"), ("4-2", "empty range"), ("a", "invalid index"), ("1-9", "outside")])
def test_parse_index_set_errors(arg, match):
    with pytest.raises(InputError, match=match):
        parse_index_set(arg, 5)


def test_parse_split():
    assert parse_split("1-2;3-4", 4) == ({1, 2}, {3, 4})
    assert parse_split("1,3;2,4", 4) == ({1, 3}, {2, 4})
    with pytest.raises(InputError, match="exactly two parts"):
        parse_split("1-4", 4)
    with pytest.raises(InputError, match="does not partition"):
        parse_split("1-2;2-4", 4)
    with pytest.raises(InputError, match="does not partition"):
        parse_split("1;2", 3)


def test_canonical_json(tmp_path):
    data = {"name": "α", "rows": [["1", "0"]]}
    text = dump_json(data)
    assert text.endswith("}\n")
    assert '"α"' in text
    path = tmp_path / "nested" / "out.json"
    save_json(path, data)
    assert path.read_text(encoding="utf-8") == text
    assert load_json(path) == data


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError, match="file not found"):
        load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n  oops}')
    with pytest.raises(PresentationError) as excinfo:
        load_json(bad)
    assert excinfo.value.path == str(bad)
    assert "line 2" in str(excinfo.value)
    assert json.loads(dump_json([])) == []
