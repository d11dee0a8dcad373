import json

import pytest

from trimodel import load_fixture
from trimodel.errors import ValidationError
from trimodel.fixtures import FIXTURE_DIR_ENV, fixture_from_dict, resolve_path

from test_addcat import non_associative_table


def test_shipped_fixtures_load(n3, vec):
    assert n3.name == "N3" and vec.name == "VEC"
    assert set(n3.xi_specs) == {"all", "split", "coh_M1", "coh_M2"}
    assert n3.subcategory("all").labels(n3.backend.cat) == ["M1", "M2"]


def test_empty_fixture_is_zero_category():
    fx = fixture_from_dict({})
    assert fx.backend.cat.n == 0
    assert [x.total for x in fx.backend.universe()] == [0]


def test_non_associative_fixture_names_the_triple():
    doc = {
        "field": {"p": 2},
        "category": {"indecomposables": ["E"], "hom_dim": [[3]], "composition": [{"triple": [0, 0, 0], "constants": non_associative_table().tolist()}], "identities": [[1, 0, 0]]},
    }
    with pytest.raises(ValidationError) as err:
        fixture_from_dict(doc)
    assert "basis triple" in str(err.value)


def test_unknown_references_rejected(tmp_path):
    base = json.loads(resolve_path("vec").read_text())
    bad = dict(base, hovey_triples=[{"xi": "all", "C": "zero", "F": "nowhere", "W": "all"}])
    with pytest.raises(ValidationError):
        fixture_from_dict(bad)
    with pytest.raises(ValidationError):
        fixture_from_dict(dict(base, schema_version=99))
    with pytest.raises(ValidationError):
        fixture_from_dict(dict(base, subcategories={"x": ["nope"]}))
    with pytest.raises(ValidationError):
        load_fixture("vec").xi("missing")


def test_env_directory(tmp_path, monkeypatch):
    doc = json.loads(resolve_path("vec").read_text())
    doc["name"] = "VEC-COPY"
    (tmp_path / "copy.json").write_text(json.dumps(doc))
    monkeypatch.setenv(FIXTURE_DIR_ENV, str(tmp_path))
    assert load_fixture("copy").name == "VEC-COPY"


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError):
        load_fixture(path)
