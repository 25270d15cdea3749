import json
from pathlib import Path

import pytest

from factorspace import io
from factorspace.ci import JointDistribution
from factorspace.covering import Covering, IndexSet
from factorspace.factorize import FactorSystem
from factorspace.loglin import PositiveTable

DOCS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return p


@pytest.mark.parametrize("kind", sorted(io.SCHEMAS))
def test_published_schemas_match_code(kind):
    assert json.loads((DOCS / f"{kind}.schema.json").read_text()) == io.SCHEMAS[kind]


def test_write_schemas(tmp_path):
    io.write_schemas(tmp_path / "out")
    assert sorted(p.name for p in (tmp_path / "out").iterdir()) == sorted(f"{k}.schema.json" for k in io.SCHEMAS)


def test_round_trips(tmp_path, binary3):
    c = Covering.of(IndexSet(("1", "2", "3")), [["1", "2"], []])
    assert io.load("covering", write(tmp_path, "c.json", io.covering_to_dict(c))) == c
    t = PositiveTable(binary3, range(1, 9))
    back = io.load("table", write(tmp_path, "t.json", t.to_dict()))
    assert back.space == binary3 and list(back.values) == list(t.values)
    assert io.load("state_space", write(tmp_path, "s.json", binary3.to_dict())) == binary3
    p = JointDistribution.normalize(t)
    assert list(io.load("distribution", write(tmp_path, "p.json", p.to_dict())).values) == list(p.values)
    g = {"vertices": ["1", "2", "3"], "edges": [["1", "2"]]}
    assert io.load("graph", write(tmp_path, "g.json", g)).to_dict() == g
    fs = FactorSystem(binary3, c, {0b011: [1, 2, 3, 4], 0: [2]})
    again = io.factor_system_from_dict(binary3, json.loads(json.dumps(fs.to_dict())))
    assert again.covering == c


def test_plain_tables_are_normalised_explicitly(tmp_path, binary3):
    data = PositiveTable(binary3, range(1, 9)).to_dict()
    for extra in ({}, {"normalized": False}):
        p = io.load("distribution", write(tmp_path, "p.json", {**data, **extra}))
        assert abs(sum(p.values) - 1) < 1e-12
    with pytest.raises(ValueError, match="not 1"):
        io.load("distribution", write(tmp_path, "q.json", {**data, "normalized": True}))


def test_malformed_json_reports_position(tmp_path):
    p = write(tmp_path, "bad.json", '{"index_set": ["1",\n  "2"\n  "members": []}')
    with pytest.raises(io.InputError) as exc:
        io.load("covering", p)
    assert f"{p}:3:3:" in str(exc.value)


@pytest.mark.parametrize(
    "kind,data,where",
    [
        ("covering", {"index_set": ["1"], "members": [["1", "1"]]}, "members/0"),
        ("covering", {"index_set": [], "members": []}, "index_set"),
        ("table", {"space": {"alphabets": {"1": ["a", "b"]}}, "values": [1, -1]}, "values/1"),
        ("graph", {"vertices": ["1", "2"], "edges": [["1"]]}, "edges/0"),
    ],
)
def test_schema_violations(tmp_path, kind, data, where):
    with pytest.raises(io.InputError, match=f"schema violation at {where}"):
        io.load(kind, write(tmp_path, "x.json", data))


def test_missing_file(tmp_path):
    with pytest.raises(io.InputError):
        io.load("covering", tmp_path / "absent.json")


def test_semantic_errors_surface_as_value_errors(tmp_path):
    with pytest.raises(ValueError):
        io.load("covering", write(tmp_path, "c.json", {"index_set": ["1"], "members": [["2"]]}))
    space = {"alphabets": {"1": ["a", "b"]}}
    with pytest.raises(ValueError):
        io.load("table", write(tmp_path, "t.json", {"space": space, "values": [1, 2, 3]}))
