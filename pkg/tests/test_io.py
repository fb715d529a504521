from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from coincidence.errors import MalformedRecord
from coincidence.io import (
    group_from_json,
    group_to_json,
    image_from_json,
    image_to_json,
    ingest_group,
    ingest_image,
    ingest_record,
    record_from_json,
    record_to_json,
)
from coincidence.matgroup import MatGroup
from coincidence.padic import PAdicImage

from strategies import invertible_entries
from test_rules import full_record


@st.composite
def group_json(draw):
    n = draw(st.sampled_from([2, 3, 4, 8, 9, 12, 27]))
    gens = draw(st.lists(invertible_entries(n), min_size=1, max_size=4))
    return {"modulus": n, "generators": [list(g) for g in gens]}


@given(group_json())
def test_group_round_trip(obj):
    assert group_to_json(group_from_json(obj)) == obj
    G = group_from_json(obj)
    assert group_from_json(json.loads(json.dumps(group_to_json(G)))).gens == G.gens


@given(st.sampled_from([(2, 3), (3, 2), (5, 1)]), st.data())
def test_image_round_trip(case, data):
    p, s = case
    gens = data.draw(st.lists(invertible_entries(p**s), min_size=1, max_size=3))
    X = PAdicImage(p, s, MatGroup(p**s, gens))
    obj = image_to_json(X)
    assert image_to_json(image_from_json(obj)) == obj


@settings(max_examples=60)
@given(full_record())
def test_record_round_trip(rec):
    obj = record_to_json(rec)
    back = record_from_json(json.loads(json.dumps(obj)))
    assert back == rec
    assert record_to_json(back) == obj


def test_the_printed_40a4_group_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text('{"modulus":4,"generators":[[0,1,1,0]]}')
    assert ingest_group(path).order == 2
    path.write_text(json.dumps({"p": 2, "depth": 2, "group": {"modulus": 4, "generators": [[0, 1, 1, 0]]}}))
    assert ingest_image(path).depth == 2


@pytest.mark.parametrize(
    "obj, fragment",
    [
        ({"modulus": 4}, "needs 'modulus' and 'generators'"),
        ({"modulus": 1, "generators": [[1, 0, 0, 1]]}, "group.modulus"),
        ({"modulus": 4, "generators": [[2, 0, 0, 2]]}, "group.generators[0]"),
        ({"modulus": 4, "generators": [[1, 0, 0]]}, "four entries"),
        ({"modulus": 4, "generators": [[1, 0, 0, 1]], "extra": 1}, "unknown field"),
        ({"modulus": 4, "generators": [[1, 0, "a", 1]]}, "generators[0][2]"),
    ],
)
def test_group_errors_name_the_field(obj, fragment):
    with pytest.raises(MalformedRecord) as err:
        group_from_json(obj)
    assert fragment in str(err.value)


def test_record_errors(tmp_path):
    bad = {"local": [{"p": 7, "ideals": [{"e": 1, "reduction": "weird"}]}]}
    with pytest.raises(MalformedRecord, match=r"local\[0\]\.ideals\[0\]\.reduction"):
        record_from_json(bad)
    with pytest.raises(MalformedRecord, match="unknown field"):
        record_from_json({"colour": "red"})
    with pytest.raises(MalformedRecord, match="r >= 1"):
        record_from_json({"cyclotomic_trivial": {"5": {"trivial_through": "all", "r": 1}}})
    with pytest.raises(MalformedRecord, match="listed twice"):
        record_from_json({"local": [{"p": 3, "ideals": [{"reduction": "good"}]}] * 2})
    path = tmp_path / "r.json"
    path.write_text('{"name": "x",\n "cm": }')
    with pytest.raises(MalformedRecord, match="line 2"):
        ingest_record(path)
    with pytest.raises(MalformedRecord, match="cannot read"):
        ingest_record(tmp_path / "missing.json")
    path.write_text('{"p": 2, "depth": 3, "group": {"modulus": 4, "generators": [[1, 0, 0, 1]]}}')
    with pytest.raises(MalformedRecord, match="expected 2"):
        ingest_image(path)
