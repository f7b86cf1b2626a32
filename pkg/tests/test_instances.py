import json
from fractions import Fraction

import pytest

from desingkit.instances import (
    MalformedInput,
    build_fan,
    build_separation,
    parse_instance,
    parse_int,
    parse_rat,
)


def doc(kind, payload):
    return json.dumps({"kind": kind, "payload": payload}).encode()


def test_numbers_are_strict():
    assert parse_int("-12", "x") == -12
    assert parse_int(7, "x") == 7
    assert parse_rat("3/4", "x") == Fraction(3, 4)
    for bad in (True, 1.5, "1.5", "0x10", None):
        with pytest.raises(MalformedInput):
            parse_int(bad, "x")
    with pytest.raises(MalformedInput):
        parse_rat("1/0", "x")


def test_big_integers_survive():
    big = str(10**40)
    kind, payload = parse_instance(doc("cone", {"rank": "1", "rays": [[big]]}))
    assert payload["rays"] == [(10**40,)]


@pytest.mark.parametrize("raw", [
    b"[]",
    doc("sphere", {}),
    doc("cone", {"rank": "2"}),
    doc("cone", {"rank": "2", "rays": [["1"]]}),
    doc("fan", {"rank": "2", "cones": [{"rank": "3", "rays": []}]}),
    doc("separation", {"sections": "2", "components": [{"id": "1", "classes": [{"members": ["1", "2"], "mult": {"1-2": "1"}}]}]}),
    doc("strata", {"strata": {}, "inclusions": [{"source": "a", "target": "b", "matrix": []}]}),
])
def test_malformed_documents(raw):
    with pytest.raises(MalformedInput):
        parse_instance(raw)


def test_fan_and_separation_build():
    payload = {"rank": "2", "cones": [{"rank": "2", "rays": [["1", "0"], ["1", "1"]]},
                                      {"rank": "2", "rays": [["1", "1"], ["0", "1"]]}]}
    f = build_fan(parse_instance(doc("fan", payload))[1])
    assert len(f.cones) == 2
    payload = {"sections": "3", "components": [{"id": "1", "classes": [
        {"members": ["1", "2"], "mult": {"1,2": "2"}}]}]}
    s = build_separation(parse_instance(doc("separation", payload))[1])
    assert s.components[0].classes[0].m(1, 2) == 2
