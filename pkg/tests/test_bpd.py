import json

import pytest

from bondskein.bpd import BPDSyntaxError, from_json, parse_bpd, serialize_bpd, to_json
from bondskein.diagram import DiagramError
from bondskein.reference import data_names, load_data
from bondskein.samples import random_bonded_diagram


@pytest.mark.parametrize("name", [n for n in data_names() if n != "broken"])
def test_text_round_trip(name):
    d = load_data(name)
    text = serialize_bpd(d)
    again = parse_bpd(text)
    assert again == d
    assert serialize_bpd(again) == text


@pytest.mark.parametrize("seed", range(25))
def test_json_round_trip(seed):
    d = random_bonded_diagram(seed)
    blob = json.dumps(to_json(d))
    assert from_json(blob) == d


def test_missing_color_defaults_to_one():
    d = parse_bpd(
        """
        comp k : a c
        bond s : s1
        v p ( s1.0 , c.1 , a.0 )
        v q ( s1.1 , a.1 , c.0 )
        """
    )
    assert d.colors == {"s": 1}


def test_comments_and_blank_lines():
    d = parse_bpd("# a loop\n\nloops 1  # one circle\n")
    assert d.free_loops == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("comp k : e1\nfrob x", 2),
        ("comp k : e1 e2\nx c ( e1.0 , e2.1 , e1.1 ) over 0", 2),
        ("comp k : e1 e2\nx c ( e1.0 , e2.1 , e1.1 , e2.0 )", 2),
        ("comp k : e1 e2\nx c ( e1.0 , e2.7 , e1.1 , e2.0 ) over 0", 2),
    ],
)
def test_syntax_errors_carry_positions(text, line):
    with pytest.raises(BPDSyntaxError) as info:
        parse_bpd(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_component_order_checked():
    text = serialize_bpd(load_data("trefoil")).replace("e1 e2 e3", "e2 e1 e3")
    with pytest.raises(DiagramError, match="order"):
        parse_bpd(text)
