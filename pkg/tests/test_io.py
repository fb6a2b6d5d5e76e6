import io as stdio
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dispersal import io
from dispersal.geometry import Arc, Ball, Box, Interval, WeightedInstance
from dispersal.hardness import ThreePartitionInstance, gen_interval_instance
from dispersal.oracle import Certificate

F = Fraction
fr = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def roundtrip(inst):
    return io.instance_from_doc(io.loads(io.dumps(io.instance_to_doc(inst))))


@given(st.lists(fr, min_size=1, max_size=6), st.lists(st.fractions(min_value=1, max_value=9, max_denominator=5), min_size=6, max_size=6))
def test_interval_roundtrip(centres, weights):
    inst = WeightedInstance.unit_intervals(centres, weights[: len(centres)])
    assert roundtrip(inst) == inst


def test_other_kinds_roundtrip():
    arcs = WeightedInstance.unit_arcs([0, F(7, 3)], F(9, 2))
    assert roundtrip(arcs) == arcs
    boxes = WeightedInstance((Box((F(1, 3), 2), 3), Box((0, 0), F(1, 2))), metric="L2")
    assert roundtrip(boxes) == boxes
    balls = WeightedInstance((Ball((0, 0), F(5, 2)),))
    assert roundtrip(balls) == balls


def test_decimals_are_exact():
    inst = io.instance_from_doc(io.loads('{"kind": "unit_interval", "centres": [0.1, "1/3"], "weights": [2.5, 1]}'))
    assert inst.centres == (F(1, 10), F(1, 3))
    assert inst.weights == (F(5, 2), 1)


def test_objects_form_with_weights():
    doc = {"kind": "interval", "objects": [{"centre": 1, "length": "1/2", "weight": 3}, {"centre": 4}]}
    inst = io.instance_from_doc(doc)
    assert inst.objects == (Interval(1, F(1, 2)), Interval(4))
    assert inst.weights == (3, 1)


@pytest.mark.parametrize(
    "text",
    ["[1, 2]", '{"kind": "unit_interval"}', '{"kind": "blob", "centres": [1]}',
     '{"centres": [true]}', '{"centres": [NaN]}', "{", '{"kind": "unit_arc", "starts": [0]}',
     '{"centres": [0], "weights": [0]}'],
)
def test_malformed(text):
    with pytest.raises(io.ParseError):
        io.instance_from_doc(io.loads(text))


def test_certificate_roundtrip_and_errors():
    cert = Certificate((0, 0), (1, 1), 1, (-1, 0), (1, 2))
    doc = io.loads(io.dumps(io.certificate_to_doc(cert)))
    assert io.certificate_from_doc(doc) == cert
    doc["assignment"] = [1, 1]
    with pytest.raises(io.ParseError):
        io.certificate_from_doc(doc)
    with pytest.raises(io.ParseError):
        io.certificate_from_doc({"instance": {"centres": [0]}, "threshold": 1, "slots": [0]})


def test_dispersal_docs():
    d = (F(1, 2), F(-3))
    assert io.dispersal_from_doc(io.loads(json.dumps(io.dispersal_to_doc(d)))) == d
    assert io.dispersal_from_doc({"dispersal": [[1, "1/2"]]}) == ((1, F(1, 2)),)
    with pytest.raises(io.ParseError):
        io.dispersal_from_doc({"x": 1})


def test_digest_stable():
    doc = {"b": 1, "a": [1, 2]}
    assert io.digest(doc) == io.digest({"a": [1, 2], "b": 1})


def test_streamed_hard_instance_parses():
    inst = gen_interval_instance(ThreePartitionInstance((2, 2, 2), 6))
    buf = stdio.StringIO()
    assert io.write_hard_instance(inst, buf) == 867
    doc = io.loads(buf.getvalue())
    parsed = io.instance_from_doc(doc)
    assert parsed.objects == tuple(inst.objects())
    assert doc["threshold"] == 18
    assert doc["objects"][0]["provenance"] == {"role": "element", "index": 1, "value": 2}
    assert doc["objects"][3]["provenance"]["role"] == "barrier"
