import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tofsign.classify import CLASS_ORDER, GestureClass
from tofsign.sigml import SigmlError, class_to_element, emit_sigml, parse_sigml

R, L, U, D = CLASS_ORDER


@pytest.mark.parametrize(
    "cls, element, codepoint",
    [(R, "hammover", 0xE082), (L, "hammovel", 0xE086), (U, "hammoveu", 0xE080), (D, "hammoved", 0xE084)],
)
def test_table(cls, element, codepoint):
    e = class_to_element(cls)
    assert e.element_name == element
    assert e.hamnosys_codepoint == codepoint
    assert e.hamnosys_char == chr(codepoint)


def test_mapping_is_bijective():
    entries = [class_to_element(c) for c in GestureClass]
    assert len({e.element_name for e in entries}) == 4
    assert len({e.hamnosys_codepoint for e in entries}) == 4
    assert len({e.gloss for e in entries}) == 4


def test_single_right():
    doc = emit_sigml([R])
    root = ET.fromstring(doc.encode())
    assert root.tag == "sigml"
    (sign,) = root
    assert sign.tag == "hns_sign" and sign.get("gloss") == "HAND_TO_RIGHT"
    assert [c.tag for c in sign] == ["hamnosys_nonmanual", "hamnosys_manual"]
    assert [c.tag for c in sign.find("hamnosys_manual")] == ["hammover"]
    assert "<hammover/>" in doc


def test_empty_document():
    doc = emit_sigml([])
    assert doc.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert "<sigml/>" in doc
    assert ET.fromstring(doc.encode()).tag == "sigml"
    assert parse_sigml(doc) == []


def test_order_preserved():
    seq = [R, U, L, D]
    root = ET.fromstring(emit_sigml(seq).encode())
    assert [s.get("gloss") for s in root] == ["HAND_TO_RIGHT", "HAND_TO_UP", "HAND_TO_LEFT", "HAND_TO_DOWN"]
    assert parse_sigml(emit_sigml(seq)) == seq


def test_round_trip_down_down():
    assert parse_sigml(emit_sigml([D, D])) == [D, D]


def test_whitespace_insensitive():
    compact = "<sigml><hns_sign gloss='x'><hamnosys_nonmanual/><hamnosys_manual><hammoveu/></hamnosys_manual></hns_sign></sigml>"
    assert parse_sigml(compact) == [U]
    assert parse_sigml(emit_sigml([U]).replace("\n", "\n\n   ")) == [U]
    assert parse_sigml(emit_sigml([U]).encode("utf-8")) == [U]


@pytest.mark.parametrize(
    "doc, match",
    [
        ("<sigml><hns_sign><hamnosys_manual><hammovex/></hamnosys_manual></hns_sign></sigml>", "unknown"),
        ("<sigml><hns_sign><hamnosys_manual><hammove1/></hamnosys_manual></hns_sign></sigml>", "unknown"),
        ("<sigml><hns_sign>", "malformed"),
        ("not xml", "malformed"),
        ("<sign/>", "root"),
        ("<sigml><other/></sigml>", "unexpected"),
        ("<sigml><hns_sign/></sigml>", "no <hamnosys_manual>"),
        ("<sigml><hns_sign><hamnosys_manual/></hns_sign></sigml>", "0 movement"),
        (
            "<sigml><hns_sign><hamnosys_manual><hammover/><hammoved/></hamnosys_manual></hns_sign></sigml>",
            "2 movement",
        ),
    ],
)
def test_parse_errors(doc, match):
    with pytest.raises(SigmlError, match=match):
        parse_sigml(doc)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(CLASS_ORDER), max_size=1000))
def test_round_trip_property(seq):
    doc = emit_sigml(seq)
    assert parse_sigml(doc) == seq
    assert emit_sigml(list(seq)) == doc
    root = ET.fromstring(doc.encode())
    names = {el.tag for sign in root for el in sign.find("hamnosys_manual")}
    assert names <= {"hammover", "hammovel", "hammoveu", "hammoved"}
