"""SiGML output for recognised movement sequences.

Each recognised class becomes one ``hns_sign`` whose manual part holds a
single HamNoSys movement element. The document skeleton lives in the
template constants below so it can be extended towards the full SiGML
vocabulary without touching the class mapping.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Iterable
from xml.sax.saxutils import quoteattr

from tofsign.classify import GestureClass


class SigmlError(ValueError):
    pass


@dataclass(frozen=True)
class SignEntry:
    gloss: str
    element_name: str
    hamnosys_codepoint: int

    @property
    def hamnosys_char(self) -> str:
        return chr(self.hamnosys_codepoint)


SIGN_TABLE = {
    GestureClass.RIGHT: SignEntry("HAND_TO_RIGHT", "hammover", 0xE082),
    GestureClass.LEFT: SignEntry("HAND_TO_LEFT", "hammovel", 0xE086),
    GestureClass.UP: SignEntry("HAND_TO_UP", "hammoveu", 0xE080),
    GestureClass.DOWN: SignEntry("HAND_TO_DOWN", "hammoved", 0xE084),
}

_ELEMENT_TO_CLASS = {entry.element_name: cls for cls, entry in SIGN_TABLE.items()}

XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>\n'
EMPTY_DOCUMENT = XML_DECLARATION + "<sigml/>\n"
DOCUMENT_OPEN = XML_DECLARATION + "<sigml>\n"
DOCUMENT_CLOSE = "</sigml>\n"
SIGN_TEMPLATE = (
    "  <hns_sign gloss={gloss}>\n"
    "    <hamnosys_nonmanual/>\n"
    "    <hamnosys_manual>\n"
    "      <{element}/>\n"
    "    </hamnosys_manual>\n"
    "  </hns_sign>\n"
)


def class_to_element(c: GestureClass) -> SignEntry:
    return SIGN_TABLE[c]


def emit_sigml(classes: Iterable[GestureClass]) -> str:
    """Serialise the classes, in order, as a UTF-8 SiGML document string."""
    signs = [
        SIGN_TEMPLATE.format(gloss=quoteattr(e.gloss), element=e.element_name)
        for e in map(class_to_element, classes)
    ]
    if not signs:
        return EMPTY_DOCUMENT
    return DOCUMENT_OPEN + "".join(signs) + DOCUMENT_CLOSE


def parse_sigml(xml: str | bytes) -> list[GestureClass]:
    """Recover the class sequence from a document in the emitted shape.

    Only the four movement elements are accepted inside ``hamnosys_manual``.
    """
    if isinstance(xml, str):
        # ElementTree refuses str input that carries an encoding declaration.
        xml = xml.encode("utf-8")
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as exc:
        raise SigmlError(f"malformed SiGML XML: {exc}") from exc
    if root.tag != "sigml":
        raise SigmlError(f"root element is <{root.tag}>, expected <sigml>")
    classes = []
    for i, sign in enumerate(root):
        if sign.tag != "hns_sign":
            raise SigmlError(f"unexpected <{sign.tag}> at sign {i}")
        manual = sign.find("hamnosys_manual")
        if manual is None:
            raise SigmlError(f"sign {i} has no <hamnosys_manual>")
        moves = list(manual)
        for el in moves:
            if el.tag not in _ELEMENT_TO_CLASS:
                raise SigmlError(f"unknown movement element <{el.tag}> in sign {i}")
        if len(moves) != 1:
            raise SigmlError(f"sign {i} has {len(moves)} movement elements, expected 1")
        classes.append(_ELEMENT_TO_CLASS[moves[0].tag])
    return classes
