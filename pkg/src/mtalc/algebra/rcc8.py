"""RCC8: the region connection calculus with eight base relations.

The eight atoms (DC, EC, PO, TPP, NTPP, TPPi, NTPPi, EQ) are jointly
exhaustive and pairwise disjoint. A relation is a disjunction of atoms and
is represented as an 8-bit mask; the empty mask is the impossible relation
and the full mask the universal one. The composition table is embedded as
static data and gated by a sampling soundness test over discretized
regions (see the test suite).
"""

from __future__ import annotations

from enum import IntEnum


class Rcc8Atom(IntEnum):
    """Base relations, in canonical serialization order."""

    DC = 0
    EC = 1
    PO = 2
    TPP = 3
    NTPP = 4
    TPPi = 5
    NTPPi = 6
    EQ = 7

    @property
    def bit(self) -> int:
        return 1 << self.value


# A relation is an int bitmask over Rcc8Atom bits.
Rcc8Relation = int

EMPTY: Rcc8Relation = 0
FULL: Rcc8Relation = (1 << 8) - 1

_DC = Rcc8Atom.DC.bit
_EC = Rcc8Atom.EC.bit
_PO = Rcc8Atom.PO.bit
_TPP = Rcc8Atom.TPP.bit
_NTPP = Rcc8Atom.NTPP.bit
_TPPi = Rcc8Atom.TPPi.bit
_NTPPi = Rcc8Atom.NTPPi.bit
_EQ = Rcc8Atom.EQ.bit

_CONVERSE = {
    Rcc8Atom.DC: Rcc8Atom.DC,
    Rcc8Atom.EC: Rcc8Atom.EC,
    Rcc8Atom.PO: Rcc8Atom.PO,
    Rcc8Atom.TPP: Rcc8Atom.TPPi,
    Rcc8Atom.NTPP: Rcc8Atom.NTPPi,
    Rcc8Atom.TPPi: Rcc8Atom.TPP,
    Rcc8Atom.NTPPi: Rcc8Atom.NTPP,
    Rcc8Atom.EQ: Rcc8Atom.EQ,
}

# Composition of base relations: entry (a, b) is the set of possible
# relations of (X, Z) given a(X, Y) and b(Y, Z).
_COMPOSITION: dict[tuple[Rcc8Atom, Rcc8Atom], Rcc8Relation] = {
    (Rcc8Atom.DC, Rcc8Atom.DC): FULL,
    (Rcc8Atom.DC, Rcc8Atom.EC): _DC | _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.DC, Rcc8Atom.PO): _DC | _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.DC, Rcc8Atom.TPP): _DC | _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.DC, Rcc8Atom.NTPP): _DC | _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.DC, Rcc8Atom.TPPi): _DC,
    (Rcc8Atom.DC, Rcc8Atom.NTPPi): _DC,
    (Rcc8Atom.DC, Rcc8Atom.EQ): _DC,
    (Rcc8Atom.EC, Rcc8Atom.DC): _DC | _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.EC, Rcc8Atom.EC): _DC | _EC | _PO | _TPP | _TPPi | _EQ,
    (Rcc8Atom.EC, Rcc8Atom.PO): _DC | _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.EC, Rcc8Atom.TPP): _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.EC, Rcc8Atom.NTPP): _PO | _TPP | _NTPP,
    (Rcc8Atom.EC, Rcc8Atom.TPPi): _DC | _EC,
    (Rcc8Atom.EC, Rcc8Atom.NTPPi): _DC,
    (Rcc8Atom.EC, Rcc8Atom.EQ): _EC,
    (Rcc8Atom.PO, Rcc8Atom.DC): _DC | _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.PO, Rcc8Atom.EC): _DC | _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.PO, Rcc8Atom.PO): FULL,
    (Rcc8Atom.PO, Rcc8Atom.TPP): _PO | _TPP | _NTPP,
    (Rcc8Atom.PO, Rcc8Atom.NTPP): _PO | _TPP | _NTPP,
    (Rcc8Atom.PO, Rcc8Atom.TPPi): _DC | _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.PO, Rcc8Atom.NTPPi): _DC | _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.PO, Rcc8Atom.EQ): _PO,
    (Rcc8Atom.TPP, Rcc8Atom.DC): _DC,
    (Rcc8Atom.TPP, Rcc8Atom.EC): _DC | _EC,
    (Rcc8Atom.TPP, Rcc8Atom.PO): _DC | _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.TPP, Rcc8Atom.TPP): _TPP | _NTPP,
    (Rcc8Atom.TPP, Rcc8Atom.NTPP): _NTPP,
    (Rcc8Atom.TPP, Rcc8Atom.TPPi): _DC | _EC | _PO | _TPP | _TPPi | _EQ,
    (Rcc8Atom.TPP, Rcc8Atom.NTPPi): _DC | _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.TPP, Rcc8Atom.EQ): _TPP,
    (Rcc8Atom.NTPP, Rcc8Atom.DC): _DC,
    (Rcc8Atom.NTPP, Rcc8Atom.EC): _DC,
    (Rcc8Atom.NTPP, Rcc8Atom.PO): _DC | _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.NTPP, Rcc8Atom.TPP): _NTPP,
    (Rcc8Atom.NTPP, Rcc8Atom.NTPP): _NTPP,
    (Rcc8Atom.NTPP, Rcc8Atom.TPPi): _DC | _EC | _PO | _TPP | _NTPP,
    (Rcc8Atom.NTPP, Rcc8Atom.NTPPi): FULL,
    (Rcc8Atom.NTPP, Rcc8Atom.EQ): _NTPP,
    (Rcc8Atom.TPPi, Rcc8Atom.DC): _DC | _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.TPPi, Rcc8Atom.EC): _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.TPPi, Rcc8Atom.PO): _PO | _TPPi | _NTPPi,
    (Rcc8Atom.TPPi, Rcc8Atom.TPP): _PO | _TPP | _TPPi | _EQ,
    (Rcc8Atom.TPPi, Rcc8Atom.NTPP): _PO | _TPP | _NTPP,
    (Rcc8Atom.TPPi, Rcc8Atom.TPPi): _TPPi | _NTPPi,
    (Rcc8Atom.TPPi, Rcc8Atom.NTPPi): _NTPPi,
    (Rcc8Atom.TPPi, Rcc8Atom.EQ): _TPPi,
    (Rcc8Atom.NTPPi, Rcc8Atom.DC): _DC | _EC | _PO | _TPPi | _NTPPi,
    (Rcc8Atom.NTPPi, Rcc8Atom.EC): _PO | _TPPi | _NTPPi,
    (Rcc8Atom.NTPPi, Rcc8Atom.PO): _PO | _TPPi | _NTPPi,
    (Rcc8Atom.NTPPi, Rcc8Atom.TPP): _PO | _TPPi | _NTPPi,
    (Rcc8Atom.NTPPi, Rcc8Atom.NTPP): _PO | _TPP | _NTPP | _TPPi | _NTPPi | _EQ,
    (Rcc8Atom.NTPPi, Rcc8Atom.TPPi): _NTPPi,
    (Rcc8Atom.NTPPi, Rcc8Atom.NTPPi): _NTPPi,
    (Rcc8Atom.NTPPi, Rcc8Atom.EQ): _NTPPi,
    (Rcc8Atom.EQ, Rcc8Atom.DC): _DC,
    (Rcc8Atom.EQ, Rcc8Atom.EC): _EC,
    (Rcc8Atom.EQ, Rcc8Atom.PO): _PO,
    (Rcc8Atom.EQ, Rcc8Atom.TPP): _TPP,
    (Rcc8Atom.EQ, Rcc8Atom.NTPP): _NTPP,
    (Rcc8Atom.EQ, Rcc8Atom.TPPi): _TPPi,
    (Rcc8Atom.EQ, Rcc8Atom.NTPPi): _NTPPi,
    (Rcc8Atom.EQ, Rcc8Atom.EQ): _EQ,
}

# Row closure: _ROW[a][mask] is the union of _COMPOSITION[(a, b)] over the
# atoms b of mask, precomputed so relation-level composition is a few ORs.
_ROW: list[list[Rcc8Relation]] = []
for _a in Rcc8Atom:
    _row = [EMPTY] * (FULL + 1)
    for _m in range(1, FULL + 1):
        _low = _m & (-_m)
        _row[_m] = _row[_m ^ _low] | _COMPOSITION[(_a, Rcc8Atom(_low.bit_length() - 1))]
    _ROW.append(_row)

_CONVERSE_MASK: list[Rcc8Relation] = [EMPTY] * (FULL + 1)
for _m in range(1, FULL + 1):
    _low = _m & (-_m)
    _CONVERSE_MASK[_m] = _CONVERSE_MASK[_m ^ _low] | _CONVERSE[Rcc8Atom(_low.bit_length() - 1)].bit


def converse(rel: Rcc8Relation) -> Rcc8Relation:
    """Atomwise converse; an involution on relations."""
    return _CONVERSE_MASK[rel]


def compose(rel1: Rcc8Relation, rel2: Rcc8Relation) -> Rcc8Relation:
    """Weak composition: union of table entries over all atom pairs."""
    out = EMPTY
    m = rel1
    while m:
        low = m & (-m)
        out |= _ROW[low.bit_length() - 1][rel2]
        m ^= low
    return out


def atoms(rel: Rcc8Relation) -> list[Rcc8Atom]:
    return [a for a in Rcc8Atom if rel & a.bit]


def relation(*members: Rcc8Atom | str) -> Rcc8Relation:
    """Build a relation mask from atoms or atom names."""
    out = EMPTY
    for m in members:
        out |= (Rcc8Atom[m] if isinstance(m, str) else m).bit
    return out


def format_relation(rel: Rcc8Relation) -> str:
    return "{" + ",".join(a.name for a in atoms(rel)) + "}"


def parse_relation(text: str) -> Rcc8Relation:
    """Parse a brace list such as ``{TPP,NTPP}``."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"malformed relation literal: {text!r}")
    body = body[1:-1].strip()
    if not body:
        return EMPTY
    out = EMPTY
    for part in body.split(","):
        name = part.strip()
        try:
            out |= Rcc8Atom[name].bit
        except KeyError:
            raise ValueError(f"unknown RCC8 atom: {name!r}") from None
    return out
