"""Cyclic ordering of 2D orientations: the binary and ternary algebras.

The binary algebra classifies the anticlockwise angle from one orientation
to another into four sectors: e (zero), l (left, in (0, pi)), o (opposite,
exactly pi) and r (right, in (pi, 2*pi)). The ternary algebra's atoms are
the realizable sector triples b1b2b3, where b1b2b3(x, y, z) holds iff
b1(y, x), b2(z, y) and b3(z, x); 24 of the 64 triples are realizable.

All tables here (the atom universe, the argument-permutation maps and the
composition table) are derived at import time from an angular oracle that
enumerates orientations at multiples of pi/12. That granularity contains
0, pi and interior points of both open sectors, which is enough because
realizability only depends on sector membership of pairwise angle sums
over at most four orientations.
"""

from __future__ import annotations

from itertools import permutations

STEPS = 24  # orientations as integers in units of pi/12
_HALF = STEPS // 2

CYCB_ATOMS = ("e", "l", "o", "r")

_CYCB_CONVERSE = {"e": "e", "l": "r", "o": "o", "r": "l"}


def sector(delta: int) -> str:
    """Binary atom holding between orientations separated by ``delta`` steps."""
    delta %= STEPS
    if delta == 0:
        return "e"
    if delta < _HALF:
        return "l"
    if delta == _HALF:
        return "o"
    return "r"


def atom_of(x: int, y: int, z: int) -> str:
    """Ternary atom realized by the orientation triple (x, y, z)."""
    return sector(y - x) + sector(z - y) + sector(z - x)


def derive_cyct_atoms() -> tuple[str, ...]:
    """Enumerate the realizable ternary atoms, in lexicographic order."""
    found = {atom_of(0, y, z) for y in range(STEPS) for z in range(STEPS)}
    return tuple(sorted(found))


ATOMS: tuple[str, ...] = derive_cyct_atoms()
ATOM_INDEX: dict[str, int] = {a: i for i, a in enumerate(ATOMS)}

# A relation is an int bitmask over the 24 atoms, in ATOMS order.
CyctRelation = int

EMPTY: CyctRelation = 0
FULL: CyctRelation = (1 << len(ATOMS)) - 1


def _derive_tables() -> tuple[dict, dict, list]:
    # Permutation maps: for each reordering p of the argument triple, the
    # atom on (args[p[0]], args[p[1]], args[p[2]]) is a function of the atom
    # on the original triple; derived by enumeration, uniqueness asserted.
    perm_maps: dict[tuple[int, int, int], dict[str, str]] = {
        p: {} for p in permutations(range(3))
    }
    for y in range(STEPS):
        for z in range(STEPS):
            args = (0, y, z)
            src = atom_of(*args)
            for p, table in perm_maps.items():
                tgt = atom_of(args[p[0]], args[p[1]], args[p[2]])
                prev = table.get(src)
                assert prev is None or prev == tgt, "permutation map not functional"
                table[src] = tgt

    # Composition: a1 on (x, y, u) and a2 on (y, u, z) constrain (x, y, z);
    # entries for atom pairs that disagree on the shared (y, u) pair are empty.
    comp: list[list[CyctRelation]] = [
        [EMPTY] * len(ATOMS) for _ in range(len(ATOMS))
    ]
    for y in range(STEPS):
        for u in range(STEPS):
            a1 = ATOM_INDEX[atom_of(0, y, u)]
            for z in range(STEPS):
                a2 = ATOM_INDEX[atom_of(y, u, z)]
                comp[a1][a2] |= 1 << ATOM_INDEX[atom_of(0, y, z)]

    rotate = perm_maps[(1, 2, 0)]
    return perm_maps, rotate, comp


_PERM_MAPS, _ROTATE, _COMPOSITION = _derive_tables()

# Mask-level permutation tables: _PERM_BIT[p][i] is the bit of the image of
# atom i under reordering p.
_PERM_BIT: dict[tuple[int, int, int], list[int]] = {
    p: [1 << ATOM_INDEX[table[a]] for a in ATOMS] for p, table in _PERM_MAPS.items()
}


def cyct_rotate(atom: str) -> str:
    """Atom describing (y, z, x) given the atom describing (x, y, z)."""
    try:
        return _ROTATE[atom]
    except KeyError:
        raise ValueError(f"not a realizable atom: {atom!r}") from None


def transform(rel: CyctRelation, perm: tuple[int, int, int]) -> CyctRelation:
    """Rewrite a relation for a reordering of its argument triple."""
    bits = _PERM_BIT[perm]
    out = EMPTY
    m = rel
    while m:
        low = m & (-m)
        out |= bits[low.bit_length() - 1]
        m ^= low
    return out


_ROW_CACHE: dict[tuple[int, CyctRelation], CyctRelation] = {}


def compose(rel1: CyctRelation, rel2: CyctRelation) -> CyctRelation:
    """Weak composition of relations on (x,y,u) and (y,u,z), as (x,y,z)."""
    out = EMPTY
    m = rel1
    while m:
        low = m & (-m)
        i = low.bit_length() - 1
        key = (i, rel2)
        row = _ROW_CACHE.get(key)
        if row is None:
            row = EMPTY
            table = _COMPOSITION[i]
            n = rel2
            while n:
                nlow = n & (-n)
                row |= table[nlow.bit_length() - 1]
                n ^= nlow
            _ROW_CACHE[key] = row
        out |= row
        m ^= low
    return out


def atoms(rel: CyctRelation) -> list[str]:
    return [a for i, a in enumerate(ATOMS) if rel & (1 << i)]


def relation(*members: str) -> CyctRelation:
    out = EMPTY
    for name in members:
        try:
            out |= 1 << ATOM_INDEX[name]
        except KeyError:
            raise ValueError(f"unknown CYC_t atom: {name!r}") from None
    return out


def format_relation(rel: CyctRelation) -> str:
    return "{" + ",".join(atoms(rel)) + "}"


def parse_relation(text: str) -> CyctRelation:
    """Parse a brace list such as ``{eee,lrr}``."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"malformed relation literal: {text!r}")
    body = body[1:-1].strip()
    if not body:
        return EMPTY
    return relation(*(part.strip() for part in body.split(",")))
