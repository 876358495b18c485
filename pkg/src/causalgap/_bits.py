"""Bitmask graph kernel for the exhaustive searches.

Nodes are integers ``0..n-1``; a graph is a tuple of parent masks. Much faster
than :mod:`causalgap.graph` for the millions of small queries the searches
make; the test suite checks the two agree.
"""

from __future__ import annotations


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def children_of(parents: tuple) -> tuple:
    ch = [0] * len(parents)
    for i, pm in enumerate(parents):
        for p in bits(pm):
            ch[p] |= 1 << i
    return tuple(ch)


def ancestors_closure(parents: tuple, mask: int) -> int:
    out = mask
    todo = mask
    while todo:
        low = todo & -todo
        todo ^= low
        new = parents[low.bit_length() - 1] & ~out
        out |= new
        todo |= new
    return out


def is_acyclic(parents: tuple) -> bool:
    remaining = (1 << len(parents)) - 1
    while remaining:
        sources = 0
        for i in bits(remaining):
            if not parents[i] & remaining:
                sources |= 1 << i
        if not sources:
            return False
        remaining &= ~sources
    return True


def reachable(parents: tuple, children: tuple, x: int, z: int) -> int:
    """Mask of nodes d-connected to ``x`` given ``z``."""
    opens = ancestors_closure(parents, z)
    up_seen = 0
    down_seen = 0
    up = x
    down = 0
    reached = 0
    while up or down:
        if up:
            low = up & -up
            up ^= low
            if up_seen & low:
                continue
            up_seen |= low
            i = low.bit_length() - 1
            if z & low:
                continue
            reached |= low
            up |= parents[i] & ~up_seen
            down |= children[i] & ~down_seen
        else:
            low = down & -down
            down ^= low
            if down_seen & low:
                continue
            down_seen |= low
            i = low.bit_length() - 1
            if not z & low:
                reached |= low
                down |= children[i] & ~down_seen
            if opens & low:
                up |= parents[i] & ~up_seen
    return reached


def d_separated(parents: tuple, children: tuple, x: int, y: int, z: int) -> bool:
    return not reachable(parents, children, x, z) & y
