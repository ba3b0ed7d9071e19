"""Small diagram factories: braid closures, bond insertion, random samples."""

from __future__ import annotations

import random
from typing import Sequence

from .diagram import BOND, CROSSING, LINK, VERTEX, BondedDiagram, Builder, DiagramError, End, check

__all__ = ["braid_closure", "add_bond", "chord_diagram", "random_link", "random_bonded_diagram"]


def braid_closure(word: Sequence[int], strands: int | None = None) -> BondedDiagram:
    """Closure of a braid word; ``i`` is sigma_i, ``-i`` its inverse (1-based)."""
    n = strands or (max((abs(g) for g in word), default=0) + 1)
    b = Builder()
    start = [b.new_edge(LINK) for _ in range(n)]
    cur = list(start)
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < n - 1:
            raise DiagramError(f"generator {g} out of range for {n} strands")
        # slots: bottom-right, top-right, top-left, bottom-left
        x = b.new_site(CROSSING, 4, over=0 if g > 0 else 1)
        b.attach((cur[i], 1), x, 3)
        b.attach((cur[i + 1], 1), x, 0)
        tl, tr = b.new_edge(LINK), b.new_edge(LINK)
        b.attach((tl, 0), x, 2)
        b.attach((tr, 0), x, 1)
        cur[i], cur[i + 1] = tl, tr
    for p in range(n):
        if cur[p] == start[p]:
            b.delete_edge(start[p])
            b.free_loops += 1
            continue
        loc = b.where[(start[p], 1)]
        b.delete_edge(start[p])
        b.attach((cur[p], 1), *loc)
    return b.freeze()


def add_bond(d: BondedDiagram, dart_a: End, dart_b: End, *, color: int = 1, bond: str | None = None) -> BondedDiagram:
    """Attach a crossing-free bond inside the face to the left of both darts.

    Darts are departing ends of link arcs walking the same face.
    """
    for dart in (dart_a, dart_b):
        if d.edge(dart[0]).kind != LINK:
            raise DiagramError("bonds attach to link arcs only")
    if dart_a == dart_b:
        raise DiagramError("bond endpoints need two different darts")
    face = next((f for f in d.faces() if dart_a in f), [])
    if dart_b not in face:
        raise DiagramError("darts do not walk a common face")
    b = d.builder()
    if bond is None:
        k = 1
        while f"b{k}" in b.colors:
            k += 1
        bond = f"b{k}"
    b.colors[bond] = color
    seg = b.new_edge(BOND, bond)
    for idx, dart in enumerate((dart_a, dart_b)):
        v = b.new_site(VERTEX, 3)
        # far side, face side, near side
        b.subdivide(*b.where[dart], v, near_slot=2, far_slot=0)
        b.attach((seg, idx), v, 1)
    return check(b.freeze())


def chord_diagram(order: Sequence[str], *, outside: Sequence[str] = (), colors=None) -> BondedDiagram:
    """Round counterclockwise circle with bonds as chords.

    ``order`` lists bond ids at their endpoints in travel order, each id
    exactly twice. Bonds in ``outside`` run through the outer face. Chords
    on the same side must not interleave.
    """
    counts: dict[str, int] = {}
    for bond in order:
        counts[bond] = counts.get(bond, 0) + 1
    if any(c != 2 for c in counts.values()):
        raise DiagramError("every bond must appear exactly twice")
    colors = dict(colors or {})
    b = Builder()
    arcs = [b.new_edge(LINK) for _ in order]
    seg = {bond: b.new_edge(BOND, bond) for bond in counts}
    seen: dict[str, int] = {}
    for i, bond in enumerate(order):
        v = b.new_site(VERTEX, 3)
        end = (seg[bond], seen.get(bond, 0))
        seen[bond] = 1
        # in, out, inside bond / in, outside bond, out
        layout = [(arcs[i - 1], 1), (arcs[i], 0), end]
        if bond in outside:
            layout = [layout[0], end, layout[1]]
        for k, e in enumerate(layout):
            b.attach(e, v, k)
        b.colors[bond] = colors.get(bond, 1)
    return check(b.freeze())


def random_link(rng: random.Random, max_crossings: int = 8) -> BondedDiagram:
    """Random braid closure on 2-3 strands without free loops."""
    while True:
        n = rng.choice([2, 3])
        length = rng.randint(n - 1, max_crossings)
        word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)]
        d = braid_closure(word, n)
        if d.free_loops == 0 and len(d.connected_parts()) == 1:
            return d


def random_bonded_diagram(
    seed: int,
    *,
    max_crossings: int = 8,
    max_bonds: int = 3,
    colors: Sequence[int] = (1, 2),
) -> BondedDiagram:
    """Random braid closure with up to ``max_bonds`` crossing-free bonds."""
    rng = random.Random(seed)
    d = random_link(rng, max_crossings)
    for _ in range(rng.randint(1, max_bonds)):
        faces = [f for f in d.faces() if sum(d.edge(e).kind == LINK for e, _ in f) >= 2]
        face = rng.choice(faces)
        darts = [x for x in face if d.edge(x[0]).kind == LINK]
        a, c = rng.sample(darts, 2)
        d = add_bond(d, a, c, color=rng.choice(list(colors)))
    return d
