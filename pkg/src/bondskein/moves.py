"""Reidemeister-type rewriting of bonded diagrams and bond isolation.

Every move is addressed by a site (crossing, vertex, edge end or face
side) and checked against its local pattern before rewriting. Forward and
backward directions are inverse to each other at the same site, up to
renaming of edge and site ids.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .diagram import (
    BOND,
    CROSSING,
    LINK,
    VERTEX,
    BondedDiagram,
    DiagramError,
    End,
    fmt_end,
    natural_key,
)

__all__ = [
    "MOVES",
    "MoveError",
    "MoveSpec",
    "apply_move",
    "apply_move_traced",
    "apply_script",
    "inverse",
    "parse_move",
    "parse_script",
    "isolate_bond",
    "isolate_all",
    "simplify",
    "random_isotopy",
    "find_r1",
    "find_r2",
    "r1_add",
    "r1_remove",
    "r2_add",
    "r2_remove",
    "r3",
    "r3_applies",
    "vertex_slide_out",
    "vertex_slide_in",
    "vertex_twist",
    "find_vertex_twist",
    "vertex_untwist",
    "rv_twist",
    "rv_untwist",
]


class MoveError(DiagramError):
    """The move pattern does not match at the requested site."""


# -- R1 ---------------------------------------------------------------------


def find_r1(d: BondedDiagram, *, link_only: bool = False) -> Iterator[tuple[str, int]]:
    """Kinks as ``(crossing, slot)``: slots ``k`` and ``k+1`` joined by one edge."""
    for s in d.crossings():
        if link_only and any(d.edge(e).kind != LINK for e, _ in s.ends):
            continue
        for k in range(4):
            e, i = s.ends[k]
            if d.where((e, 1 - i)) == (s.id, (k + 1) % 4):
                yield s.id, k
                break


def r1_remove(d: BondedDiagram, x: str, k: int | None = None) -> BondedDiagram:
    s = d.site(x)
    if s.kind != CROSSING:
        raise MoveError(f"I backward: {x} is not a crossing")
    if k is None:
        hits = [kk for (sid, kk) in find_r1(d) if sid == x]
        if not hits:
            raise MoveError(f"I backward: crossing {x} is not a kink")
        k = hits[0]
    e, i = s.ends[k % 4]
    if d.where((e, 1 - i)) != (x, (k + 1) % 4):
        raise MoveError(f"I backward: slots {k} and {k + 1} of {x} are not joined by one edge")
    b = d.builder()
    b.delete_edge(e)
    b.join((x, k + 2), (x, k + 3))
    b.remove_site(x)
    return b.freeze()


def r1_add(d: BondedDiagram, edge: str, *, side: int = 1, over_first: bool = True) -> BondedDiagram:
    """Put a kink on ``edge``.

    ``side`` (+1/-1) picks the face the loop is drawn into; ``over_first``
    says whether the strand, travelling from end 0 to end 1 of ``edge``,
    passes the new crossing first on the over-strand.
    """
    if edge not in d.edges:
        raise MoveError(f"I forward: unknown edge {edge}")
    b = d.builder()
    ed = b.edges[edge]
    loc1 = b.where[(edge, 1)]
    x = b.new_site(CROSSING, 4, over=0)
    loop = b.new_edge(ed.kind, ed.bond)
    tail = b.new_edge(ed.kind, ed.bond)
    # strand: edge.0 ... -> x(in at slot a) -> loop -> x(in at slot c) -> tail -> old head location
    if side > 0:
        a_in, a_out, c_in, c_out = 0, 2, 3, 1
    else:
        a_in, a_out, c_in, c_out = 0, 2, 1, 3
    b.attach((edge, 1), x, a_in)
    b.attach((tail, 1), *loc1)
    b.attach((loop, 0), x, a_out)
    b.attach((loop, 1), x, c_in)
    b.attach((tail, 0), x, c_out)
    b.over[x] = a_in if over_first else c_in
    return b.freeze()


# -- R2 ---------------------------------------------------------------------


def find_r2(d: BondedDiagram, *, link_only: bool = False) -> Iterator[tuple[str, int, str, int]]:
    """Removable bigons ``(x, a, y, b)``.

    One edge joins slot ``a`` of ``x`` to slot ``b`` of ``y``, a second joins
    ``a+1`` to ``b-1``, and the strand along the first edge is over at both
    crossings or under at both.
    """
    seen = set()
    for s in d.crossings():
        x = s.id
        for a in range(4):
            e, i = s.ends[a]
            loc = d.where((e, 1 - i))
            y, bb = loc
            if y == x or d.site(y).kind != CROSSING:
                continue
            f, fi = s.ends[(a + 1) % 4]
            if f == e:
                continue
            if d.where((f, 1 - fi)) != (y, (bb - 1) % 4):
                continue
            if d.is_over(x, a) != d.is_over(y, bb):
                continue
            if link_only and any(
                d.edge(ee).kind != LINK for sid in (x, y) for ee, _ in d.site(sid).ends
            ):
                continue
            key = frozenset((e, f))
            if key in seen:
                continue
            seen.add(key)
            yield x, a, y, bb


def r2_remove(d: BondedDiagram, x: str, a: int, y: str, b_slot: int) -> BondedDiagram:
    sx, sy = d.site(x), d.site(y)
    if sx.kind != CROSSING or sy.kind != CROSSING or x == y:
        raise MoveError("II backward: needs two distinct crossings")
    e, i = sx.ends[a % 4]
    f, fi = sx.ends[(a + 1) % 4]
    if d.where((e, 1 - i)) != (y, b_slot % 4) or d.where((f, 1 - fi)) != (y, (b_slot - 1) % 4):
        raise MoveError(f"II backward: {x} and {y} do not bound a bigon at the given slots")
    if d.is_over(x, a) != d.is_over(y, b_slot):
        raise MoveError("II backward: the bigon strands alternate over/under")
    bld = d.builder()
    bld.delete_edge(e)
    bld.delete_edge(f)
    bld.join((x, a + 2), (y, b_slot + 2))
    bld.join((x, a + 3), (y, b_slot + 1))
    bld.remove_site(x)
    bld.remove_site(y)
    return bld.freeze()


def simplify(d: BondedDiagram) -> BondedDiagram:
    """Greedily undo kinks and removable bigons on link-only sites."""
    while True:
        hit = next(find_r1(d, link_only=True), None)
        if hit is not None:
            d = r1_remove(d, *hit)
            continue
        hit2 = next(find_r2(d, link_only=True), None)
        if hit2 is not None:
            d = r2_remove(d, *hit2)
            continue
        return d


def r2_add(d: BondedDiagram, dart_a: End, dart_b: End, *, b_over: bool = True) -> tuple[BondedDiagram, str, str]:
    """Push edge ``b`` across edge ``a`` through their common face.

    A dart is a departing edge end; both darts must walk the same face.
    Returns the new diagram and the two crossings ``(x1, x2)`` in the order
    they are met along ``a``.
    """
    if dart_a == dart_b:
        raise MoveError("II forward: the two darts must differ")
    if dart_a not in d._where or dart_b not in d._where:
        raise MoveError("II forward: unknown edge end")
    face = next((f for f in d.faces() if dart_a in f), None)
    if face is None or dart_b not in face:
        raise MoveError(f"II forward: {fmt_end(dart_a)} and {fmt_end(dart_b)} do not bound a common face")
    b = d.builder()
    over = 1 if b_over else 0
    x1 = b.new_site(CROSSING, 4, over=over)
    x2 = b.new_site(CROSSING, 4, over=over)
    b.subdivide(*b.where[dart_a], x1, near_slot=2, far_slot=0)
    b.subdivide(x1, 0, x2, near_slot=2, far_slot=0)
    b.subdivide(*b.where[dart_b], x2, near_slot=1, far_slot=3)
    b.subdivide(x2, 3, x1, near_slot=3, far_slot=1)
    return b.freeze(), x1, x2


# -- R3 ---------------------------------------------------------------------


def _r3_corners(d: BondedDiagram, z: str, k: int):
    """Triangle met by walking into ``z`` at slot ``k``: ``(x, ix, y, iy)`` or ``None``."""
    if d.site(z).kind != CROSSING:
        return None
    e, i = d.slot_end(z, k)
    x, xk = d.where((e, 1 - i))
    ix = (xk + 1) % 4
    e2, i2 = d.slot_end(z, k - 1)
    y, iy = d.where((e2, 1 - i2))
    e3, i3 = d.slot_end(y, iy - 1)
    if d.where((e3, 1 - i3)) != (x, ix):
        return None
    if len({x, y, z}) != 3 or any(d.site(s).kind != CROSSING for s in (x, y)):
        return None
    return x, ix, y, iy


def r3_applies(d: BondedDiagram, z: str, k: int) -> bool:
    c = _r3_corners(d, z, k)
    if c is None:
        return False
    x, ix, y, iy = c
    return d.is_over(x, ix) == d.is_over(y, iy - 1)


def r3(d: BondedDiagram, z: str, k: int) -> BondedDiagram:
    """Slide the triangle side opposite ``z`` across ``z``.

    The triangle is the face entered at ``z`` through slot ``k``. The side
    opposite ``z`` must pass over both other sides or under both. Site ids
    are kept; walking into ``z`` at slot 3 afterwards undoes the move.
    """
    c = _r3_corners(d, z, k)
    if c is None:
        raise MoveError(f"III: slot {k} of {z} does not enter a triangle of three crossings")
    x, ix, y, iy = c
    a_over_x = d.is_over(x, ix)
    if a_over_x != d.is_over(y, iy - 1):
        raise MoveError("III: the moving strand is over at one corner and under at the other")
    b_over_z = d.is_over(z, k)
    sx, sy, sz = (d.site(s).ends for s in (x, y, z))
    a_w, b_nw, a_tri_x, b_tri_x = sx[(ix + 2) % 4], sx[(ix + 1) % 4], sx[ix], sx[(ix - 1) % 4]
    a_e, c_ne, c_tri_y, a_tri_y = sy[(iy + 1) % 4], sy[(iy + 2) % 4], sy[iy], sy[(iy - 1) % 4]
    c_sw, b_se, b_tri_z, c_tri_z = sz[(k + 1) % 4], sz[(k + 2) % 4], sz[k], sz[(k - 1) % 4]
    bld = d.builder()
    for end in (*sx, *sy, *sz):
        bld.detach(end)
    layout = {
        x: (a_e, b_tri_z, a_tri_y, b_se),
        y: (a_tri_x, c_tri_z, a_w, c_sw),
        z: (c_ne, b_nw, c_tri_y, b_tri_x),
    }
    for sid, ends in layout.items():
        for slot, end in enumerate(ends):
            bld.attach(end, sid, slot)
    bld.over[x] = 0 if a_over_x else 1
    bld.over[y] = 0 if a_over_x else 1
    bld.over[z] = 1 if b_over_z else 0
    return bld.freeze()


# -- IV / IV' : sliding a strand past a bond vertex --------------------------


def vertex_slide_out(d: BondedDiagram, v: str, j: int) -> BondedDiagram:
    """Slide the crossing next to vertex ``v`` on its slot-``j`` edge past ``v``.

    The crossing strand stops crossing the slot-``j`` edge and crosses the
    two other edges at ``v`` instead, keeping its over/under status.
    """
    sv = d.site(v)
    if sv.kind != VERTEX:
        raise MoveError(f"slide: {v} is not a bond vertex")
    e, i = sv.ends[j % 3]
    x, k = d.where((e, 1 - i))
    if d.site(x).kind != CROSSING:
        raise MoveError(f"slide: edge {e} at slot {j} of {v} does not end at a crossing")
    s_over = d.is_over(x, k + 1)
    b = d.builder()
    e1 = b.end_at(x, k + 1)
    e2 = b.end_at(x, k + 3)
    ya = b.new_site(CROSSING, 4, over=1 if s_over else 0)
    yc = b.new_site(CROSSING, 4, over=1 if s_over else 0)
    b.subdivide(v, j - 1, ya, near_slot=0, far_slot=2)
    b.subdivide(v, j + 1, yc, near_slot=0, far_slot=2)
    s_edge = b.edges[e1[0]]
    g = b.new_edge(s_edge.kind, s_edge.bond)
    b.attach(e1, ya, 3)
    b.attach(e2, yc, 1)
    if e1[1] == 1:
        b.attach((g, 0), ya, 1)
        b.attach((g, 1), yc, 3)
    else:
        b.attach((g, 1), ya, 1)
        b.attach((g, 0), yc, 3)
    b.join((x, k), (x, k + 2))
    b.remove_site(x)
    return b.freeze()


def vertex_slide_in(d: BondedDiagram, v: str, j: int) -> BondedDiagram:
    """Inverse of :func:`vertex_slide_out` at the same vertex and slot."""
    sv = d.site(v)
    if sv.kind != VERTEX:
        raise MoveError(f"slide: {v} is not a bond vertex")
    ea, ia = sv.ends[(j - 1) % 3]
    ec, ic = sv.ends[(j + 1) % 3]
    ya, p = d.where((ea, 1 - ia))
    yc, q = d.where((ec, 1 - ic))
    if ya == yc or d.site(ya).kind != CROSSING or d.site(yc).kind != CROSSING:
        raise MoveError(f"slide back: edges beside slot {j} of {v} do not end at two crossings")
    g, gi = d.slot_end(ya, p + 1)
    if d.where((g, 1 - gi)) != (yc, (q + 3) % 4):
        raise MoveError(f"slide back: no strand joins {ya} and {yc} around {v}")
    if d.is_over(ya, p + 1) != d.is_over(yc, q + 3):
        raise MoveError("slide back: the strand changes over/under between the two crossings")
    s_over = d.is_over(ya, p + 1)
    b = d.builder()
    x = b.new_site(CROSSING, 4, over=1 if s_over else 0)
    b.subdivide(v, j, x, near_slot=0, far_slot=2)
    b.attach(b.end_at(ya, p + 3), x, 1)
    b.attach(b.end_at(yc, q + 1), x, 3)
    b.delete_edge(g)
    b.join((ya, p), (ya, p + 2))
    b.join((yc, q), (yc, q + 2))
    b.remove_site(ya)
    b.remove_site(yc)
    return b.freeze()


def _bond_slot(d: BondedDiagram, v: str) -> int:
    for k, (e, _) in enumerate(d.site(v).ends):
        if d.edge(e).kind == BOND:
            return k
    raise MoveError(f"{v} has no bond end")


def isolate_bond(d: BondedDiagram, bond: str) -> BondedDiagram:
    """Make ``bond`` crossing-free by sliding its crossings past one endpoint.

    Crossings are cleared nearest-first from the lower-id endpoint vertex;
    each slide hands the crossing strand over to the two link arcs there.
    """
    limit = 4 * (d.n_crossings + 1) ** 2 + 16
    for _ in range(limit):
        _, sites = d.bond_chain(bond)
        if len(sites) == 2:
            return d
        v = sites[0]
        d = vertex_slide_out(d, v, _bond_slot(d, v))
    raise MoveError(f"isolation of bond {bond} did not terminate")


def isolate_all(d: BondedDiagram) -> BondedDiagram:
    for bond in d.bond_ids():
        d = isolate_bond(d, bond)
    return d


# -- V / RV : half twists at a bond vertex -----------------------------------


def vertex_twist(d: BondedDiagram, v: str, k: int, *, over_first: bool = True) -> BondedDiagram:
    """Swap the ends at slots ``k`` and ``k+1`` of ``v`` through one new crossing.

    ``over_first`` puts the strand that started at slot ``k`` on top.
    """
    if d.site(v).kind != VERTEX:
        raise MoveError(f"twist: {v} is not a bond vertex")
    b = d.builder()
    ek = b.end_at(v, k)
    ek1 = b.end_at(v, k + 1)
    x = b.new_site(CROSSING, 4, over=0 if over_first else 1)
    gk = b.new_edge(b.edges[ek[0]].kind, b.edges[ek[0]].bond)
    gk1 = b.new_edge(b.edges[ek1[0]].kind, b.edges[ek1[0]].bond)
    b.attach(ek, x, 0)
    b.attach(ek1, x, 1)
    b.attach((gk, ek[1]), v, k + 1)
    b.attach((gk, 1 - ek[1]), x, 2)
    b.attach((gk1, ek1[1]), v, k)
    b.attach((gk1, 1 - ek1[1]), x, 3)
    return b.freeze()


def find_vertex_twist(d: BondedDiagram, v: str, k: int) -> tuple[str, int] | None:
    """``(x, a)`` when slots ``k+1`` and ``k`` of ``v`` run to slots ``a`` and ``a+1`` of one crossing."""
    s = d.site(v)
    if s.kind != VERTEX:
        return None
    e1, i1 = s.ends[(k + 1) % 3]
    e0, i0 = s.ends[k % 3]
    if e1 == e0:
        return None
    x, a = d.where((e1, 1 - i1))
    if d.site(x).kind != CROSSING or d.where((e0, 1 - i0)) != (x, (a + 1) % 4):
        return None
    far_a = d.slot_end(x, a + 2)
    far_b = d.slot_end(x, a + 3)
    if far_a[0] in (e0, e1) or far_b[0] in (e0, e1):
        return None
    return x, a


def vertex_untwist(d: BondedDiagram, v: str, k: int) -> BondedDiagram:
    """Inverse of :func:`vertex_twist` at the same vertex and slot."""
    hit = find_vertex_twist(d, v, k)
    if hit is None:
        raise MoveError(f"untwist: slots {k} and {k + 1} of {v} do not meet at one adjacent crossing")
    x, a = hit
    b = d.builder()
    near_hi = b.end_at(v, k + 1)[0]
    near_lo = b.end_at(v, k)[0]
    far_hi = b.end_at(x, a + 2)
    far_lo = b.end_at(x, a + 3)
    b.delete_edge(near_hi)
    b.delete_edge(near_lo)
    b.attach(far_hi, v, k)
    b.attach(far_lo, v, k + 1)
    b.remove_site(x)
    return b.freeze()


def rv_twist(d: BondedDiagram, bond: str, *, hand: int = 1) -> BondedDiagram:
    """Turn ``bond`` half a revolution about its own axis.

    Both endpoint vertices get their two link ends swapped through a new
    crossing, with opposite over/under choices at the two ends.
    """
    (v1, j1), (v2, j2) = _endpoints(d, bond)
    d = vertex_twist(d, v1, j1 + 1, over_first=hand > 0)
    return vertex_twist(d, v2, j2 + 1, over_first=hand < 0)


def rv_untwist(d: BondedDiagram, bond: str) -> BondedDiagram:
    (v1, j1), (v2, j2) = _endpoints(d, bond)
    h1 = find_vertex_twist(d, v1, j1 + 1)
    h2 = find_vertex_twist(d, v2, j2 + 1)
    if h1 is None or h2 is None:
        raise MoveError(f"RV backward: bond {bond} is not twisted at both ends")
    # opposite over/under at the two ends, measured from the strand at the higher slot
    if d.is_over(h1[0], h1[1]) == d.is_over(h2[0], h2[1]):
        raise MoveError(f"RV backward: the twists at the ends of {bond} have the same handedness")
    d = vertex_untwist(d, v1, j1 + 1)
    return vertex_untwist(d, v2, j2 + 1)


def _endpoints(d: BondedDiagram, bond: str) -> tuple[tuple[str, int], tuple[str, int]]:
    if bond not in d.colors:
        raise MoveError(f"unknown bond {bond!r}")
    _, sites = d.bond_chain(bond)
    return (sites[0], _bond_slot(d, sites[0])), (sites[-1], _bond_slot(d, sites[-1]))


# -- site-addressed moves -------------------------------------------------------

MOVES = ("I", "II", "III", "IV", "IVp", "V", "RV")


@dataclass(frozen=True)
class MoveSpec:
    """One move bound to a site given by edge, crossing, vertex or bond ids.

    ============  =========================  ==============================
    move          forward site               backward site
    ============  =========================  ==============================
    I             edge                       crossing
    II            dart dart (``e.i``)        crossing crossing
    III           crossing crossing          crossing crossing
    IV, IVp       vertex crossing            vertex edge
    V             vertex edge edge           vertex crossing
    RV            bond                       bond
    ============  =========================  ==============================

    Flags: ``side`` (+1/-1) and ``over`` (first/second) for I, ``over``
    (a/b) for II, ``over`` (first/second) for V, ``hand`` (+1/-1) for RV.
    """

    move: str
    direction: str
    site: tuple[str, ...]
    flags: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        if self.move not in MOVES:
            raise MoveError(f"unknown move {self.move!r}")
        if self.direction not in ("forward", "backward"):
            raise MoveError(f"unknown direction {self.direction!r}")
        object.__setattr__(self, "site", tuple(str(s) for s in self.site))
        object.__setattr__(self, "flags", tuple(sorted((str(k), str(v)) for k, v in dict(self.flags).items())))

    def flag(self, key: str, default: str) -> str:
        return dict(self.flags).get(key, default)

    def __str__(self) -> str:
        tail = "".join(f" {k}={v}" for k, v in self.flags)
        return f"{self.move} {self.direction} at {' '.join(self.site)}{tail}"


def parse_move(line: str) -> MoveSpec:
    """Parse ``<move> <forward|backward> at <ids...> [key=value ...]``."""
    toks = line.split()
    if len(toks) < 4 or toks[2] != "at":
        raise MoveError(f"bad move line {line.strip()!r}")
    site = [t for t in toks[3:] if "=" not in t]
    flags = dict(t.split("=", 1) for t in toks[3:] if "=" in t)
    return MoveSpec(toks[0], toks[1], tuple(site), tuple(flags.items()))


def parse_script(text: str) -> list[MoveSpec]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_move(line))
    return out


def _need(m: MoveSpec, n: int) -> tuple[str, ...]:
    if len(m.site) != n:
        raise MoveError(f"{m.move} {m.direction} takes {n} site ids, got {len(m.site)}")
    return m.site


def _dart(d: BondedDiagram, text: str) -> End:
    e, _, i = text.rpartition(".")
    if not e or i not in ("0", "1") or e not in d.edges:
        raise MoveError(f"bad dart {text!r}; expected <edge>.<0|1>")
    return e, int(i)


def _slots_of(d: BondedDiagram, sid: str, edge: str) -> list[int]:
    if sid not in d.sites:
        raise MoveError(f"unknown site {sid!r}")
    return [k for k, (e, _) in enumerate(d.site(sid).ends) if e == edge]


def _new_sites(before: BondedDiagram, after: BondedDiagram) -> list[str]:
    return sorted(set(after.sites) - set(before.sites), key=natural_key)


def _pm(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise MoveError(f"expected +1 or -1, got {text!r}")


def apply_move_traced(d: BondedDiagram, m: MoveSpec) -> tuple[BondedDiagram, MoveSpec | None]:
    """Apply ``m`` and also return the move that undoes it.

    The inverse is ``None`` when the move closed a strand into a free loop
    or left no way to address the undoing move by sites.
    """
    fwd = m.direction == "forward"
    mv = m.move
    if mv == "I" and fwd:
        (edge,) = _need(m, 1)
        over_first = m.flag("over", "first") == "first"
        out = r1_add(d, edge, side=_pm(m.flag("side", "+1")), over_first=over_first)
        (x,) = _new_sites(d, out)
        return out, MoveSpec("I", "backward", (x,))
    if mv == "I":
        (x,) = _need(m, 1)
        hits = [k for sid, k in find_r1(d) if sid == x] if x in d.sites else []
        if not hits:
            raise MoveError(f"I backward: {x} is not a kink crossing")
        k = hits[0]
        ea, ia = d.slot_end(x, k + 2)
        enter = (k + 2) % 4 if ia == 1 else (k + 3) % 4
        side = "+1" if enter == (k + 2) % 4 else "-1"
        over = "first" if d.is_over(x, enter) else "second"
        out = r1_remove(d, x, k)
        if ea not in out.edges:
            return out, None
        return out, MoveSpec("I", "forward", (ea,), (("side", side), ("over", over)))
    if mv == "II" and fwd:
        a, b = _need(m, 2)
        out, x1, x2 = r2_add(d, _dart(d, a), _dart(d, b), b_over=m.flag("over", "b") == "b")
        return out, MoveSpec("II", "backward", (x1, x2))
    if mv == "II":
        x, y = _need(m, 2)
        for hx, a, hy, bb in find_r2(d):
            if (hx, hy) in ((x, y), (y, x)):
                break
        else:
            raise MoveError(f"II backward: {x} and {y} do not bound a removable bigon")
        eb, ib = d.slot_end(hx, a + 2)
        ea, ia = d.slot_end(hx, a + 3)
        over = "b" if d.is_over(hx, a) else "a"
        out = r2_remove(d, hx, a, hy, bb)
        if ea not in out.edges or eb not in out.edges:
            return out, None
        if (ea, 1 - ia) == (eb, ib):
            # the bigon swallowed a kink; one dart cannot name both strands
            return out, None
        return out, MoveSpec("II", "forward", (fmt_end((ea, 1 - ia)), fmt_end((eb, ib))), (("over", over),))
    if mv == "III":
        z, x = _need(m, 2)
        if z not in d.sites or d.site(z).kind != CROSSING:
            raise MoveError(f"III: {z} is not a crossing")
        slots = [int(m.flag("slot", "0"))] if "slot" in dict(m.flags) else range(4)
        for k in slots:
            c = _r3_corners(d, z, k)
            if c is not None and c[0] == x and r3_applies(d, z, k):
                back = "backward" if fwd else "forward"
                return r3(d, z, k), MoveSpec("III", back, (z, x), (("slot", "3"),))
        raise MoveError(f"III: no movable triangle at {z} entered from {x}")
    if mv in ("IV", "IVp") and fwd:
        v, x = _need(m, 2)
        for j in range(3) if v in d.sites and d.site(v).kind == VERTEX else ():
            e, i = d.slot_end(v, j)
            if (d.edge(e).kind == BOND) != (mv == "IV"):
                continue
            if d.where((e, 1 - i))[0] == x:
                out = vertex_slide_out(d, v, j)
                return out, MoveSpec(mv, "backward", (v, d.slot_end(v, j)[0]))
        raise MoveError(f"{mv} forward: no {'bond' if mv == 'IV' else 'link'} edge of {v} ends at {x}")
    if mv in ("IV", "IVp"):
        v, e = _need(m, 2)
        for j in _slots_of(d, v, e):
            if (d.edge(e).kind == BOND) != (mv == "IV"):
                continue
            out = vertex_slide_in(d, v, j)
            (x,) = _new_sites(d, out)
            return out, MoveSpec(mv, "forward", (v, x))
        raise MoveError(f"{mv} backward: edge {e} is not a suitable edge of {v}")
    if mv == "V" and fwd:
        v, e0, e1 = _need(m, 3)
        for k in _slots_of(d, v, e0):
            if d.slot_end(v, k + 1)[0] != e1:
                continue
            if BOND not in (d.edge(e0).kind, d.edge(e1).kind):
                raise MoveError("V forward: one of the twisted ends must be the bond")
            out = vertex_twist(d, v, k, over_first=m.flag("over", "first") == "first")
            (x,) = _new_sites(d, out)
            return out, MoveSpec("V", "backward", (v, x))
        raise MoveError(f"V forward: {e0} and {e1} are not counterclockwise neighbours at {v}")
    if mv == "V":
        v, x = _need(m, 2)
        for k in range(3) if v in d.sites and d.site(v).kind == VERTEX else ():
            hit = find_vertex_twist(d, v, k)
            if hit is None or hit[0] != x:
                continue
            over = "first" if d.is_over(x, hit[1] + 2) else "second"
            out = vertex_untwist(d, v, k)
            return out, MoveSpec("V", "forward", (v, out.slot_end(v, k)[0], out.slot_end(v, k + 1)[0]), (("over", over),))
        raise MoveError(f"V backward: {x} is not a twist crossing at {v}")
    if mv == "RV" and fwd:
        (bond,) = _need(m, 1)
        return rv_twist(d, bond, hand=_pm(m.flag("hand", "+1"))), MoveSpec("RV", "backward", (bond,))
    (bond,) = _need(m, 1)
    (v1, j1), _ = _endpoints(d, bond)
    x, a = find_vertex_twist(d, v1, j1 + 1) or (None, 0)
    hand = "+1" if x is not None and d.is_over(x, a + 2) else "-1"
    return rv_untwist(d, bond), MoveSpec("RV", "forward", (bond,), (("hand", hand),))


def apply_move(d: BondedDiagram, m: MoveSpec) -> BondedDiagram:
    return apply_move_traced(d, m)[0]


def inverse(d: BondedDiagram, m: MoveSpec) -> MoveSpec | None:
    """The move undoing ``m`` on ``d`` (site ids refer to the rewritten diagram)."""
    return apply_move_traced(d, m)[1]


def apply_script(d: BondedDiagram, moves: Iterable[MoveSpec]) -> BondedDiagram:
    for i, m in enumerate(moves, start=1):
        try:
            d = apply_move(d, m)
        except MoveError as exc:
            raise MoveError(f"move {i} ({m}): {exc}") from None
    return d


# -- random isotopy -------------------------------------------------------------

_GROWTH = {"I": 1, "II": 2, "IV": 1, "IVp": 1, "V": 1, "RV": 2}


def _sites_for(d: BondedDiagram, mv: str, fwd: bool, rng: random.Random, rigid: bool) -> list[MoveSpec]:
    out: list[MoveSpec] = []
    if mv == "I" and fwd:
        # bonds are framed in the rigid category: no kinks on bond arcs
        pool = sorted((e for e in d.edges if not rigid or d.edge(e).kind == LINK), key=natural_key)
        e = rng.choice(pool) if pool else None
        if e is not None:
            flags = (("side", rng.choice(["+1", "-1"])), ("over", rng.choice(["first", "second"])))
            out.append(MoveSpec("I", "forward", (e,), flags))
    elif mv == "I":
        out = [MoveSpec("I", "backward", (x,)) for x, _ in find_r1(d, link_only=rigid)]
    elif mv == "II" and fwd:
        faces = [f for f in d.faces() if len({e for e, _ in f}) > 1]
        if faces:
            face = rng.choice(faces)
            a, b = rng.sample(face, 2)
            if a[0] != b[0]:
                flags = (("over", rng.choice(["a", "b"])),)
                out.append(MoveSpec("II", "forward", (fmt_end(a), fmt_end(b)), flags))
    elif mv == "II":
        out = [MoveSpec("II", "backward", (x, y)) for x, _, y, _ in find_r2(d)]
    elif mv == "III":
        for s in d.crossings():
            for k in range(4):
                if r3_applies(d, s.id, k):
                    x = _r3_corners(d, s.id, k)[0]
                    out.append(MoveSpec("III", "forward", (s.id, x), (("slot", str(k)),)))
    elif mv in ("IV", "IVp"):
        want_bond = mv == "IV"
        for v in d.vertices():
            for j, (e, i) in enumerate(v.ends):
                if (d.edge(e).kind == BOND) != want_bond:
                    continue
                if fwd:
                    x, _ = d.where((e, 1 - i))
                    if d.site(x).kind == CROSSING:
                        out.append(MoveSpec(mv, "forward", (v.id, x)))
                else:
                    try:
                        vertex_slide_in(d, v.id, j)
                    except (MoveError, DiagramError):
                        continue
                    out.append(MoveSpec(mv, "backward", (v.id, e)))
    elif mv == "V":
        for v in d.vertices():
            for k in range(3):
                pair = (v.ends[k][0], v.ends[(k + 1) % 3][0])
                if BOND not in (d.edge(pair[0]).kind, d.edge(pair[1]).kind):
                    continue
                if fwd:
                    flags = (("over", rng.choice(["first", "second"])),)
                    out.append(MoveSpec("V", "forward", (v.id, *pair), flags))
                else:
                    hit = find_vertex_twist(d, v.id, k)
                    if hit is not None:
                        out.append(MoveSpec("V", "backward", (v.id, hit[0])))
    elif mv == "RV":
        for bond in d.bond_ids():
            if fwd:
                out.append(MoveSpec("RV", "forward", (bond,), (("hand", rng.choice(["+1", "-1"])),)))
            else:
                (v1, j1), (v2, j2) = _endpoints(d, bond)
                if find_vertex_twist(d, v1, j1 + 1) and find_vertex_twist(d, v2, j2 + 1):
                    out.append(MoveSpec("RV", "backward", (bond,)))
    return out


def random_isotopy(
    d: BondedDiagram,
    seed: int = 0,
    steps: int = 30,
    *,
    rigid: bool = True,
    max_extra_crossings: int = 6,
    trace: list | None = None,
) -> BondedDiagram:
    """Apply ``steps`` random moves; same seed, same result.

    The move set is I-IV, IV', RV (plus V when ``rigid`` is false). In the
    rigid set kinks are only put on or taken off link arcs. Moves
    that would push the crossing count more than ``max_extra_crossings``
    above the start are skipped. Applied moves are appended to ``trace``.
    """
    rng = random.Random(seed)
    cap = d.n_crossings + max_extra_crossings
    kinds = ["I", "II", "III", "IV", "IVp", "RV"] + ([] if rigid else ["V"])
    done = 0
    attempts = 0
    while done < steps and attempts < 50 * (steps + 1):
        attempts += 1
        mv = rng.choice(kinds)
        fwd = rng.random() < 0.5
        if fwd and d.n_crossings + _GROWTH.get(mv, 0) > cap:
            continue
        specs = _sites_for(d, mv, fwd, rng, rigid)
        if not specs:
            continue
        m = rng.choice(specs)
        try:
            d = apply_move(d, m)
        except MoveError:
            continue
        if trace is not None:
            trace.append(m)
        done += 1
    return d
