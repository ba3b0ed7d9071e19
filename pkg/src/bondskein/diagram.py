"""Colored bonded link diagrams as combinatorial planar maps.

A diagram is a set of edges glued at sites. Every edge has two *ends*
``(edge_id, 0)`` and ``(edge_id, 1)``; for link arcs end 0 is the tail and
end 1 the head. A site is either a crossing (four ends, counterclockwise)
or a bond vertex (three ends, counterclockwise, exactly one of them a bond
end). Crossingless oriented circles are only counted (``free_loops``).

Diagrams are immutable. Surgery goes through :class:`Builder`, a mutable
working copy that is frozen back into a :class:`BondedDiagram`.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

__all__ = [
    "LINK",
    "BOND",
    "CROSSING",
    "VERTEX",
    "End",
    "Edge",
    "Site",
    "BondedDiagram",
    "Builder",
    "DiagramError",
    "BondKind",
    "Smoothing",
    "natural_key",
    "validate",
    "check",
    "fmt_end",
    "classify_bond",
    "classify_bond_other_face",
    "smooth_bond",
    "underlying_link",
    "contact_distance_coloring",
    "iter_link_crossings",
    "switch_crossing",
    "smooth_crossing",
]

LINK = "link"
BOND = "bond"
CROSSING = "x"
VERTEX = "v"

End = tuple[str, int]


class DiagramError(ValueError):
    """Raised for malformed diagrams or illegal surgery requests."""


class BondKind(str, Enum):
    PARALLEL = "Parallel"
    ANTIPARALLEL = "Antiparallel"


class Smoothing(str, Enum):
    ZERO = "Zero"
    INFINITY = "Infinity"
    NEG_CROSSING = "NegCrossing"
    POS_CROSSING = "PosCrossing"


def natural_key(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


@dataclass(frozen=True)
class Edge:
    id: str
    kind: str
    bond: str | None = None


@dataclass(frozen=True)
class Site:
    id: str
    kind: str
    ends: tuple[End, ...]
    over: int | None = None

    @property
    def degree(self) -> int:
        return len(self.ends)


class BondedDiagram:
    """Immutable bonded link diagram."""

    __slots__ = ("_edges", "_sites", "_colors", "_loops", "_where", "_hash")

    def __init__(
        self,
        edges: Mapping[str, Edge],
        sites: Mapping[str, Site],
        colors: Mapping[str, int] | None = None,
        free_loops: int = 0,
    ):
        self._edges = dict(edges)
        self._sites = dict(sites)
        self._colors = dict(colors or {})
        self._loops = int(free_loops)
        where: dict[End, tuple[str, int]] = {}
        for s in self._sites.values():
            for k, end in enumerate(s.ends):
                if end in where:
                    raise DiagramError(f"edge end {fmt_end(end)} attached twice")
                where[end] = (s.id, k)
        self._where = where
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def edges(self) -> dict[str, Edge]:
        return dict(self._edges)

    @property
    def sites(self) -> dict[str, Site]:
        return dict(self._sites)

    @property
    def colors(self) -> dict[str, int]:
        return dict(self._colors)

    @property
    def free_loops(self) -> int:
        return self._loops

    def edge(self, eid: str) -> Edge:
        return self._edges[eid]

    def site(self, sid: str) -> Site:
        return self._sites[sid]

    def where(self, end: End) -> tuple[str, int] | None:
        return self._where.get(end)

    def crossings(self) -> list[Site]:
        return [s for s in self._sorted_sites() if s.kind == CROSSING]

    def vertices(self) -> list[Site]:
        return [s for s in self._sorted_sites() if s.kind == VERTEX]

    def _sorted_sites(self) -> list[Site]:
        return [self._sites[k] for k in sorted(self._sites, key=natural_key)]

    def bond_ids(self) -> list[str]:
        return sorted(self._colors, key=natural_key)

    @property
    def n_crossings(self) -> int:
        return sum(1 for s in self._sites.values() if s.kind == CROSSING)

    @property
    def n_bonds(self) -> int:
        return len(self._colors)

    def builder(self) -> "Builder":
        return Builder.from_diagram(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BondedDiagram):
            return NotImplemented
        return (
            self._edges == other._edges
            and self._sites == other._sites
            and self._colors == other._colors
            and self._loops == other._loops
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    frozenset(self._edges.items()),
                    frozenset(self._sites.items()),
                    frozenset(self._colors.items()),
                    self._loops,
                )
            )
        return self._hash

    def __repr__(self) -> str:
        return (
            f"BondedDiagram(crossings={self.n_crossings}, bonds={self.n_bonds}, "
            f"vertices={len(self._sites) - self.n_crossings}, free_loops={self._loops})"
        )

    # -- navigation --------------------------------------------------------

    def slot_end(self, sid: str, k: int) -> End:
        s = self._sites[sid]
        return s.ends[k % s.degree]

    def through(self, sid: str, k: int) -> int:
        """Slot on which a strand entering site ``sid`` at slot ``k`` leaves."""
        s = self._sites[sid]
        if s.kind == CROSSING:
            return (k + 2) % 4
        for j, end in enumerate(s.ends):
            if j != k and self._edges[end[0]].kind == LINK:
                return j
        raise DiagramError(f"vertex {sid} has no through-strand")

    def is_over(self, sid: str, k: int) -> bool:
        s = self._sites[sid]
        return s.kind == CROSSING and (k - s.over) % 2 == 0

    def crossing_sign(self, sid: str) -> int:
        """+1 when the under strand turned a counterclockwise quarter-turn gives the over strand."""
        s = self._sites[sid]
        if s.kind != CROSSING:
            raise DiagramError(f"{sid} is not a crossing")
        in_over = in_under = None
        for k, (e, i) in enumerate(s.ends):
            if self._edges[e].kind != LINK:
                raise DiagramError(f"crossing {sid} involves a bond; no sign")
            if i == 1:
                if (k - s.over) % 2 == 0:
                    in_over = k
                else:
                    in_under = k
        if in_over is None or in_under is None:
            raise DiagramError(f"crossing {sid} has inconsistent orientations")
        return 1 if in_over == (in_under + 1) % 4 else -1

    def link_components(self) -> list[list[str]]:
        """Link components as cyclic edge lists starting at the lowest edge id.

        Ordered by their lowest edge id. Free loops are not included.
        """
        seen: set[str] = set()
        comps = []
        for e in sorted(self._edges, key=natural_key):
            if e in seen or self._edges[e].kind != LINK:
                continue
            cyc = []
            cur = e
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                sid, k = self._where[(cur, 1)]
                nxt = self.slot_end(sid, self.through(sid, k))
                cur = nxt[0]
            comps.append(cyc)
        return comps

    def bond_chain(self, bond: str) -> tuple[list[str], list[str]]:
        """Segments of ``bond`` and the sites along it, from its lower-id vertex.

        Returns ``(segments, sites)`` where ``sites`` starts and ends with the
        two bond vertices and lists crossings in between.
        """
        segs = [e for e, ed in self._edges.items() if ed.kind == BOND and ed.bond == bond]
        if not segs:
            raise DiagramError(f"unknown bond {bond!r}")
        ends_at_vertices = [
            end
            for e in segs
            for end in ((e, 0), (e, 1))
            if end in self._where and self._sites[self._where[end][0]].kind == VERTEX
        ]
        if len(ends_at_vertices) != 2:
            raise DiagramError(f"bond {bond} does not have two vertex endpoints")
        start = min(ends_at_vertices, key=lambda end: natural_key(self._where[end][0]))
        chain_segs = []
        chain_sites = [self._where[start][0]]
        end = start
        while True:
            e, i = end
            chain_segs.append(e)
            far = (e, 1 - i)
            if far not in self._where:
                raise DiagramError(f"bond {bond} segment {e} is dangling")
            sid, k = self._where[far]
            chain_sites.append(sid)
            if self._sites[sid].kind == VERTEX:
                break
            end = self.slot_end(sid, k + 2)
            if self._edges[end[0]].kind != BOND or len(chain_segs) > len(segs):
                raise DiagramError(f"bond {bond} chain is broken at {sid}")
        if len(chain_segs) != len(segs):
            raise DiagramError(f"bond {bond} chain is broken")
        return chain_segs, chain_sites

    def bond_crossings(self, bond: str) -> list[str]:
        return self.bond_chain(bond)[1][1:-1]

    def is_crossing_free(self, bond: str) -> bool:
        return not self.bond_crossings(bond)

    def bond_endpoints(self, bond: str) -> tuple[tuple[str, int], tuple[str, int]]:
        """The two bond-vertex locations ``(vertex id, bond slot)``."""
        segs, sites = self.bond_chain(bond)
        out = []
        for v in (sites[0], sites[-1]):
            for k, (e, _) in enumerate(self._sites[v].ends):
                if self._edges[e].kind == BOND and self._edges[e].bond == bond:
                    out.append((v, k))
                    break
        return out[0], out[1]

    def connected_parts(self) -> list[list[str]]:
        """Site sets of the connected components of the underlying graph."""
        parent = {s: s for s in self._sites}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self._edges:
            a, b = self._where.get((e, 0)), self._where.get((e, 1))
            if a and b:
                ra, rb = find(a[0]), find(b[0])
                if ra != rb:
                    parent[ra] = rb
        groups: dict[str, list[str]] = defaultdict(list)
        for s in sorted(self._sites, key=natural_key):
            groups[find(s)].append(s)
        return list(groups.values())

    def restrict(self, site_ids) -> "BondedDiagram":
        """Sub-diagram spanned by a union of connected parts (no free loops)."""
        site_ids = set(site_ids)
        sites = {s: self._sites[s] for s in site_ids}
        edges = {}
        for s in sites.values():
            for e, _ in s.ends:
                edges[e] = self._edges[e]
        bonds = {ed.bond for ed in edges.values() if ed.kind == BOND}
        colors = {b: c for b, c in self._colors.items() if b in bonds}
        return BondedDiagram(edges, sites, colors, 0)

    def faces(self) -> list[list[End]]:
        """Face boundaries as lists of departing ends."""
        seen: set[End] = set()
        out = []
        for start in sorted(self._where, key=lambda x: (natural_key(x[0]), x[1])):
            if start in seen:
                continue
            face = []
            d = start
            while d not in seen:
                seen.add(d)
                face.append(d)
                e, i = d
                sid, k = self._where[(e, 1 - i)]
                d = self.slot_end(sid, k - 1)
            out.append(face)
        return out

    def with_colors(self, colors: Mapping[str, int]) -> "BondedDiagram":
        new = dict(self._colors)
        for b, c in colors.items():
            if b not in new:
                raise DiagramError(f"unknown bond {b!r}")
            if int(c) < 1:
                raise DiagramError(f"color of bond {b} must be a positive integer")
            new[b] = int(c)
        return BondedDiagram(self._edges, self._sites, new, self._loops)

    def canonical_code(self) -> tuple:
        """Relabeling-invariant code; equal codes mean isomorphic decorated maps."""
        parts = [self.restrict(p)._connected_code() for p in self.connected_parts()]
        return (tuple(sorted(parts)), self._loops)

    def _connected_code(self) -> tuple:
        best = None
        # starting darts restricted to one per site slot class keeps this O(E^2)
        for start in self._where:
            sid0, k0 = self._where[start]
            code = self._code_from(sid0, k0, best)
            if code is not None and (best is None or code < best):
                best = code
        return best or ()

    def _code_from(self, sid0: str, k0: int, bound) -> tuple | None:
        label = {sid0: 0}
        rot = {sid0: k0}
        order = [sid0]
        out = []
        qi = 0
        while qi < len(order):
            sid = order[qi]
            qi += 1
            s = self._sites[sid]
            r = rot[sid]
            deg = s.degree
            head = [s.kind, deg]
            if s.kind == CROSSING:
                head.append((s.over - r) % 2)
            out.append(tuple(head))
            for j in range(deg):
                e, i = s.ends[(r + j) % deg]
                far = (e, 1 - i)
                nsid, nk = self._where[far]
                if nsid not in label:
                    label[nsid] = len(order)
                    rot[nsid] = nk
                    order.append(nsid)
                ed = self._edges[e]
                col = self._colors.get(ed.bond, 0) if ed.kind == BOND else 0
                ns = self._sites[nsid]
                out.append(
                    (label[nsid], (nk - rot[nsid]) % ns.degree, i if ed.kind == LINK else 2, col)
                )
            if bound is not None and tuple(out) > bound[: len(out)]:
                return None
        return tuple(out)


def fmt_end(end: End) -> str:
    return f"{end[0]}.{end[1]}"


class Builder:
    """Mutable working copy of a diagram used by all surgeries."""

    def __init__(self):
        self.edges: dict[str, Edge] = {}
        self.kind: dict[str, str] = {}
        self.slots: dict[str, list[End | None]] = {}
        self.over: dict[str, int | None] = {}
        self.where: dict[End, tuple[str, int]] = {}
        self.colors: dict[str, int] = {}
        self.free_loops = 0
        self._counter = 0

    @classmethod
    def from_diagram(cls, d: BondedDiagram) -> "Builder":
        b = cls()
        b.edges = dict(d._edges)
        for s in d._sites.values():
            b.kind[s.id] = s.kind
            b.slots[s.id] = list(s.ends)
            b.over[s.id] = s.over
        b.where = dict(d._where)
        b.colors = dict(d._colors)
        b.free_loops = d._loops
        return b

    def freeze(self) -> BondedDiagram:
        sites = {}
        for sid, ends in self.slots.items():
            if any(e is None for e in ends):
                raise DiagramError(f"site {sid} has an empty slot after surgery")
            sites[sid] = Site(sid, self.kind[sid], tuple(ends), self.over[sid])
        live_bonds = {e.bond for e in self.edges.values() if e.kind == BOND}
        colors = {k: v for k, v in self.colors.items() if k in live_bonds}
        return BondedDiagram(self.edges, sites, colors, self.free_loops)

    def _fresh(self, prefix: str, taken) -> str:
        while True:
            self._counter += 1
            name = f"{prefix}{self._counter}"
            if name not in taken:
                return name

    def new_edge(self, kind: str, bond: str | None = None) -> str:
        eid = self._fresh("e", self.edges)
        self.edges[eid] = Edge(eid, kind, bond)
        return eid

    def new_site(self, kind: str, degree: int, over: int | None = None) -> str:
        sid = self._fresh("x" if kind == CROSSING else "v", self.slots)
        self.kind[sid] = kind
        self.slots[sid] = [None] * degree
        self.over[sid] = over
        return sid

    def end_at(self, sid: str, k: int) -> End:
        ends = self.slots[sid]
        end = ends[k % len(ends)]
        if end is None:
            raise DiagramError(f"slot {k} of {sid} is empty")
        return end

    def attach(self, end: End, sid: str, k: int) -> None:
        old = self.where.get(end)
        if old is not None:
            self.slots[old[0]][old[1]] = None
        k %= len(self.slots[sid])
        self.slots[sid][k] = end
        self.where[end] = (sid, k)

    def detach(self, end: End) -> None:
        loc = self.where.pop(end, None)
        if loc is not None:
            self.slots[loc[0]][loc[1]] = None

    def delete_edge(self, eid: str) -> None:
        self.detach((eid, 0))
        self.detach((eid, 1))
        del self.edges[eid]

    def remove_site(self, sid: str) -> None:
        if any(e is not None for e in self.slots[sid]):
            raise DiagramError(f"removing non-empty site {sid}")
        del self.slots[sid], self.kind[sid], self.over[sid]

    def join(self, loc_a: tuple[str, int], loc_b: tuple[str, int]) -> None:
        """Fuse the two edges whose ends sit at the given slots.

        The slots are vacated; the first edge survives and takes over the far
        end of the second. Two ends of one edge close up into a free loop.
        """
        a = self.end_at(*loc_a)
        b = self.end_at(*loc_b)
        self.detach(a)
        self.detach(b)
        if a[0] == b[0]:
            if self.edges[a[0]].kind != LINK:
                raise DiagramError("surgery closed a bond into a loop")
            del self.edges[a[0]]
            self.free_loops += 1
            return
        if self.edges[a[0]].kind != self.edges[b[0]].kind:
            raise DiagramError("surgery fused a link arc with a bond segment")
        far = (b[0], 1 - b[1])
        loc = self.where[far]
        self.delete_edge(b[0])
        self.attach(a, *loc)

    def subdivide(self, sid: str, k: int, new_sid: str, near_slot: int, far_slot: int) -> str:
        """Insert site ``new_sid`` on the edge leaving ``sid`` at slot ``k``.

        The piece between ``sid`` and the new site is a fresh edge (returned);
        the original edge keeps its far end and is re-attached at ``far_slot``.
        """
        e, i = self.end_at(sid, k)
        ed = self.edges[e]
        f = self.new_edge(ed.kind, ed.bond)
        self.attach((e, i), new_sid, far_slot)
        self.attach((f, i), sid, k)
        self.attach((f, 1 - i), new_sid, near_slot)
        return f


# -- validation ----------------------------------------------------------


def validate(d: BondedDiagram) -> list[str]:
    """All invariant violations of ``d`` as human-readable strings."""
    problems: list[str] = []
    for e in sorted(d._edges, key=natural_key):
        for i in (0, 1):
            if (e, i) not in d._where:
                problems.append(f"edge end {e}.{i} is not attached to any site")
    for s in d._sorted_sites():
        for end in s.ends:
            if end[0] not in d._edges:
                problems.append(f"site {s.id} references unknown edge {end[0]}")
    if problems:
        return problems
    for s in d._sorted_sites():
        kinds = [d._edges[e].kind for e, _ in s.ends]
        if s.kind == CROSSING:
            if s.degree != 4:
                problems.append(f"crossing {s.id} must have 4 ends")
                continue
            if s.over not in (0, 1, 2, 3):
                problems.append(f"crossing {s.id} has invalid over index {s.over}")
            for k in (0, 1):
                (e1, i1), (e2, i2) = s.ends[k], s.ends[k + 2]
                k1, k2 = d._edges[e1].kind, d._edges[e2].kind
                if k1 != k2:
                    problems.append(f"crossing {s.id}: strand through slots {k},{k + 2} mixes link and bond")
                elif k1 == LINK and i1 == i2:
                    problems.append(f"crossing {s.id}: link strand through slots {k},{k + 2} is not coherently oriented")
                elif k1 == BOND and d._edges[e1].bond != d._edges[e2].bond:
                    problems.append(f"crossing {s.id}: bond strand changes bond id")
        elif s.kind == VERTEX:
            if s.degree != 3:
                problems.append(f"vertex {s.id} must have 3 ends")
                continue
            if kinds.count(BOND) != 1:
                problems.append(f"vertex {s.id} must have exactly one bond end")
                continue
            link_ix = sorted(i for (e, i), k in zip(s.ends, kinds) if k == LINK)
            if link_ix != [0, 1]:
                problems.append(f"vertex {s.id}: link ends must be one head and one tail")
        else:
            problems.append(f"site {s.id} has unknown kind {s.kind!r}")
    bond_edges = {ed.bond for ed in d._edges.values() if ed.kind == BOND}
    for b in sorted(bond_edges - set(d._colors), key=natural_key):
        problems.append(f"bond {b} has segments but no bond record")
    for b in sorted(set(d._colors) - bond_edges, key=natural_key):
        problems.append(f"bond {b} has no segments")
    for b, c in d._colors.items():
        if not isinstance(c, int) or c < 1:
            problems.append(f"bond {b} has non-positive color {c}")
    if problems:
        return problems
    for b in d.bond_ids():
        try:
            segs, sites = d.bond_chain(b)
            if sites[0] == sites[-1]:
                problems.append(f"bond {b} starts and ends at the same vertex")
        except DiagramError as exc:
            problems.append(str(exc))
    for part in d.connected_parts():
        sub = d.restrict(part)
        v = len(sub._sites)
        e = len(sub._edges)
        f = len(sub.faces())
        if v - e + f != 2:
            problems.append(
                f"non-planar rotation system on component {{{', '.join(part)}}}: V - E + F = {v - e + f}"
            )
    return problems


def check(d: BondedDiagram) -> BondedDiagram:
    problems = validate(d)
    if problems:
        raise DiagramError("; ".join(problems))
    return d


# -- bond classification and smoothing ------------------------------------


def _bond_neighbourhood(d: BondedDiagram, bond: str):
    if bond not in d._colors:
        raise DiagramError(f"unknown bond {bond!r}")
    if not d.is_crossing_free(bond):
        raise DiagramError(f"bond {bond} has crossings; isolate it first (moves.isolate_bond)")
    (v1, j1), (v2, j2) = d.bond_endpoints(bond)
    return (v1, j1), (v2, j2)


def classify_bond(d: BondedDiagram, bond: str) -> BondKind:
    """Parallel or antiparallel, from one face incident to the bond.

    Walking the boundary of the face that lies counterclockwise-before the
    bond at its first vertex, the two link arcs next to the bond are
    traversed with or against their orientation; agreement means
    antiparallel. The other face gives the same answer.
    """
    (v1, j1), (v2, j2) = _bond_neighbourhood(d, bond)
    # face walk departs along slot k-1 after arriving at slot k
    # arriving at v1 via the bond, we depart on the slot before it
    out1 = d.slot_end(v1, j1 - 1)
    # the same face reaches the bond at v2 by arriving on the slot after it
    in2 = d.slot_end(v2, j2 + 1)
    along1 = out1[1] == 0  # departing a tail end walks along the arc
    along2 = in2[1] == 1  # arriving at a head end walked along the arc
    return BondKind.ANTIPARALLEL if along1 == along2 else BondKind.PARALLEL


def classify_bond_other_face(d: BondedDiagram, bond: str) -> BondKind:
    (v1, j1), (v2, j2) = _bond_neighbourhood(d, bond)
    out2 = d.slot_end(v2, j2 - 1)
    in1 = d.slot_end(v1, j1 + 1)
    along1 = out2[1] == 0
    along2 = in1[1] == 1
    return BondKind.ANTIPARALLEL if along1 == along2 else BondKind.PARALLEL


_ALLOWED = {
    BondKind.ANTIPARALLEL: {Smoothing.ZERO, Smoothing.INFINITY},
    BondKind.PARALLEL: {Smoothing.ZERO, Smoothing.NEG_CROSSING, Smoothing.POS_CROSSING},
}


def smooth_bond(d: BondedDiagram, bond: str, kind: Smoothing | str) -> BondedDiagram:
    """Replace a crossing-free bond by one of its local link resolutions."""
    kind = Smoothing(kind)
    cls = classify_bond(d, bond)
    if kind not in _ALLOWED[cls]:
        raise DiagramError(f"{kind.value} smoothing is not defined for a {cls.value.lower()} bond")
    (v1, j1), (v2, j2) = _bond_neighbourhood(d, bond)
    b = d.builder()
    seg = b.end_at(v1, j1)[0]
    b.delete_edge(seg)
    # p_i: ccw-previous link slot at v_i, n_i: ccw-next
    p1, n1 = (j1 - 1) % 3, (j1 + 1) % 3
    p2, n2 = (j2 - 1) % 3, (j2 + 1) % 3
    if kind is Smoothing.ZERO:
        b.join((v1, p1), (v1, n1))
        b.join((v2, p2), (v2, n2))
    elif kind is Smoothing.INFINITY:
        b.join((v1, n1), (v2, p2))
        b.join((v1, p1), (v2, n2))
    else:
        x = b.new_site(CROSSING, 4, over=0)
        for slot, loc in enumerate(((v1, p1), (v2, n2), (v2, p2), (v1, n1))):
            b.attach(b.end_at(*loc), x, slot)
        b.over[x] = 0
        want = 1 if kind is Smoothing.POS_CROSSING else -1
        if _sign_in_builder(b, x) != want:
            b.over[x] = 1
    b.remove_site(v1)
    b.remove_site(v2)
    return b.freeze()


def _sign_in_builder(b: Builder, x: str) -> int:
    over = b.over[x]
    ends = b.slots[x]
    in_over = next(k for k in range(4) if ends[k][1] == 1 and (k - over) % 2 == 0)
    in_under = next(k for k in range(4) if ends[k][1] == 1 and (k - over) % 2 == 1)
    return 1 if in_over == (in_under + 1) % 4 else -1


def underlying_link(d: BondedDiagram) -> BondedDiagram:
    """Delete every bond (Zero smoothing); bonds must be crossing-free."""
    for bond in d.bond_ids():
        d = smooth_bond(d, bond, Smoothing.ZERO)
    return d


# -- coloring -------------------------------------------------------------


def contact_distance_coloring(d: BondedDiagram, *, count_destination: bool = False) -> dict[str, int]:
    """Color each bond by 1 + the fewest bond contacts met between its endpoints.

    Contacts are bond-endpoint vertices strictly between the two endpoints,
    minimized over the two arcs of the knot. With ``count_destination`` the
    far endpoint is counted as well.
    """
    comps = d.link_components()
    if len(comps) + d.free_loops != 1:
        raise DiagramError("contact distance needs a one-component underlying link")
    order = []
    for e in comps[0]:
        sid, _ = d._where[(e, 1)]
        if d._sites[sid].kind == VERTEX:
            order.append(sid)
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    out = {}
    for bond in d.bond_ids():
        _, sites = d.bond_chain(bond)
        i, j = sorted((pos[sites[0]], pos[sites[-1]]))
        inner = j - i - 1
        outer = n - (j - i) - 1
        out[bond] = 1 + min(inner, outer) + (1 if count_destination else 0)
    return out


def iter_link_crossings(d: BondedDiagram) -> Iterator[Site]:
    for s in d.crossings():
        if all(d._edges[e].kind == LINK for e, _ in s.ends):
            yield s


# -- crossing surgery -------------------------------------------------------


def switch_crossing(d: BondedDiagram, x: str) -> BondedDiagram:
    """Exchange over and under at crossing ``x``."""
    s = d.site(x)
    if s.kind != CROSSING:
        raise DiagramError(f"{x} is not a crossing")
    sites = d.sites
    sites[x] = Site(x, CROSSING, s.ends, (s.over + 1) % 4)
    return BondedDiagram(d._edges, sites, d._colors, d._loops)


def smooth_crossing(d: BondedDiagram, x: str) -> BondedDiagram:
    """Orientation-respecting smoothing of a link-link crossing."""
    s = d.site(x)
    if s.kind != CROSSING:
        raise DiagramError(f"{x} is not a crossing")
    d.crossing_sign(x)  # checks both strands are oriented link arcs
    in_over = next(k for k in range(4) if s.ends[k][1] == 1 and d.is_over(x, k))
    in_under = next(k for k in range(4) if s.ends[k][1] == 1 and not d.is_over(x, k))
    b = d.builder()
    b.join((x, in_over), (x, in_under + 2))
    b.join((x, in_under), (x, in_over + 2))
    b.remove_site(x)
    return b.freeze()
