"""Reading and writing bonded planar diagram (BPD) codes.

Text format, one declaration per line, ``#`` starts a comment::

    comp <id> : <edge-id list>               # oriented component, cyclic order
    bond <id> [color <int>] : <edge-id list> # chain of bond segments
    x <id> ( <end> , <end> , <end> , <end> ) over <0|1|2|3>
    v <id> ( <end> , <end> , <end> )
    loops <count>

An end is ``<edge-id>.<0|1>``; for link arcs ``.0`` is the tail. Ends at a
site are listed counterclockwise. A component made of a single edge that is
attached nowhere is read as a free loop.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .diagram import (
    BOND,
    CROSSING,
    LINK,
    VERTEX,
    BondedDiagram,
    DiagramError,
    Edge,
    Site,
    check,
    fmt_end,
)

__all__ = ["BPDSyntaxError", "parse_bpd", "serialize_bpd", "to_json", "from_json", "load"]

_ID = r"[A-Za-z_][\w\-]*|\d+"
_END = rf"({_ID})\.([01])"


class BPDSyntaxError(DiagramError):
    def __init__(self, line: int, col: int, msg: str):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_RE_COMP = re.compile(rf"^comp\s+({_ID})\s*:\s*(.*)$")
_RE_BOND = re.compile(rf"^bond\s+({_ID})(?:\s+color\s+(-?\d+))?\s*:\s*(.*)$")
_RE_SITE = re.compile(rf"^(x|v)\s+({_ID})\s*\((.*)\)\s*(?:over\s+(\d+))?\s*$")
_RE_LOOPS = re.compile(r"^loops\s+(\d+)\s*$")


def _split_ids(text: str, lineno: int, offset: int) -> list[str]:
    ids = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    for t in ids:
        if not re.fullmatch(_ID, t):
            raise BPDSyntaxError(lineno, offset + text.find(t) + 1, f"bad edge id {t!r}")
    return ids


def parse_bpd(text: str, *, validate: bool = True) -> BondedDiagram:
    """Parse BPD text into a validated diagram."""
    edges: dict[str, Edge] = {}
    comps: dict[str, list[str]] = {}
    colors: dict[str, int] = {}
    sites: dict[str, Site] = {}
    loops = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        if m := _RE_COMP.match(stripped):
            cid, rest = m.group(1), m.group(2)
            if cid in comps:
                raise BPDSyntaxError(lineno, col0, f"duplicate component {cid}")
            ids = _split_ids(rest, lineno, col0 + m.start(2))
            if not ids:
                raise BPDSyntaxError(lineno, col0, f"component {cid} has no edges")
            comps[cid] = ids
            for e in ids:
                if e in edges:
                    raise BPDSyntaxError(lineno, col0, f"edge {e} declared twice")
                edges[e] = Edge(e, LINK)
        elif m := _RE_BOND.match(stripped):
            bid, color, rest = m.group(1), m.group(2), m.group(3)
            if bid in colors:
                raise BPDSyntaxError(lineno, col0, f"duplicate bond {bid}")
            ids = _split_ids(rest, lineno, col0 + m.start(3))
            if not ids:
                raise BPDSyntaxError(lineno, col0, f"bond {bid} has no segments")
            colors[bid] = int(color) if color is not None else 1
            for e in ids:
                if e in edges:
                    raise BPDSyntaxError(lineno, col0, f"edge {e} declared twice")
                edges[e] = Edge(e, BOND, bid)
        elif m := _RE_SITE.match(stripped):
            kind, sid, body, over = m.groups()
            if sid in sites:
                raise BPDSyntaxError(lineno, col0, f"duplicate site {sid}")
            parts = [p.strip() for p in body.split(",")]
            ends = []
            for p in parts:
                em = re.fullmatch(_END, p)
                if not em:
                    raise BPDSyntaxError(lineno, col0 + m.start(3) + body.find(p) + 1, f"bad edge end {p!r}")
                ends.append((em.group(1), int(em.group(2))))
            if kind == "x":
                if len(ends) != 4:
                    raise BPDSyntaxError(lineno, col0, f"crossing {sid} needs 4 ends, got {len(ends)}")
                if over is None:
                    raise BPDSyntaxError(lineno, col0, f"crossing {sid} is missing 'over'")
                sites[sid] = Site(sid, CROSSING, tuple(ends), int(over))
            else:
                if len(ends) != 3:
                    raise BPDSyntaxError(lineno, col0, f"vertex {sid} needs 3 ends, got {len(ends)}")
                if over is not None:
                    raise BPDSyntaxError(lineno, col0, "vertices take no 'over'")
                sites[sid] = Site(sid, VERTEX, tuple(ends))
        elif m := _RE_LOOPS.match(stripped):
            loops += int(m.group(1))
        else:
            word = stripped.split()[0]
            raise BPDSyntaxError(lineno, col0, f"unknown declaration {word!r}")
    for s in sites.values():
        for e, _ in s.ends:
            if e not in edges:
                raise DiagramError(f"site {s.id} references undeclared edge {e}")
    attached = {e for s in sites.values() for e, _ in s.ends}
    for cid, ids in comps.items():
        if len(ids) == 1 and ids[0] not in attached:
            del edges[ids[0]]
            loops += 1
    d = BondedDiagram(edges, sites, colors, loops)
    if validate:
        check(d)
        _check_comp_order(d, comps)
    return d


def _check_comp_order(d: BondedDiagram, comps: dict[str, list[str]]) -> None:
    traversed = {frozenset(c): c for c in d.link_components()}
    for cid, ids in comps.items():
        if len(ids) == 1 and ids[0] not in d._edges:
            continue
        cyc = traversed.get(frozenset(ids))
        if cyc is None:
            raise DiagramError(f"component {cid} does not match a closed strand of the diagram")
        k = cyc.index(ids[0])
        if cyc[k:] + cyc[:k] != ids:
            raise DiagramError(f"component {cid} lists its edges out of traversal order")


def serialize_bpd(d: BondedDiagram) -> str:
    """Canonical BPD text of ``d`` (components renamed ``c1``, ``c2``, ...)."""
    lines = []
    for i, comp in enumerate(d.link_components(), start=1):
        lines.append(f"comp c{i} : {' '.join(comp)}")
    for bond in d.bond_ids():
        segs, _ = d.bond_chain(bond)
        lines.append(f"bond {bond} color {d._colors[bond]} : {' '.join(segs)}")
    for s in d._sorted_sites():
        ends = " , ".join(fmt_end(e) for e in s.ends)
        if s.kind == CROSSING:
            lines.append(f"x {s.id} ( {ends} ) over {s.over}")
        else:
            lines.append(f"v {s.id} ( {ends} )")
    lines.append(f"loops {d.free_loops}")
    return "\n".join(lines) + "\n"


def to_json(d: BondedDiagram) -> dict[str, Any]:
    return {
        "components": [
            {"id": f"c{i}", "edges": comp} for i, comp in enumerate(d.link_components(), start=1)
        ],
        "bonds": [
            {"id": b, "color": d._colors[b], "edges": d.bond_chain(b)[0]} for b in d.bond_ids()
        ],
        "crossings": [
            {"id": s.id, "ends": [fmt_end(e) for e in s.ends], "over": s.over}
            for s in d._sorted_sites()
            if s.kind == CROSSING
        ],
        "vertices": [
            {"id": s.id, "ends": [fmt_end(e) for e in s.ends]}
            for s in d._sorted_sites()
            if s.kind == VERTEX
        ],
        "loops": d.free_loops,
    }


def from_json(obj: dict[str, Any] | str) -> BondedDiagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    lines = []
    for c in obj.get("components", []):
        lines.append(f"comp {c['id']} : {' '.join(c['edges'])}")
    for b in obj.get("bonds", []):
        lines.append(f"bond {b['id']} color {b.get('color', 1)} : {' '.join(b['edges'])}")
    for x in obj.get("crossings", []):
        lines.append(f"x {x['id']} ( {' , '.join(x['ends'])} ) over {x['over']}")
    for v in obj.get("vertices", []):
        lines.append(f"v {v['id']} ( {' , '.join(v['ends'])} )")
    lines.append(f"loops {obj.get('loops', 0)}")
    return parse_bpd("\n".join(lines))


def load(path) -> BondedDiagram:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse_bpd(text)
