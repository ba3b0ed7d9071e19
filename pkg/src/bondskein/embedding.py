"""Projection of 3D polyline scenes to bonded diagrams.

Scene text holds one polyline per block::

    link k1            # closed, oriented by point order
    0 0 0
    1 0 0
    ...
    bond b1 color 2    # open; both ends are points of link polylines
    ...

A generic view direction is drawn at random (seeded) and retried while
the projection has coincidences: overlapping or tangent segments, a
crossing at a polyline vertex, a triple point, or a double point near a
bond endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagram import BOND, CROSSING, LINK, VERTEX, BondedDiagram, Builder, DiagramError, check

__all__ = ["Polyline", "Scene", "SceneError", "parse_scene", "project_embedding"]


class SceneError(DiagramError):
    pass


@dataclass
class Polyline:
    id: str
    kind: str  # LINK or BOND
    points: np.ndarray
    color: int = 1


@dataclass
class Scene:
    polylines: list[Polyline] = field(default_factory=list)

    @property
    def links(self) -> list[Polyline]:
        return [p for p in self.polylines if p.kind == LINK]

    @property
    def bonds(self) -> list[Polyline]:
        return [p for p in self.polylines if p.kind == BOND]


def parse_scene(text: str) -> Scene:
    scene = Scene()
    cur: tuple[str, str, int] | None = None
    rows: list[list[float]] = []

    def flush():
        if cur is None:
            return
        pid, kind, color = cur
        pts = np.array(rows, dtype=float).reshape(-1, 3)
        if kind == LINK and len(pts) > 1 and np.allclose(pts[0], pts[-1]):
            pts = pts[:-1]
        need = 3 if kind == LINK else 2
        if len(pts) < need:
            raise SceneError(f"polyline {pid} needs at least {need} points")
        scene.polylines.append(Polyline(pid, kind, pts, color))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "link" and len(toks) == 2:
            flush()
            cur, rows = (toks[1], LINK, 1), []
        elif toks[0] == "bond" and len(toks) in (2, 4):
            flush()
            color = 1
            if len(toks) == 4:
                if toks[2] != "color":
                    raise SceneError(f"line {lineno}: expected 'bond <id> color <c>'")
                color = int(toks[3])
            cur, rows = (toks[1], BOND, color), []
        else:
            if cur is None:
                raise SceneError(f"line {lineno}: coordinates before any polyline header")
            try:
                xyz = [float(t) for t in toks]
            except ValueError:
                raise SceneError(f"line {lineno}: bad coordinate row {line!r}") from None
            if len(xyz) != 3:
                raise SceneError(f"line {lineno}: expected three coordinates")
            rows.append(xyz)
    flush()
    ids = [p.id for p in scene.polylines]
    if len(set(ids)) != len(ids):
        raise SceneError("duplicate polyline id")
    return scene


# -- geometry -----------------------------------------------------------------

_EPS = 1e-9


def _segments(scene: Scene):
    """``(polyline index, segment index, start, end)`` for every segment."""
    out = []
    for pi, p in enumerate(scene.polylines):
        n = len(p.points)
        count = n if p.kind == LINK else n - 1
        for si in range(count):
            out.append((pi, si, p.points[si], p.points[(si + 1) % n]))
    return out


def _adjacent(scene: Scene, a, b, attach: dict) -> bool:
    """Segments sharing an endpoint in 3D (consecutive or at a bond vertex)."""
    pa, sa = a[0], a[1]
    pb, sb = b[0], b[1]
    if pa == pb:
        n = len(scene.polylines[pa].points)
        if scene.polylines[pa].kind == LINK:
            return (sa - sb) % n in (0, 1, n - 1)
        return abs(sa - sb) <= 1
    for x, y in ((a, b), (b, a)):
        px, sx = x[0], x[1]
        py, sy = y[0], y[1]
        if scene.polylines[px].kind != BOND:
            continue
        nb = len(scene.polylines[px].points)
        for end_idx, seg_idx in ((0, 0), (nb - 1, nb - 2)):
            if sx != seg_idx:
                continue
            hit = attach.get((px, end_idx))
            if hit is None or hit[0] != py:
                continue
            n = len(scene.polylines[py].points)
            if sy in (hit[1], (hit[1] - 1) % n):
                return True
    return False


def _attachments(scene: Scene) -> dict:
    """Map (bond polyline, end point index) -> (link polyline, point index)."""
    out = {}
    used = set()
    for bi, b in enumerate(scene.polylines):
        if b.kind != BOND:
            continue
        for end_idx in (0, len(b.points) - 1):
            pt = b.points[end_idx]
            hits = [
                (li, k)
                for li, l in enumerate(scene.polylines)
                if l.kind == LINK
                for k in range(len(l.points))
                if np.linalg.norm(l.points[k] - pt) < 1e-7
            ]
            if len(hits) != 1:
                raise SceneError(f"bond {b.id} endpoint {pt.tolist()} must coincide with exactly one link point")
            if hits[0] in used:
                raise SceneError(f"two bond endpoints share the link point {pt.tolist()}")
            used.add(hits[0])
            out[(bi, end_idx)] = hits[0]
    return out


def _frame(direction: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    w = direction / np.linalg.norm(direction)
    helper = np.array([1.0, 0.0, 0.0]) if abs(w[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = np.cross(w, helper)
    u /= np.linalg.norm(u)
    v = np.cross(w, u)
    return u, v, w


class _Degenerate(Exception):
    pass


def _crossings(scene: Scene, attach: dict, u, v, w, scale: float):
    segs = _segments(scene)
    proj = [(np.array([a @ u, a @ v]), np.array([b @ u, b @ v]), a @ w, b @ w) for _, _, a, b in segs]
    tol = 1e-7 * scale
    found = []
    for i in range(len(segs)):
        p0, p1, da0, da1 = proj[i]
        r = p1 - p0
        if np.linalg.norm(r) < tol:
            raise _Degenerate("segment projects to a point")
        for j in range(i + 1, len(segs)):
            q0, q1, db0, db1 = proj[j]
            s = q1 - q0
            denom = r[0] * s[1] - r[1] * s[0]
            qp = q0 - p0
            if _adjacent(scene, segs[i], segs[j], attach):
                # adjacent segments may only meet at their shared point
                if abs(denom) < tol * (np.linalg.norm(r) + np.linalg.norm(s)):
                    if abs(qp[0] * r[1] - qp[1] * r[0]) < tol * np.linalg.norm(r):
                        raise _Degenerate("adjacent segments fold onto each other")
                continue
            if abs(denom) < tol * np.linalg.norm(r) * np.linalg.norm(s):
                if abs(qp[0] * r[1] - qp[1] * r[0]) < tol * np.linalg.norm(r):
                    raise _Degenerate("collinear overlapping segments")
                continue
            t = (qp[0] * s[1] - qp[1] * s[0]) / denom
            t2 = (qp[0] * r[1] - qp[1] * r[0]) / denom
            if t < -1e-9 or t > 1 + 1e-9 or t2 < -1e-9 or t2 > 1 + 1e-9:
                continue
            if min(t, 1 - t, t2, 1 - t2) < 1e-6:
                raise _Degenerate("crossing at a polyline vertex")
            za = da0 + t * (da1 - da0)
            zb = db0 + t2 * (db1 - db0)
            if abs(za - zb) < tol:
                raise _Degenerate("segments intersect in space")
            found.append((i, t, j, t2, za > zb, p0 + t * r))
    pts = [c[5] for c in found]
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if np.linalg.norm(pts[a] - pts[b]) < 1e-6 * scale:
                raise _Degenerate("triple point")
    return segs, found


def project_embedding(
    scene: Scene | str,
    *,
    seed: int = 0,
    retries: int = 50,
    direction=None,
) -> BondedDiagram:
    """Diagram of ``scene`` seen along a random generic direction.

    Pass ``direction`` (a 3-vector pointing at the viewer) to fix the view;
    a degenerate fixed direction raises ``SceneError``. Vertex disks and
    bond framings are taken from the projection plane, so the rigid class
    of the result can depend on the direction while the non-rigid class
    does not.
    """
    if isinstance(scene, str):
        scene = parse_scene(scene)
    if not scene.links:
        raise SceneError("scene has no link polylines")
    for p in scene.polylines:
        steps = np.linalg.norm(np.diff(p.points, axis=0), axis=1)
        if np.any(steps < 1e-12):
            raise SceneError(f"polyline {p.id} has coincident consecutive points")
    attach = _attachments(scene)
    allpts = np.vstack([p.points for p in scene.polylines])
    scale = float(np.max(np.ptp(allpts, axis=0))) or 1.0
    rng = np.random.default_rng(seed)
    fixed = direction is not None
    for _ in range(1 if fixed else retries):
        view = np.asarray(direction, dtype=float) if fixed else rng.normal(size=3)
        if np.linalg.norm(view) < 1e-6:
            continue
        u, v, w = _frame(view)
        try:
            segs, found = _crossings(scene, attach, u, v, w, scale)
        except _Degenerate:
            continue
        return _assemble(scene, attach, segs, found, u, v)
    if fixed:
        raise SceneError("projection along the given direction is not generic")
    raise SceneError(f"no generic projection direction found after {retries} attempts")


def _assemble(scene: Scene, attach: dict, segs, found, u, v) -> BondedDiagram:
    def ang(vec3) -> float:
        return math.atan2(float(vec3 @ v), float(vec3 @ u))

    # events along each polyline: (segment, t, kind, payload)
    events: dict[int, list] = {i: [] for i in range(len(scene.polylines))}
    for ci, (i, t, j, t2, i_over, _) in enumerate(found):
        events[segs[i][0]].append((segs[i][1], t, "x", (f"x{ci + 1}", segs[i], i_over)))
        events[segs[j][0]].append((segs[j][1], t2, "x", (f"x{ci + 1}", segs[j], not i_over)))
    for n, ((bi, end_idx), (li, k)) in enumerate(sorted(attach.items())):
        vid = f"v{n + 1}"
        events[li].append((k, 0.0, "v", (vid, None, None)))
        last = len(scene.polylines[bi].points) - 1
        events[bi].append((0 if end_idx == 0 else last, 0.0, "v", (vid, None, None)))

    b = Builder()
    ends_at: dict[str, list[tuple[float, tuple[str, int]]]] = {}
    over_end: dict[str, tuple[str, int]] = {}
    for pi, p in enumerate(scene.polylines):
        evs = sorted(events[pi], key=lambda e: (e[0], e[1]))
        if not evs:
            if p.kind == BOND:
                raise SceneError(f"bond {p.id} is not attached")
            b.free_loops += 1
            continue
        if p.kind == BOND:
            b.colors[p.id] = p.color
        closed = p.kind == LINK
        count = len(evs) if closed else len(evs) - 1
        edges = [b.new_edge(p.kind, None if closed else p.id) for _ in range(count)]
        pts = p.points
        npts = len(pts)
        for n, (seg, _t, typ, (sid, seg_info, is_over)) in enumerate(evs):
            out_end = (edges[n], 0) if n < count else None
            in_end = (edges[n - 1], 1) if (n > 0 or closed) else None
            here = ends_at.setdefault(sid, [])
            if typ == "x":
                a, c = seg_info[2], seg_info[3]
                here.append((ang(c - a), out_end))
                here.append((ang(a - c), in_end))
                if is_over:
                    over_end[sid] = out_end
            elif closed:
                here.append((ang(pts[(seg + 1) % npts] - pts[seg]), out_end))
                here.append((ang(pts[(seg - 1) % npts] - pts[seg]), in_end))
            elif out_end is not None:
                here.append((ang(pts[1] - pts[0]), out_end))
            else:
                here.append((ang(pts[-2] - pts[-1]), in_end))
    for sid, ends in ends_at.items():
        ends.sort(key=lambda a: a[0])
        b.kind[sid] = CROSSING if sid.startswith("x") else VERTEX
        b.slots[sid] = [None] * len(ends)
        b.over[sid] = None
        for k, (_, end) in enumerate(ends):
            b.attach(end, sid, k)
        if sid.startswith("x"):
            b.over[sid] = b.where[over_end[sid]][1]
    return check(b.freeze())
