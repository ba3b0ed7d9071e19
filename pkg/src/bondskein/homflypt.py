"""HOMFLYPT polynomial of oriented link diagrams.

Normalization: ``l P(L+) + l^-1 P(L-) + m P(L0) = 0`` and ``P(unknot) = 1``.

The evaluator walks each diagram from fixed basepoints, collects the
crossings first met from below and switches them one at a time, which
leaves a descending diagram (an unlink) plus one smoothed diagram per
switch. Smoothed diagrams have fewer crossings and are evaluated
recursively; connected pieces are memoized on their canonical codes.
"""

from __future__ import annotations

import os

from .diagram import (
    CROSSING,
    BondedDiagram,
    DiagramError,
    smooth_crossing,
    switch_crossing,
)
from .moves import simplify
from .ring import DELTA, ONE, ZERO, LaurentPoly

__all__ = ["homfly", "HomflyError", "skein_coefficients"]

_L_INV = LaurentPoly.monomial(-1, 0)
_NEG_L_INV2 = LaurentPoly.monomial(-2, 0, -1)
_NEG_L2 = LaurentPoly.monomial(2, 0, -1)
_NEG_M_OVER_L = LaurentPoly.monomial(-1, 1, -1)
_NEG_LM = LaurentPoly.monomial(1, 1, -1)


class HomflyError(DiagramError):
    pass


def _max_crossings() -> int:
    return int(os.environ.get("BONDSKEIN_MAX_CROSSINGS", "20"))


def skein_coefficients(sign: int) -> tuple[LaurentPoly, LaurentPoly]:
    """``(a, b)`` with ``P(D) = a P(D switched) + b P(D smoothed)`` at a crossing of sign ``sign``."""
    if sign > 0:
        return _NEG_L_INV2, _NEG_M_OVER_L
    return _NEG_L2, _NEG_LM


def homfly(d: BondedDiagram, *, cache: dict | None = None) -> LaurentPoly:
    """HOMFLYPT polynomial of a bond-free diagram."""
    if d.n_bonds:
        raise HomflyError("diagram has bonds; use bonded.rigid_invariant or bonded.nonrigid_invariant")
    d = simplify(d)
    limit = _max_crossings()
    if d.n_crossings > limit:
        raise HomflyError(
            f"diagram has {d.n_crossings} crossings after R1/R2 reduction, "
            f"above BONDSKEIN_MAX_CROSSINGS={limit}"
        )
    return _homfly(d, {} if cache is None else cache)


def _homfly(d: BondedDiagram, cache: dict) -> LaurentPoly:
    d = simplify(d)
    parts = d.connected_parts()
    pieces = len(parts) + d.free_loops
    if pieces == 0:
        raise HomflyError("empty diagram")
    result = DELTA ** (pieces - 1)
    if len(parts) == 1 and d.free_loops == 0:
        return _connected(d, cache)
    for p in parts:
        result = result * _connected(d.restrict(p), cache)
    return result


def _connected(d: BondedDiagram, cache: dict) -> LaurentPoly:
    key = d.canonical_code()
    hit = cache.get(key)
    if hit is not None:
        return hit
    value = _descend(d, cache)
    cache[key] = value
    return value


def _bad_crossings(d: BondedDiagram) -> list[str]:
    """Crossings first reached on the under-strand, in traversal order."""
    seen: set[str] = set()
    bad = []
    for comp in d.link_components():
        for e in comp:
            sid, k = d.where((e, 1))
            if d.site(sid).kind != CROSSING or sid in seen:
                continue
            seen.add(sid)
            if not d.is_over(sid, k):
                bad.append(sid)
    return bad


def _descend(d: BondedDiagram, cache: dict) -> LaurentPoly:
    n_comp = len(d.link_components())
    total = ZERO
    coeff = ONE
    cur = d
    for x in _bad_crossings(d):
        a, b = skein_coefficients(cur.crossing_sign(x))
        total = total + coeff * b * _homfly(smooth_crossing(cur, x), cache)
        coeff = coeff * a
        cur = switch_crossing(cur, x)
    return total + coeff * DELTA ** (n_comp - 1)
