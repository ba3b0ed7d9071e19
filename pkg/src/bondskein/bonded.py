"""Skein-module invariants of colored bonded links.

The rigid invariant expands every bond into four classical diagrams, each
tagged with one of the generators Theta, ThetaBar, H, HBar of the bond's
color, and evaluates the residual classical diagram with HOMFLYPT. The
non-rigid invariant uses a single Theta-term per bond. Results live in
the free module over the rational functions in ``l, m`` spanned by
multisets of colored generators.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .bpd import parse_bpd
from .diagram import (
    BondedDiagram,
    BondKind,
    DiagramError,
    Smoothing,
    classify_bond,
    natural_key,
    smooth_bond,
    underlying_link,
)
from .homflypt import homfly
from .moves import isolate_all, isolate_bond
from .ring import D_POLY, DELTA, LaurentPoly, RatFunc

__all__ = [
    "GeneratorKind",
    "Generator",
    "Multiset",
    "InvariantElement",
    "generator_fixture",
    "cut_bond",
    "rigid_invariant",
    "nonrigid_invariant",
    "nonrigid_closed_form",
    "g_map",
    "g_table",
    "freeness_matrix",
    "freeness_determinant",
    "FREENESS_DETERMINANT",
]


class GeneratorKind(str, Enum):
    THETA = "Theta"
    THETA_BAR = "ThetaBar"
    H = "H"
    H_BAR = "HBar"


_KIND_RANK = {k: i for i, k in enumerate(GeneratorKind)}
_LATEX = {
    GeneratorKind.THETA: r"\Theta",
    GeneratorKind.THETA_BAR: r"\bar{\Theta}",
    GeneratorKind.H: r"H",
    GeneratorKind.H_BAR: r"\bar{H}",
}


@dataclass(frozen=True)
class Generator:
    kind: GeneratorKind
    color: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", GeneratorKind(self.kind))
        if self.color < 1:
            raise ValueError("generator colors are positive integers")

    def sort_key(self) -> tuple[int, int]:
        return self.color, _KIND_RANK[self.kind]

    def __lt__(self, other: "Generator") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"{self.kind.value}_{self.color}"

    def latex(self) -> str:
        return f"{_LATEX[self.kind]}_{{{self.color}}}"


Multiset = tuple[Generator, ...]


def multiset(gens: Iterable[Generator]) -> Multiset:
    return tuple(sorted(gens, key=Generator.sort_key))


class InvariantElement:
    """Finite sum of ``coefficient * multiset`` in the rigid or non-rigid basis.

    The empty multiset stands for the bond-free case. Terms with zero
    coefficient are dropped, so equality is equality of the sums.
    """

    def __init__(self, basis: str, terms: Mapping[Multiset, RatFunc | LaurentPoly | int] = ()):
        if basis not in ("rigid", "nonrigid"):
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        acc: dict[Multiset, RatFunc] = {}
        for ms, c in dict(terms).items():
            key = multiset(ms)
            acc[key] = acc.get(key, RatFunc(0)) + c
        self.terms = {k: v for k, v in acc.items() if not v.is_zero()}

    def __getitem__(self, ms: Iterable[Generator]) -> RatFunc:
        return self.terms.get(multiset(ms), RatFunc(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantElement):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __add__(self, other: "InvariantElement") -> "InvariantElement":
        if self.basis != other.basis:
            raise ValueError("cannot add elements of different bases")
        merged = dict(self.terms)
        for k, v in other.terms.items():
            merged[k] = merged.get(k, RatFunc(0)) + v
        return InvariantElement(self.basis, merged)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> list[tuple[Multiset, RatFunc]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), [g.sort_key() for g in kv[0]]))

    def degrees(self) -> set[int]:
        return {len(ms) for ms in self.terms}

    def color_profiles(self) -> set[tuple[int, ...]]:
        return {tuple(sorted(g.color for g in ms)) for ms in self.terms}

    def evaluate(self, l0, m0) -> dict[Multiset, Fraction]:
        return {ms: c.evaluate(l0, m0) for ms, c in self.items()}

    # -- rendering --

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for ms, c in self.items():
            label = " ".join(str(g) for g in ms) if ms else "1"
            parts.append(f"({c}) * [{label}]")
        return "\n+ ".join(parts)

    def __repr__(self) -> str:
        return f"InvariantElement({self.basis!r}, {len(self.terms)} terms)"

    def latex(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for ms, c in self.items():
            label = " ".join(g.latex() for g in ms) if ms else r"\emptyset"
            parts.append(rf"\left({c.latex()}\right) {label}")
        return " + ".join(parts)

    def to_json(self) -> dict[str, Any]:
        terms = []
        for ms, c in self.items():
            counts = Counter(ms)
            terms.append(
                {
                    "multiset": [
                        {"kind": g.kind.value, "color": g.color, "mult": counts[g]}
                        for g in sorted(counts, key=Generator.sort_key)
                    ],
                    "num": str(c.num),
                    "den": str(c.den),
                }
            )
        return {"basis": self.basis, "terms": terms}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, obj: dict[str, Any] | str) -> "InvariantElement":
        if isinstance(obj, str):
            obj = json.loads(obj)
        terms: dict[Multiset, RatFunc] = {}
        for t in obj["terms"]:
            gens = []
            for g in t["multiset"]:
                gens.extend([Generator(GeneratorKind(g["kind"]), int(g["color"]))] * int(g["mult"]))
            c = RatFunc(LaurentPoly.parse(t["num"]), LaurentPoly.parse(t["den"]))
            key = multiset(gens)
            terms[key] = terms.get(key, RatFunc(0)) + c
        return cls(obj["basis"], terms)


# -- generator diagrams ------------------------------------------------------

_FIXTURES = {
    # circle with a chord
    "Theta": """
        comp k : a c
        bond s color {c} : s1
        v p ( s1.0 , c.1 , a.0 )
        v q ( s1.1 , a.1 , c.0 )
    """,
    # two circles of the same rotation joined by a bond
    "H": """
        comp k1 : p
        comp k2 : q
        bond s color {c} : s1
        v u ( s1.0 , p.0 , p.1 )
        v w ( s1.1 , q.0 , q.1 )
    """,
    # two circles of opposite rotation joined by a bond
    "HBar": """
        comp k1 : p
        comp k2 : q
        bond s color {c} : s1
        v u ( s1.0 , p.0 , p.1 )
        v w ( s1.1 , q.1 , q.0 )
    """,
    # figure-eight curve, bond across the two strands entering its crossing
    "ThetaBar": """
        comp k : u r t w
        bond s color {c} : s1
        x x1 ( r.0 , t.1 , u.1 , w.0 ) over {o}
        v p ( s1.0 , w.1 , u.0 )
        v q ( s1.1 , t.0 , r.1 )
    """,
}


def generator_fixture(kind: str, color: int = 1) -> BondedDiagram:
    """Diagram of a generator: ``Theta``, ``ThetaBar``, ``H``, ``HBar``.

    ``ThetaBarStar`` is ThetaBar with its crossing switched.
    """
    kind = GeneratorKind(kind).value if kind != "ThetaBarStar" else kind
    if kind == "ThetaBarStar":
        text = _FIXTURES["ThetaBar"].format(c=color, o=1)
    else:
        text = _FIXTURES[kind].format(c=color, o=0)
    return parse_bpd(text)


# -- rigid expansion --------------------------------------------------------

_ONE_PLUS_L2 = LaurentPoly({(0, 0): 1, (2, 0): 1})
_C_MAIN = RatFunc(LaurentPoly.monomial(2, 2), D_POLY)
_C_SIDE = RatFunc(LaurentPoly.monomial(3, 3), _ONE_PLUS_L2 * D_POLY)
_C_NONRIGID = RatFunc(LaurentPoly.monomial(1, 1, -1), _ONE_PLUS_L2)

_CUTS = {
    BondKind.ANTIPARALLEL: (
        (Smoothing.ZERO, GeneratorKind.H, _C_MAIN),
        (Smoothing.ZERO, GeneratorKind.THETA, _C_SIDE),
        (Smoothing.INFINITY, GeneratorKind.THETA, _C_MAIN),
        (Smoothing.INFINITY, GeneratorKind.H, _C_SIDE),
    ),
    BondKind.PARALLEL: (
        (Smoothing.ZERO, GeneratorKind.H_BAR, _C_MAIN),
        (Smoothing.ZERO, GeneratorKind.THETA_BAR, _C_SIDE),
        (Smoothing.NEG_CROSSING, GeneratorKind.THETA_BAR, _C_MAIN),
        (Smoothing.NEG_CROSSING, GeneratorKind.H_BAR, _C_SIDE),
    ),
}


def cut_bond(d: BondedDiagram, bond: str) -> list[tuple[BondedDiagram, Generator, RatFunc]]:
    """Four-term expansion of one crossing-free bond.

    Each term is ``(diagram without the bond, generator, coefficient)``.
    """
    cls = classify_bond(d, bond)
    color = d.colors[bond]
    smoothed: dict[Smoothing, BondedDiagram] = {}
    out = []
    for sm, kind, coeff in _CUTS[cls]:
        if sm not in smoothed:
            smoothed[sm] = smooth_bond(d, bond, sm)
        out.append((smoothed[sm], Generator(kind, color), coeff))
    return out


def _cut_order(d: BondedDiagram, order: Sequence[str] | None) -> list[str]:
    bonds = d.bond_ids()
    if order is None:
        return bonds
    order = list(order)
    if sorted(order, key=natural_key) != bonds:
        raise DiagramError("cut order must list every bond exactly once")
    return order


def rigid_invariant(
    d: BondedDiagram, *, order: Sequence[str] | None = None, cache: dict | None = None
) -> InvariantElement:
    """Rigid-vertex invariant of ``d`` in the basis of generator multisets.

    Bonds are isolated first, then cut one at a time in ``order``
    (ascending bond id by default).
    """
    cache = {} if cache is None else cache
    d = isolate_all(d)
    bonds = _cut_order(d, order)
    if not bonds:
        return InvariantElement("rigid", {(): homfly(d, cache=cache)})
    # leaves: classical diagram -> {multiset: coefficient}
    frontier: list[tuple[BondedDiagram, tuple[Generator, ...], RatFunc]] = [(d, (), RatFunc(1))]
    for bond in bonds:
        nxt = []
        for diag, gens, coeff in frontier:
            for sub, g, c in cut_bond(diag, bond):
                nxt.append((sub, gens + (g,), coeff * c))
        frontier = nxt
    acc: dict[Multiset, RatFunc] = {}
    for diag, gens, coeff in frontier:
        key = multiset(gens)
        acc[key] = acc.get(key, RatFunc(0)) + coeff * homfly(diag, cache=cache)
    return InvariantElement("rigid", {k: v * DELTA for k, v in acc.items()})


def nonrigid_invariant(d: BondedDiagram, *, cache: dict | None = None) -> InvariantElement:
    """Non-rigid invariant: each bond becomes ``-lm/(1+l^2)`` times its Zero smoothing."""
    d = isolate_all(d)
    bonds = d.bond_ids()
    value = homfly(underlying_link(d), cache=cache)
    if not bonds:
        return InvariantElement("nonrigid", {(): value})
    gens = multiset(Generator(GeneratorKind.THETA, d.colors[b]) for b in bonds)
    return InvariantElement("nonrigid", {gens: _C_NONRIGID ** len(bonds) * value * DELTA})


def nonrigid_closed_form(d: BondedDiagram, *, cache: dict | None = None) -> InvariantElement:
    """Closed form ``(-1)^(d+1) (lm)^(d-1) (1+l^2)^(1-d) P(underlying link)``."""
    d = isolate_all(d)
    n = d.n_bonds
    value = homfly(underlying_link(d), cache=cache)
    if n == 0:
        return InvariantElement("nonrigid", {(): value})
    sign = 1 if (n + 1) % 2 == 0 else -1
    coeff = RatFunc(LaurentPoly.monomial(n - 1, n - 1, sign)) * RatFunc(_ONE_PLUS_L2) ** (1 - n)
    gens = multiset(Generator(GeneratorKind.THETA, d.colors[b]) for b in d.bond_ids())
    return InvariantElement("nonrigid", {gens: coeff * value})


# -- functionals on generators -----------------------------------------------

G_MAPS = ("g0", "gInf", "gPlus", "gMinus")

_G_RULE = {
    "g0": {BondKind.ANTIPARALLEL: Smoothing.ZERO, BondKind.PARALLEL: Smoothing.ZERO},
    "gInf": {BondKind.ANTIPARALLEL: Smoothing.INFINITY, BondKind.PARALLEL: None},
    "gPlus": {BondKind.ANTIPARALLEL: None, BondKind.PARALLEL: Smoothing.POS_CROSSING},
    "gMinus": {BondKind.ANTIPARALLEL: None, BondKind.PARALLEL: Smoothing.NEG_CROSSING},
}


def g_map(d: BondedDiagram, bond: str, which: str) -> BondedDiagram | None:
    """Replace ``bond`` by the local resolution chosen by map ``which``.

    ``None`` marks the zero value (the map kills bonds of that class).
    """
    if which not in _G_RULE:
        raise ValueError(f"unknown map {which!r}; expected one of {', '.join(G_MAPS)}")
    d = isolate_bond(d, bond)
    sm = _G_RULE[which][classify_bond(d, bond)]
    if sm is None:
        return None
    return smooth_bond(d, bond, sm)


def g_value(d: BondedDiagram, bond: str, which: str, *, cache: dict | None = None) -> LaurentPoly:
    out = g_map(d, bond, which)
    if out is None:
        return LaurentPoly()
    return homfly(out, cache=cache)


def g_table(color: int = 1) -> dict[str, dict[str, LaurentPoly]]:
    """``table[map][generator]`` evaluated on the generator diagrams."""
    cache: dict = {}
    table = {}
    for which in G_MAPS:
        row = {}
        for kind in GeneratorKind:
            row[kind.value] = g_value(generator_fixture(kind.value, color), "s", which, cache=cache)
        table[which] = row
    return table


def freeness_matrix(color: int = 1) -> list[list[RatFunc]]:
    """Rows ``g0, gInf, gPlus, gMinus``; columns ``Theta, ThetaBar, H, HBar``."""
    table = g_table(color)
    return [[RatFunc(table[w][k.value]) for k in GeneratorKind] for w in G_MAPS]


def _det(mat: list[list[RatFunc]]) -> RatFunc:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = RatFunc(0)
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def freeness_determinant(color: int = 1) -> RatFunc:
    return _det(freeness_matrix(color))


# l^-5 m^-3 (l^2 + lm + 1)^2 (l^2 - lm + 1)^2
FREENESS_DETERMINANT = RatFunc(
    LaurentPoly({(2, 0): 1, (1, 1): 1, (0, 0): 1}) ** 2
    * LaurentPoly({(2, 0): 1, (1, 1): -1, (0, 0): 1}) ** 2
    * LaurentPoly.monomial(-5, -3)
)
