"""Bundled diagrams and their known invariant values.

``checks()`` evaluates every fixture and yields one ``Check`` per
acceptance criterion; the CLI ``selftest`` command and the acceptance
test module both consume it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterator

from .bonded import (
    FREENESS_DETERMINANT,
    G_MAPS,
    Generator,
    GeneratorKind,
    InvariantElement,
    freeness_determinant,
    g_value,
    generator_fixture,
    nonrigid_closed_form,
    nonrigid_invariant,
    rigid_invariant,
)
from .bpd import parse_bpd
from .diagram import BondedDiagram
from .homflypt import homfly
from .ring import LaurentPoly, RatFunc

__all__ = [
    "Check",
    "checks",
    "data_path",
    "data_names",
    "load_data",
    "HOMFLY_VALUES",
    "RIGID_VALUES",
    "NONRIGID_VALUES",
    "TABLE_VALUES",
    "performance_diagram",
]


def data_path(name: str):
    """Path of a bundled ``.bpd`` file (the suffix is optional)."""
    if not name.endswith(".bpd"):
        name += ".bpd"
    return resources.files("bondskein") / "data" / name


def data_names() -> list[str]:
    return sorted(p.name[:-4] for p in (resources.files("bondskein") / "data").iterdir() if p.name.endswith(".bpd"))


def load_data(name: str) -> BondedDiagram:
    return parse_bpd(data_path(name).read_text())


HOMFLY_VALUES = {
    "unknot": "1",
    "unlink2": "-l*m^-1 - l^-1*m^-1",
    "trefoil": "l^-2*m^2 - 2*l^-2 - l^-4",
    "hopf": "l^-1*m^-1 - l^-1*m + l^-3*m^-1",
    "l7n1": "-l^3*m + 2*l^3*m^-1 + l*m^3 - 4*l*m + 3*l*m^-1 - l^-1*m + l^-1*m^-1",
}

_TB = Generator(GeneratorKind.THETA_BAR, 1)
_HB = Generator(GeneratorKind.H_BAR, 1)
_T = Generator(GeneratorKind.THETA, 1)

RIGID_VALUES = {
    "knotA": {(_TB,): "(m^2 - 1)*l^-2", (_HB,): "l^-3*m"},
    "knotB": {(_TB,): "l^2*m^2 - 2*l^2 + m^2 - 1", (_HB,): "l*m^3 - 2*l*m"},
}

NONRIGID_VALUES = {
    "knotA": {(_T,): "l^-2*m^2 - 2*l^-2 - l^-4"},
    "knotB": {(_T,): "1"},
}

_DELTA = "-(l + l^-1)/m"
TABLE_VALUES = {
    "g0": {"Theta": "1", "ThetaBar": "1", "H": _DELTA, "HBar": _DELTA},
    "gInf": {"Theta": _DELTA, "ThetaBar": "0", "H": "1", "HBar": "0"},
    "gPlus": {"Theta": "0", "ThetaBar": "(l^2 - m^2*l^2 + 1)/(l^3*m)", "H": "0", "HBar": "1"},
    "gMinus": {"Theta": "0", "ThetaBar": _DELTA, "H": "0", "HBar": "1"},
}


def _element(basis: str, values: dict) -> InvariantElement:
    return InvariantElement(basis, {ms: RatFunc.parse(v) for ms, v in values.items()})


@dataclass
class Check:
    criterion: int
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] criterion {self.criterion}: {self.name}{extra} [{self.seconds:.2f}s]"


def _timed(criterion: int, name: str, fn: Callable[[], tuple[bool, str]], limit: float | None = None) -> Check:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its message
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok, detail = False, f"{detail}; took {dt:.2f}s, limit {limit}s".lstrip("; ")
    return Check(criterion, name, ok, detail, dt)


def performance_diagram() -> BondedDiagram:
    """Three bonds, two of them crossed, on a nine-crossing knot."""
    return load_data("threebond")


def _c1(name: str) -> Callable[[], tuple[bool, str]]:
    def run():
        got = homfly(load_data(name))
        return got == LaurentPoly.parse(HOMFLY_VALUES[name]), str(got)

    return run


def _rigid(name: str):
    def run():
        got = rigid_invariant(load_data(name))
        return got == _element("rigid", RIGID_VALUES[name]), _render(got)

    return run


def _render(el: InvariantElement) -> str:
    return " + ".join(f"({c})*{'*'.join(str(g) for g in ms)}" for ms, c in el.items())


def _c3():
    a, b, c = (rigid_invariant(load_data(n)) for n in ("knotA", "knotB", "knotC"))
    return b == c and a != b, f"B==C {b == c}, A!=B {a != b}"


def _c4(name: str):
    def run():
        d = load_data(name)
        got = nonrigid_invariant(d)
        ok = got == _element("nonrigid", NONRIGID_VALUES[name]) and got == nonrigid_closed_form(d)
        return ok, _render(got)

    return run


def _c4_closed():
    names = ["knotA", "knotB", "knotC"]
    bad = [n for n in names if nonrigid_invariant(load_data(n)) != nonrigid_closed_form(load_data(n))]
    d = performance_diagram()
    if nonrigid_invariant(d) != nonrigid_closed_form(d):
        bad.append("three-bond")
    return not bad, "mismatch: " + ", ".join(bad) if bad else "knotA-C and three-bond agree"


def _c5():
    cache: dict = {}
    wrong = []
    for which in G_MAPS:
        for kind in GeneratorKind:
            got = RatFunc(g_value(generator_fixture(kind.value), "s", which, cache=cache))
            if got != RatFunc.parse(TABLE_VALUES[which][kind.value]):
                wrong.append(f"{which}({kind.value})={got}")
    return not wrong, "; ".join(wrong) if wrong else "16/16 entries"


def _c6():
    det = freeness_determinant()
    spot = det.evaluate(2, 1)
    return det == FREENESS_DETERMINANT and spot == Fraction(441, 32), f"det(2,1) = {spot}"


def _c7():
    wrong = []
    for kind in GeneratorKind:
        got = rigid_invariant(generator_fixture(kind.value))
        if got != InvariantElement("rigid", {(Generator(kind, 1),): RatFunc(1)}):
            wrong.append(kind.value)
    star = rigid_invariant(generator_fixture("ThetaBarStar"))
    if star != _element("rigid", {(_TB,): "-l^2", (_HB,): "-l*m"}):
        wrong.append("ThetaBarStar")
    return not wrong, "wrong: " + ", ".join(wrong) if wrong else "unit vectors; ThetaBarStar = -l^2*ThetaBar - l*m*HBar"


def _c9():
    d = performance_diagram()
    inv = rigid_invariant(d)
    ok = d.n_bonds == 3 and d.n_crossings <= 10 and len(inv.terms) > 0
    return ok, f"{d.n_crossings} crossings, {d.n_bonds} bonds, {len(inv.terms)} terms"


def checks(*, include_performance: bool = True) -> Iterator[Check]:
    """Evaluate the reference fixtures; one ``Check`` per fixture."""
    for name in HOMFLY_VALUES:
        yield _timed(1, f"homfly {name}", _c1(name), limit=1.0)
    for name in RIGID_VALUES:
        yield _timed(2, f"rigid invariant of {name}", _rigid(name), limit=2.0)
    yield _timed(3, "rigid B equals rigid C, differs from rigid A", _c3)
    for name in NONRIGID_VALUES:
        yield _timed(4, f"non-rigid invariant of {name}", _c4(name))
    yield _timed(4, "closed form agrees with the engine", _c4_closed)
    yield _timed(5, "g-map table on generators", _c5)
    yield _timed(6, "freeness determinant", _c6)
    yield _timed(7, "generator idempotence", _c7)
    if include_performance:
        yield _timed(9, "three-bond rigid invariant", _c9, limit=5.0)
