"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random
import time
from itertools import permutations

import pytest
from conftest import ACCEPTANCE_LINES

from bondskein.bonded import nonrigid_invariant, rigid_invariant
from bondskein.diagram import iter_link_crossings, smooth_crossing, switch_crossing
from bondskein.homflypt import homfly
from bondskein.moves import random_isotopy
from bondskein.reference import checks, load_data
from bondskein.ring import DELTA, L, M, LaurentPoly, RatFunc
from bondskein.samples import braid_closure, random_bonded_diagram, random_link

TITLES = {
    1: "HOMFLYPT fixtures",
    2: "rigid invariants of knots A and B",
    3: "rigid B equals rigid C, rigid A differs",
    4: "non-rigid invariants and closed form",
    5: "g-map table, 16 entries",
    6: "freeness determinant",
    7: "generator idempotence",
    8: "seeded property suites",
    9: "three-bond performance",
    10: "toxin reproductions (stretch)",
}

_RESULTS = {}


def _fixture_results():
    if not _RESULTS:
        for c in checks():
            _RESULTS.setdefault(c.criterion, []).append(c)
    return _RESULTS


def report(capsys, n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def _fixture_criterion(n, capsys):
    results = _fixture_results()[n]
    bad = [c.line() for c in results if not c.ok]
    slowest = max(c.seconds for c in results)
    detail = "; ".join(bad) if bad else f"{len(results)} checks, slowest {slowest:.2f}s"
    report(capsys, n, not bad, detail)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_fixture_criterion(n, capsys):
    _fixture_criterion(n, capsys)


def _move_invariance(n_diagrams, moves):
    for seed in range(n_diagrams):
        d = random_bonded_diagram(seed, max_crossings=8, max_bonds=3)
        rigid = rigid_invariant(d)
        if rigid_invariant(random_isotopy(d, seed, moves, rigid=True)) != rigid:
            return f"rigid invariant changed on seed {seed}"
        loose = nonrigid_invariant(d)
        if nonrigid_invariant(random_isotopy(d, seed + 10_000, moves, rigid=False)) != loose:
            return f"non-rigid invariant changed on seed {seed}"
        profile = tuple(sorted(d.colors.values()))
        for inv in (rigid, loose):
            if inv.degrees() != {d.n_bonds} or inv.color_profiles() != {profile}:
                return f"grading or colors broken on seed {seed}"
    return None


def _skein(n_diagrams):
    for seed in range(n_diagrams):
        d = random_link(random.Random(seed), 7)
        cache = {}
        for s in iter_link_crossings(d):
            flip = switch_crossing(d, s.id)
            plus, minus = (d, flip) if d.crossing_sign(s.id) > 0 else (flip, d)
            total = (
                L * homfly(plus, cache=cache)
                + LaurentPoly.monomial(-1, 0) * homfly(minus, cache=cache)
                + M * homfly(smooth_crossing(d, s.id), cache=cache)
            )
            if not total.is_zero():
                return f"skein identity fails on seed {seed} at {s.id}"
    return None


def _cut_orders(n_diagrams):
    for seed in range(n_diagrams):
        d = random_isotopy(random_bonded_diagram(seed), seed, 12)
        cache = {}
        base = rigid_invariant(d, cache=cache)
        for order in permutations(d.bond_ids()):
            if rigid_invariant(d, order=order, cache=cache) != base:
                return f"cut order matters on seed {seed}"
    return None


def _disjoint(n_pairs):
    rng = random.Random(1)
    for _ in range(n_pairs):
        left = [rng.choice([1, -1]) for _ in range(rng.randint(1, 5))]
        right = [rng.choice([3, -3]) for _ in range(rng.randint(1, 5))]
        both = homfly(braid_closure(left + right, 4))
        parts = homfly(braid_closure(left, 2)) * homfly(braid_closure([g // 3 for g in right], 2))
        if both != DELTA * parts:
            return f"disjoint union fails for {left} {right}"
    return None


def test_criterion_8(capsys):
    t0 = time.perf_counter()
    problems = [
        p
        for p in (_move_invariance(200, 30), _skein(100), _cut_orders(60), _disjoint(30))
        if p is not None
    ]
    dt = time.perf_counter() - t0
    if dt >= 600:
        problems.append(f"took {dt:.0f}s")
    detail = "; ".join(problems) if problems else (
        f"200 diagrams x 30 moves both categories, 100 skein, 60 cut-order, 30 unions in {dt:.0f}s"
    )
    report(capsys, 8, not problems, detail)


def test_criterion_9(capsys):
    _fixture_criterion(9, capsys)


def test_criterion_10(capsys):
    # the non-rigid toxin values only need an unknotted backbone with three bonds
    coeff = RatFunc.parse("l^2*m^2/(1 + l^2)^2")
    d = load_data("threechords")
    got = {
        "Theta_2^2 Theta_3": nonrigid_invariant(d),
        "Theta_3^3": nonrigid_invariant(d.with_colors({b: 3 for b in d.bond_ids()})),
    }
    partial = all(list(inv.terms.values()) == [coeff] for inv in got.values())
    line = (
        f"criterion 10: SKIP  {TITLES[10]}  [figure diagrams not transcribable; "
        f"non-rigid stand-in values {'match' if partial else 'DO NOT match'}: {', '.join(got)}]"
    )
    ACCEPTANCE_LINES.append(line)
    with capsys.disabled():
        print("\n" + line)
    assert partial, line
    pytest.skip("stretch goal: rigid toxin coefficient lists need the figure diagrams")
