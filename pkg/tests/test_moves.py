from collections import Counter

import pytest

from bondskein.bonded import generator_fixture, nonrigid_invariant, rigid_invariant
from bondskein.diagram import BOND, validate
from bondskein.homflypt import homfly
from bondskein.moves import (
    MoveError,
    MoveSpec,
    apply_move,
    apply_move_traced,
    apply_script,
    find_r1,
    isolate_all,
    isolate_bond,
    parse_move,
    parse_script,
    r1_add,
    r1_remove,
    random_isotopy,
    rv_twist,
    rv_untwist,
    simplify,
    vertex_slide_in,
    vertex_slide_out,
    vertex_twist,
    vertex_untwist,
)
from bondskein.reference import load_data
from bondskein.samples import random_bonded_diagram, random_link


def test_spec_text_round_trip():
    m = parse_move("V forward at v3 e1 e2 over=second")
    assert m == MoveSpec("V", "forward", ("v3", "e1", "e2"), (("over", "second"),))
    assert parse_move(str(m)) == m


@pytest.mark.parametrize("bad", ["IV forward v3 x7", "Q forward at v1", "IV sideways at v1 x1"])
def test_bad_move_lines(bad):
    with pytest.raises(MoveError):
        parse_move(bad)


def test_script_comments():
    moves = parse_script("# isolate\nIV forward at q c1  # first\n\nI backward at x9\n")
    assert [m.move for m in moves] == ["IV", "I"]


def test_mismatched_site_raises():
    d = load_data("trefoil")
    with pytest.raises(MoveError):
        apply_move(d, parse_move("I backward at c1"))
    with pytest.raises(MoveError):
        apply_move(d, parse_move("II backward at c1 c2"))


def test_r1_round_trip():
    d = load_data("trefoil")
    kinked = r1_add(d, "e1", side=-1, over_first=False)
    assert kinked.n_crossings == 4
    (x, k) = next(iter(find_r1(kinked)))
    assert r1_remove(kinked, x, k).canonical_code() == d.canonical_code()
    assert homfly(kinked) == homfly(d)


def test_slide_round_trip():
    d = load_data("knotB")
    v, j = next((s.id, k) for s in d.vertices() for k, (e, _) in enumerate(s.ends) if d.edge(e).kind == BOND)
    out = vertex_slide_out(d, v, j)
    assert vertex_slide_in(out, v, j).canonical_code() == d.canonical_code()


def test_twist_round_trips():
    d = generator_fixture("Theta")
    for k in range(3):
        for over_first in (True, False):
            t = vertex_twist(d, "p", k, over_first=over_first)
            assert not validate(t)
            assert vertex_untwist(t, "p", k).canonical_code() == d.canonical_code()
    for hand in (1, -1):
        assert rv_untwist(rv_twist(d, "s", hand=hand), "s").canonical_code() == d.canonical_code()


def test_twist_separates_categories():
    # one twist at a bond end: the rigid class changes, the non-rigid one does not
    d = generator_fixture("Theta")
    j = next(k for k, (e, _) in enumerate(d.site("p").ends) if d.edge(e).kind == BOND)
    t = vertex_twist(d, "p", j, over_first=True)
    assert rigid_invariant(t) != rigid_invariant(d)
    assert nonrigid_invariant(t) == nonrigid_invariant(d)


def test_rv_preserves_rigid_class():
    for name in ("Theta", "ThetaBar", "H", "HBar"):
        d = generator_fixture(name)
        for hand in (1, -1):
            assert rigid_invariant(rv_twist(d, "s", hand=hand)) == rigid_invariant(d)


@pytest.mark.parametrize("seed", range(40))
def test_every_move_has_an_inverse(seed):
    d = random_bonded_diagram(seed)
    trace = []
    random_isotopy(d, seed, 25, rigid=seed % 2 == 0, trace=trace)
    cur = d
    for m in trace:
        nxt, back = apply_move_traced(cur, m)
        assert not validate(nxt), str(m)
        if back is not None:
            assert apply_move(nxt, back).canonical_code() == cur.canonical_code(), str(m)
        cur = nxt


def test_all_move_kinds_are_exercised():
    seen = Counter()
    for seed in range(40):
        trace = []
        random_isotopy(random_bonded_diagram(seed), seed, 25, rigid=False, trace=trace)
        seen.update((m.move, m.direction) for m in trace)
    for mv in ("I", "II", "IV", "IVp", "V", "RV"):
        assert seen[(mv, "forward")] and seen[(mv, "backward")], mv
    # III is its own inverse up to the slot label
    assert seen[("III", "forward")]


@pytest.mark.parametrize("seed", range(10))
def test_random_isotopy_is_deterministic(seed):
    d = random_bonded_diagram(seed)
    trace = []
    a = random_isotopy(d, seed, 30, trace=trace)
    b = random_isotopy(d, seed, 30)
    assert a == b
    assert apply_script(d, parse_script("\n".join(map(str, trace)))) == a


def test_rigid_set_avoids_bond_kinks_and_twists():
    for seed in range(30):
        trace = []
        d = random_bonded_diagram(seed)
        random_isotopy(d, seed, 30, rigid=True, trace=trace)
        assert all(m.move != "V" for m in trace)


@pytest.mark.parametrize("seed", range(25))
def test_isolation(seed):
    d = random_isotopy(random_bonded_diagram(seed), seed, 30)
    iso = isolate_all(d)
    assert not validate(iso)
    assert all(iso.is_crossing_free(b) for b in iso.bond_ids())
    assert isolate_all(iso) == iso
    assert isolate_all(d) == iso


def test_isolate_knot_b():
    iso = isolate_bond(load_data("knotB"), "s")
    assert iso.is_crossing_free("s")
    assert rigid_invariant(iso) == rigid_invariant(load_data("knotB"))


@pytest.mark.parametrize("seed", range(15))
def test_simplify_preserves_homfly(seed):
    import random

    d = random_link(random.Random(seed), 7)
    assert homfly(simplify(d)) == homfly(d)
    assert simplify(d).n_crossings <= d.n_crossings
