import json
from fractions import Fraction
from itertools import permutations

import pytest

from bondskein.bonded import (
    Generator,
    GeneratorKind,
    InvariantElement,
    cut_bond,
    g_map,
    generator_fixture,
    multiset,
    nonrigid_closed_form,
    nonrigid_invariant,
    rigid_invariant,
)
from bondskein.diagram import BondKind, DiagramError, classify_bond
from bondskein.homflypt import homfly
from bondskein.moves import isolate_all, random_isotopy
from bondskein.reference import load_data
from bondskein.ring import DELTA, RatFunc
from bondskein.samples import chord_diagram, random_bonded_diagram

K = GeneratorKind


def to_nonrigid(el: InvariantElement) -> InvariantElement:
    """Image under Theta-bar -> Theta and H, H-bar -> delta * Theta."""
    out = {}
    for ms, c in el.items():
        factor = RatFunc(1)
        gens = []
        for g in ms:
            if g.kind in (K.H, K.H_BAR):
                factor = factor * DELTA
            gens.append(Generator(K.THETA, g.color))
        key = multiset(gens)
        out[key] = out.get(key, RatFunc(0)) + c * factor
    return InvariantElement("nonrigid", out)


def test_generator_shapes():
    theta = generator_fixture("Theta")
    assert (theta.n_crossings, theta.n_bonds) == (0, 1)
    bar = generator_fixture("ThetaBar", 3)
    assert bar.n_crossings == 1 and bar.colors == {"s": 3}
    assert classify_bond(generator_fixture("HBar"), "s") is BondKind.PARALLEL


def test_cut_theta():
    terms = cut_bond(generator_fixture("Theta"), "s")
    assert len(terms) == 4
    loops = sorted((t[0].free_loops, t[1].kind.value) for t in terms)
    assert loops == [(1, "H"), (1, "Theta"), (2, "H"), (2, "Theta")]


def test_cut_knot_a_uses_trefoil_and_hopf():
    values = {str(homfly(sub)) for sub, _, _ in cut_bond(load_data("knotA"), "s")}
    assert values == {str(homfly(load_data("trefoil"))), str(homfly(load_data("hopf")))}


def test_cut_requires_isolated_bond():
    with pytest.raises(DiagramError):
        cut_bond(load_data("knotB"), "s")


def test_knot_b_numeric_pin():
    inv = rigid_invariant(load_data("knotB"))
    assert inv[[Generator(K.THETA_BAR, 1)]].evaluate(2, 1) == -4
    assert inv[[Generator(K.H_BAR, 1)]].evaluate(2, 1) == -2


def test_generators_are_fixed_points_in_every_color():
    for color in (1, 2, 5):
        for kind in K:
            inv = rigid_invariant(generator_fixture(kind.value, color))
            assert inv == InvariantElement("rigid", {(Generator(kind, color),): 1})


@pytest.mark.parametrize("seed", range(30))
def test_cut_order_independence(seed):
    d = random_isotopy(random_bonded_diagram(seed), seed, 10)
    cache = {}
    base = rigid_invariant(d, cache=cache)
    for order in permutations(d.bond_ids()):
        assert rigid_invariant(d, order=order, cache=cache) == base


@pytest.mark.parametrize("seed", range(40))
def test_grading_and_colors(seed):
    d = random_isotopy(random_bonded_diagram(seed, colors=(1, 2, 3)), seed, 15)
    profile = tuple(sorted(d.colors.values()))
    for inv in (rigid_invariant(d), nonrigid_invariant(d)):
        assert inv.degrees() <= {d.n_bonds}
        assert inv.color_profiles() <= {profile}


@pytest.mark.parametrize("seed", range(40))
def test_nonrigid_is_image_of_rigid(seed):
    d = random_isotopy(random_bonded_diagram(seed), seed, 15)
    assert to_nonrigid(rigid_invariant(d)) == nonrigid_invariant(d)


@pytest.mark.parametrize("seed", range(40))
def test_closed_form_matches_engine(seed):
    d = random_isotopy(random_bonded_diagram(seed), seed, 15, rigid=False)
    assert nonrigid_closed_form(d) == nonrigid_invariant(d)


def test_peel_one_bond():
    # cutting one bond then computing the rest gives the same element
    d = isolate_all(random_isotopy(random_bonded_diagram(7, max_bonds=3), 7, 10))
    bond = d.bond_ids()[0]
    total = InvariantElement("rigid")
    for sub, g, c in cut_bond(d, bond):
        if sub.n_bonds:
            rest = rigid_invariant(sub)
            total = total + InvariantElement("rigid", {ms + (g,): c * v for ms, v in rest.items()})
        else:
            total = total + InvariantElement("rigid", {(g,): c * homfly(sub) * DELTA})
    assert total == rigid_invariant(d)


def test_nonrigid_examples():
    two = chord_diagram("abba")
    assert nonrigid_invariant(two) == InvariantElement(
        "nonrigid", {(Generator(K.THETA, 1),) * 2: RatFunc.parse("-l*m/(1 + l^2)")}
    )
    three = load_data("threechords")
    want = {(Generator(K.THETA, 2),) * 2 + (Generator(K.THETA, 3),): RatFunc.parse("l^2*m^2/(1 + l^2)^2")}
    assert nonrigid_invariant(three) == InvariantElement("nonrigid", want)


def test_bond_free_input():
    inv = rigid_invariant(load_data("trefoil"))
    assert inv == InvariantElement("rigid", {(): homfly(load_data("trefoil"))})
    assert nonrigid_invariant(load_data("hopf"))[()] == RatFunc(homfly(load_data("hopf")))


def test_json_schema_and_round_trip():
    inv = rigid_invariant(load_data("knotA"))
    blob = json.loads(inv.dumps())
    assert blob["basis"] == "rigid"
    assert {"multiset", "num", "den"} <= set(blob["terms"][0])
    assert set(blob["terms"][0]["multiset"][0]) == {"kind", "color", "mult"}
    assert InvariantElement.from_json(inv.dumps()) == inv
    three = nonrigid_invariant(load_data("threechords"))
    assert InvariantElement.from_json(three.to_json()) == three


def test_text_and_latex_rendering():
    inv = rigid_invariant(load_data("knotA"))
    assert str(inv) == "(l^-2*m^2 - l^-2) * [ThetaBar_1]\n+ (l^-3*m) * [HBar_1]"
    assert r"\bar{\Theta}_{1}" in inv.latex() and r"\bar{H}_{1}" in inv.latex()


def test_evaluate_terms():
    values = rigid_invariant(load_data("knotA")).evaluate(2, 1)
    assert sorted(values.values()) == [Fraction(0), Fraction(1, 8)]


def test_g_map_zero_marker():
    assert g_map(generator_fixture("Theta"), "s", "gPlus") is None
    assert g_map(generator_fixture("HBar"), "s", "gInf") is None
    with pytest.raises(ValueError):
        g_map(generator_fixture("Theta"), "s", "gFoo")


def test_element_arithmetic():
    a = InvariantElement("rigid", {(Generator(K.H, 1),): 2})
    b = InvariantElement("rigid", {(Generator(K.H, 1),): -2})
    assert len(a + b) == 0 and str(a + b) == "0"
    with pytest.raises(ValueError):
        a + InvariantElement("nonrigid")
