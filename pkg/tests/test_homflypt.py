import random
from fractions import Fraction

import pytest

from bondskein.diagram import iter_link_crossings, smooth_crossing, switch_crossing
from bondskein.homflypt import HomflyError, homfly, skein_coefficients
from bondskein.moves import random_isotopy
from bondskein.reference import HOMFLY_VALUES, load_data
from bondskein.ring import DELTA, L, M, LaurentPoly
from bondskein.samples import braid_closure, random_link

L_INV = LaurentPoly.monomial(-1, 0)


@pytest.mark.parametrize("name", sorted(HOMFLY_VALUES))
def test_fixture_values(name):
    assert homfly(load_data(name)) == LaurentPoly.parse(HOMFLY_VALUES[name])


def test_braid_trefoil_matches_bundled():
    assert homfly(braid_closure([1, 1, 1])) == homfly(load_data("trefoil"))


def with_sign(d, x, sign):
    return d if d.crossing_sign(x) == sign else switch_crossing(d, x)


@pytest.mark.parametrize("seed", range(100))
def test_skein_identity(seed):
    d = random_link(random.Random(seed), 6)
    cache = {}
    for s in iter_link_crossings(d):
        plus = homfly(with_sign(d, s.id, 1), cache=cache)
        minus = homfly(with_sign(d, s.id, -1), cache=cache)
        zero = homfly(smooth_crossing(d, s.id), cache=cache)
        assert L * plus + L_INV * minus + M * zero == LaurentPoly()


def test_skein_coefficients_solve_the_relation():
    for sign in (1, -1):
        a, b = skein_coefficients(sign)
        # P(s) = a P(-s) + b P(0) rearranged into l P+ + l^-1 P- + m P0 = 0
        c_self, c_other = (L, L_INV) if sign > 0 else (L_INV, L)
        assert c_self * a + c_other == LaurentPoly()
        assert c_self * b + M == LaurentPoly()


@pytest.mark.parametrize("seed", range(20))
def test_disjoint_union(seed):
    rng = random.Random(seed)
    left = [rng.choice([1, -1]) for _ in range(rng.randint(1, 4))]
    right = [rng.choice([3, -3]) for _ in range(rng.randint(1, 4))]
    both = braid_closure(left + right, 4)
    a = braid_closure(left, 2)
    b = braid_closure([g // 3 for g in right], 2)
    assert homfly(both) == DELTA * homfly(a) * homfly(b)


def test_mirror_trefoil():
    pos = homfly(braid_closure([1, 1, 1]))
    neg = homfly(braid_closure([-1, -1, -1]))
    for l0, m0 in ((2, 3), (3, -5), (-7, 2)):
        assert neg.substitute(l0, m0) == pos.substitute(Fraction(1, l0), m0)


@pytest.mark.parametrize("seed", range(15))
def test_move_invariance_bond_free(seed):
    d = random_link(random.Random(seed), 6)
    assert homfly(random_isotopy(d, seed, 30, rigid=False)) == homfly(d)


def test_bonds_rejected():
    with pytest.raises(HomflyError, match="bonded"):
        homfly(load_data("knotA"))


def test_crossing_cap(monkeypatch):
    monkeypatch.setenv("BONDSKEIN_MAX_CROSSINGS", "2")
    with pytest.raises(HomflyError, match="BONDSKEIN_MAX_CROSSINGS"):
        homfly(load_data("trefoil"))
    monkeypatch.setenv("BONDSKEIN_MAX_CROSSINGS", "3")
    assert homfly(load_data("trefoil")) == LaurentPoly.parse(HOMFLY_VALUES["trefoil"])
