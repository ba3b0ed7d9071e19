import random

import pytest

from bondskein.diagram import DiagramError, validate
from bondskein.samples import add_bond, braid_closure, chord_diagram, random_bonded_diagram, random_link


def test_braid_closure_components():
    assert len(braid_closure([1, 1]).link_components()) == 2
    assert len(braid_closure([1, 1, 1]).link_components()) == 1
    assert braid_closure([], 2).free_loops == 2
    with pytest.raises(DiagramError):
        braid_closure([3], 2)


@pytest.mark.parametrize("seed", range(30))
def test_random_diagrams_are_valid(seed):
    d = random_bonded_diagram(seed)
    assert not validate(d)
    assert 1 <= d.n_bonds <= 3 and d.n_crossings <= 8
    assert random_bonded_diagram(seed) == d


def test_random_link_is_connected():
    rng = random.Random(0)
    for _ in range(20):
        d = random_link(rng, 6)
        assert d.free_loops == 0 and len(d.connected_parts()) == 1


def test_add_bond_needs_common_face():
    d = braid_closure([1, 1, 1])
    faces = d.faces()
    big = max(faces, key=len)
    other = next(f for f in faces if not set(f) & set(big))
    with pytest.raises(DiagramError, match="common face"):
        add_bond(d, big[0], other[0])


def test_chord_diagram_checks_input():
    with pytest.raises(DiagramError):
        chord_diagram("aab")
    with pytest.raises(DiagramError):
        chord_diagram("abab")  # interleaved chords on one side cross
    assert chord_diagram("abab", outside="b").n_bonds == 2
