import math

import numpy as np
import pytest

from bondskein.bonded import nonrigid_invariant, rigid_invariant
from bondskein.diagram import validate
from bondskein.embedding import SceneError, parse_scene, project_embedding
from bondskein.homflypt import homfly
from bondskein.reference import load_data
from bondskein.samples import braid_closure


def block(header, pts):
    return header + "\n" + "\n".join(" ".join(f"{c:.9f}" for c in p) for p in pts) + "\n"


CIRCLE = [(math.cos(2 * math.pi * k / 16), math.sin(2 * math.pi * k / 16), 0.0) for k in range(16)]
TREFOIL = [
    (math.sin(t) + 2 * math.sin(2 * t), math.cos(t) - 2 * math.cos(2 * t), -math.sin(3 * t))
    for t in np.linspace(0, 2 * math.pi, 72, endpoint=False)
]
CHORD = [CIRCLE[0], (0.3, 0.1, 0.4), (-0.3, -0.1, 0.4), CIRCLE[8]]


def test_planar_circle_is_unknot():
    d = project_embedding(block("link k", CIRCLE))
    assert d.n_crossings == 0 and d.free_loops == 1
    assert homfly(d) == homfly(load_data("unknot"))


@pytest.mark.parametrize("seed", range(5))
def test_trefoil_polyline(seed):
    d = project_embedding(block("link k", TREFOIL), seed=seed)
    assert not validate(d)
    value = homfly(d)
    assert value in (homfly(braid_closure([1, 1, 1])), homfly(braid_closure([-1, -1, -1])))
    assert value == homfly(project_embedding(block("link k", TREFOIL), seed=0))


def test_circle_with_chord_is_theta():
    scene = block("link k", CIRCLE) + block("bond s color 2", CHORD)
    d = project_embedding(scene, direction=(0, 0, 1))
    assert (d.n_crossings, d.n_bonds) == (0, 1)
    assert str(rigid_invariant(d)) == "(1) * [Theta_2]"
    for seed in range(6):
        assert str(nonrigid_invariant(project_embedding(scene, seed=seed))) == "(1) * [Theta_2]"


def test_trefoil_with_bond_nonrigid_is_view_independent():
    scene = block("link k", TREFOIL) + block("bond s", [TREFOIL[0], (0.5, 0.5, 3.0), TREFOIL[30]])
    values = {str(nonrigid_invariant(project_embedding(scene, seed=s))) for s in range(4)}
    assert len(values) == 1


def test_same_seed_same_diagram():
    scene = block("link k", TREFOIL)
    assert project_embedding(scene, seed=3) == project_embedding(scene, seed=3)


def test_hopf_polylines():
    a = [(math.cos(t), math.sin(t), 0.0) for t in np.linspace(0, 2 * math.pi, 24, endpoint=False)]
    b = [(1 + math.cos(t), 0.0, math.sin(t)) for t in np.linspace(0, 2 * math.pi, 24, endpoint=False)]
    d = project_embedding(block("link a", a) + block("link b", b), seed=1)
    assert homfly(d) in (homfly(load_data("hopf")), homfly(braid_closure([-1, -1])))


def test_parse_scene_blocks():
    scene = parse_scene(block("link k", CIRCLE) + "# note\n" + block("bond s color 3", CHORD))
    assert [p.id for p in scene.links] == ["k"]
    assert scene.bonds[0].color == 3


@pytest.mark.parametrize(
    "text, match",
    [
        ("0 0 0\n", "before any polyline"),
        ("link k\n0 0\n", "three coordinates"),
        ("link k\n0 0 x\n", "bad coordinate"),
        ("link k\n0 0 0\n1 0 0\n", "at least 3"),
        ("bond s colour 2\n0 0 0\n1 1 1\n", "color"),
    ],
)
def test_scene_syntax_errors(text, match):
    with pytest.raises(SceneError, match=match):
        parse_scene(text)


def test_coincident_points_rejected():
    pts = CIRCLE[:3] + [CIRCLE[2]] + CIRCLE[3:]
    with pytest.raises(SceneError, match="coincident"):
        project_embedding(block("link k", pts))


def test_bond_must_end_on_link_points():
    with pytest.raises(SceneError, match="coincide"):
        project_embedding(block("link k", CIRCLE) + block("bond s", [(0, 0, 0), CIRCLE[3]]))


def test_shared_bond_endpoint_rejected():
    scene = block("link k", CIRCLE) + block("bond s", CHORD) + block("bond t", [CIRCLE[0], (0, 0, -1), CIRCLE[4]])
    with pytest.raises(SceneError, match="share"):
        project_embedding(scene)


def test_edge_on_view_rejected():
    with pytest.raises(SceneError, match="not generic"):
        project_embedding(block("link k", CIRCLE), direction=(1, 0, 0))
