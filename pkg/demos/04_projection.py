"""From 3D polylines to a diagram: a trefoil backbone with one bond.

The non-rigid class does not depend on the view direction. The rigid class
can, since the projection plane sets the vertex framing.
"""

import math

import numpy as np

from bondskein.bonded import nonrigid_invariant, rigid_invariant
from bondskein.embedding import project_embedding
from bondskein.homflypt import homfly

ts = np.linspace(0, 2 * math.pi, 90, endpoint=False)
knot = [(math.sin(t) + 2 * math.sin(2 * t), math.cos(t) - 2 * math.cos(2 * t), -math.sin(3 * t)) for t in ts]
bond = [knot[0], (0.0, 0.0, 2.5), knot[45]]

scene = "link backbone\n" + "\n".join(f"{x:.6f} {y:.6f} {z:.6f}" for x, y, z in knot)
scene += "\nbond b1 color 1\n" + "\n".join(f"{x:.6f} {y:.6f} {z:.6f}" for x, y, z in bond) + "\n"

backbone_only = project_embedding(scene.split("\nbond")[0])
print("backbone HOMFLYPT:", homfly(backbone_only))

for seed in range(4):
    d = project_embedding(scene, seed=seed)
    print(f"seed {seed}: {d.n_crossings:2d} crossings  non-rigid = {nonrigid_invariant(d)}")
    print("          rigid =", str(rigid_invariant(d)).replace("\n", "\n                  "))
