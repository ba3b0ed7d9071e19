"""Scramble a bonded diagram with random moves and watch the invariants stay put.

Rigid moves never twist a vertex; the non-rigid set adds move V, which
changes the rigid invariant but not the non-rigid one.
"""

from bondskein.bonded import nonrigid_invariant, rigid_invariant
from bondskein.moves import apply_move, random_isotopy
from bondskein.samples import random_bonded_diagram

d = random_bonded_diagram(11, max_bonds=2)
print(f"start: {d.n_crossings} crossings, bonds {d.bond_ids()}")
rigid, loose = rigid_invariant(d), nonrigid_invariant(d)
print(rigid)

trace = []
scrambled = random_isotopy(d, seed=11, steps=30, rigid=True, trace=trace)
cur = d
for m in trace:
    cur = apply_move(cur, m)
    print(f"{str(m):40s} crossings={cur.n_crossings:2d} rigid same={rigid_invariant(cur) == rigid}")

print("non-rigid scramble keeps the non-rigid class:",
      nonrigid_invariant(random_isotopy(d, seed=12, steps=30, rigid=False)) == loose)
