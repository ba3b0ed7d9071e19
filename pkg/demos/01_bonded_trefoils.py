"""Three bonded trefoils, step by step.

Knot A carries a crossing-free bond; in B and C the bond passes through
crossings and has to be isolated before it can be cut out.
"""

from bondskein.bonded import cut_bond, nonrigid_invariant, rigid_invariant
from bondskein.bpd import serialize_bpd
from bondskein.diagram import classify_bond
from bondskein.homflypt import homfly
from bondskein.moves import isolate_all
from bondskein.reference import load_data

for name in ("knotA", "knotB", "knotC"):
    d = load_data(name)
    print(f"=== {name}: {d.n_crossings} crossings, bond crossings {len(d.bond_crossings('s'))}")
    iso = isolate_all(d)
    if iso != d:
        print("after isolation:")
        print(serialize_bpd(iso))
    print("bond class:", classify_bond(iso, "s").value)
    for sub, gen, coeff in cut_bond(iso, "s"):
        print(f"  {gen}: ({coeff}) * P = ({coeff}) * ({homfly(sub)})")
    print("rigid:")
    print(" ", str(rigid_invariant(d)).replace("\n", "\n  "))
    print("non-rigid:")
    print(" ", nonrigid_invariant(d))
    print()

same = rigid_invariant(load_data("knotB")) == rigid_invariant(load_data("knotC"))
print("B and C have the same rigid invariant:", same)
print("A and B differ:", rigid_invariant(load_data("knotA")) != rigid_invariant(load_data("knotB")))
