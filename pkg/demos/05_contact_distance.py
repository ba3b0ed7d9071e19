"""Coloring bonds by how many other bond contacts separate their ends."""

from bondskein.bonded import nonrigid_invariant
from bondskein.diagram import contact_distance_coloring
from bondskein.reference import load_data

for name in ("fourbond", "threechords"):
    d = load_data(name)
    plain = contact_distance_coloring(d)
    counted = contact_distance_coloring(d, count_destination=True)
    print(f"{name}: {plain}   (counting the far end: {counted})")

d = load_data("threechords")
d = d.with_colors(contact_distance_coloring(d))
print("non-rigid invariant of the colored three-chord unknot:")
print(" ", nonrigid_invariant(d))
