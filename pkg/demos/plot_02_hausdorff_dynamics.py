"""
Hausdorff distance and the induced map
======================================

Compact sets are finite unions of closed rational intervals.  The induced
map sends a set to its image, and the Hausdorff distance between two orbits
of sets is computed exactly at every step.
"""

from fractions import Fraction as F

from hyperchaos import (CompactSet, VietorisBox, build_tent, eps_neighborhood, hausdorff_distance,
                        hausdorff_orbit_stats, induced_orbit, vietoris_member)

tent = build_tent()
a = CompactSet.parse("0..1/2")
b = CompactSet.parse("1/4..3/4")
print("d_H([0,1/2], [1/4,3/4]) =", hausdorff_distance(a, b))

# the sup of dist(., b) over a part of a can sit at the midpoint of a gap of b
print("d_H([0,1], {0,1}) =", hausdorff_distance(CompactSet.parse("0..1"), CompactSet.parse("0;1")))

print("1/8-neighbourhood of {0,1}:", eps_neighborhood(CompactSet.parse("0;1"), F(1, 8)))

for n, s in enumerate(induced_orbit(tent, CompactSet.parse("1/8;7/10..3/4"), 5)):
    print(f"T^{n}(A) = {s}")

stats = hausdorff_orbit_stats(tent, CompactSet.parse("1/4"), CompactSet.parse("3/4"), 3)
print("distances for {1/4} and {3/4}:", [str(d) for d in stats.distances])

# Vietoris boxes: inside the union of the opens, and meeting each one
box = VietorisBox.parse("(0,1/4);(1/2,1)")
for text in ("1/8;3/4", "1/8", "1/8;1/3;3/4"):
    print(f"{text!r:>14} in {box}: {vietoris_member(CompactSet.parse(text), box)}")
