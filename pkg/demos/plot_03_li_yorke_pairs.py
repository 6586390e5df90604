"""
Classifying pairs and scanning for Li-Yorke pairs
=================================================

A pair is judged from its exact distance sequence over a tail window.  A
close approach followed later by a separation above eps is an eps-LY pair.
Scans look for such pairs in every cell of a grid.
"""

from fractions import Fraction as F

from hyperchaos import (CompactSet, Interval, build_identity, build_tent, classify_point_pair,
                        classify_set_pair, scan_pairs)

tent, identity = build_tent(), build_identity()
eps = F(1, 2)

print("tent, 1/4 vs 3/4:", classify_point_pair(tent, F(1, 4), F(3, 4), eps=eps).kind.value)
print("identity, 0 vs 1:", classify_point_pair(identity, 0, 1, eps=eps).kind.value)
v = classify_set_pair(tent, CompactSet.parse("1/4;3/4"), CompactSet.parse("1/2"), eps=eps)
print("tent, {1/4,3/4} vs {1/2}:", v.kind.value)

# an 8x8 scan of the unit square under the tent map finds an eps-LY pair in every cell
rep = scan_pairs(tent, (Interval(0, 1), Interval(0, 1)), 8, 200, eps=eps)
print("tent eps-LY fraction:", rep.eps_ly_fraction, rep.counts)
row = rep.ly_rows()[0]
print("one witness:", row.best.to_dict())

rep = scan_pairs(identity, (Interval(0, 1), Interval(0, 1)), 8, 128, eps=eps)
print("identity LY fraction:", rep.ly_fraction, rep.counts)
