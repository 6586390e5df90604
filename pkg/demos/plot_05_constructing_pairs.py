"""
Building Li-Yorke pairs of finite sets
======================================

Given two Vietoris boxes, the constructors return finite sets U and V inside
them whose induced orbits form an (eps-)LY pair.  They pick a step k, split
the opens by where their images land, find a meeting point pair in the
intersected images and pull it back.  The trace records each stage.
"""

from fractions import Fraction as F

from hyperchaos import (Params, VietorisBox, build_identity, build_swapped_two_hump, build_tent,
                        construct_hyper_eps_ly_pair, construct_hyper_ly_pair)

tent = build_tent()
bu, bv = VietorisBox.parse("(0,1/4)"), VietorisBox.parse("(3/4,1)")

res = construct_hyper_ly_pair(tent, bu, bv, Params(eps=F(1, 2)))
print("LY constructor on the tent:", res.case, res.verdict.kind.value)
for step in res.trace:
    print("  ", step.stage, step.detail)

res = construct_hyper_eps_ly_pair(tent, VietorisBox.parse("(1/10,1/5);(7/10,4/5)"),
                                  VietorisBox.parse("(1/3,1/2);(9/10,1)"), F(1, 2))
print("eps constructor on the tent:", res.branch, res.verdict.kind.value,
      "tail_min", float(res.verdict.stats.tail_min), "tail_max", res.verdict.stats.tail_max)

# the two-hump map swaps [0,1/2] and [1/2,1], so the square map does the work
res = construct_hyper_eps_ly_pair(build_swapped_two_hump(), bu, bv, F(1, 4))
print("two-hump:", res.branch, res.case, res.verdict.kind.value)

# the identity has no pair to offer; the failure names its stage
res = construct_hyper_ly_pair(build_identity(), bu, bv)
print("identity:", res.found, res.failed_stage)
