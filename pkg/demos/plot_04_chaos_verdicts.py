"""
Generic and dense chaos verdicts
================================

The classifier runs the interval conditions on a dyadic grid, combines them
and enforces the logical links between the four chaos variants.  Every
verdict is pass, fail or inconclusive; grid-limited results are marked
"(sampled)".
"""

from fractions import Fraction as F

from hyperchaos import Params, build_identity, build_snoha_example, build_tent, classify_chaos

print("tent map")
v = classify_chaos(build_tent())
print(v.table())

print("\nidentity")
print(classify_chaos(build_identity(), Params(horizon=128)).table())

# The Snoha-type approximant is densely chaotic but every LY pair near 1 has
# a small limsup, so dense eps-chaos fails at eps = 1/9.
print("\nSnoha approximant, depth 6, eps = 1/9")
v = classify_chaos(build_snoha_example(6), Params(eps=F(1, 9)))
print(v.table())
print("dense-eps witness:", v.evidence["dense_eps"].witness)
