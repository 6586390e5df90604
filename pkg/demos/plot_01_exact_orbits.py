"""
Exact orbits of piecewise-linear maps
=====================================

Every node, endpoint and distance is a Fraction, so orbits of intervals can
be compared for exact equality.  When an interval orbit revisits a term the
whole future is known, which turns many limits into finite checks.
"""

from fractions import Fraction as F
from pathlib import Path
import tempfile

from hyperchaos import (Interval, build_snoha_example, build_tent, eval_map, fixed_points,
                        iterate_interval, preimage_point)
from hyperchaos.cli import render_svg
from hyperchaos.pl_map import interval_orbit, snoha_points

tent = build_tent()

# a small dyadic interval doubles until it covers [0, 1]
for n, j in enumerate(iterate_interval(tent, Interval(0, F(1, 8)), 4)):
    print(f"T^{n}([0,1/8]) = {j}")

# [1/5, 2/5] falls into an exact cycle; the period is a certificate for all later times
orbit = interval_orbit(tent, Interval(F(1, 5), F(2, 5)), 40)
print("cycle starts at", orbit.cycle_start, "with period", orbit.period, ":", [str(j) for j in orbit.cycle()])

print("tent preimage of 1/2:", preimage_point(tent, F(1, 2)))
print("tent fixed points:", fixed_points(tent))

# the finite approximant of the Snoha-type example: bumps over [a_i, c_i], identity beyond a_{D+1}
snoha = build_snoha_example(6)
for i in range(3):
    a, b, c = snoha_points(i)
    print(f"i={i}: f(a)={eval_map(snoha, a)}  f(b)={eval_map(snoha, b)}  f(c)={eval_map(snoha, c)}")

out = Path(tempfile.gettempdir()) / "snoha6.svg"
out.write_text(render_svg(snoha))
print("graph written to", out)
