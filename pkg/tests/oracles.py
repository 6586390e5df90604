"""Independent brute-force reference computations used by the tests.

None of these call into the package's algorithms beyond plain data access;
they recompute the same quantities the slow, obvious way.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction

GRID = 2**12


def grid_points(parts) -> list[float]:
    """Points of a finite union of intervals on the grid of step 2^-12, plus all endpoints."""
    pts = set()
    for lo, hi in parts:
        pts.add(float(lo))
        pts.add(float(hi))
        k = int(lo * GRID) + 1
        while Fraction(k, GRID) < hi:
            pts.add(k / GRID)
            k += 1
    return sorted(pts)


def _nearest(sorted_pts: list[float], x: float) -> float:
    i = bisect_left(sorted_pts, x)
    best = float("inf")
    for j in (i - 1, i):
        if 0 <= j < len(sorted_pts):
            best = min(best, abs(sorted_pts[j] - x))
    return best


def hausdorff_oracle(a_parts, b_parts) -> float:
    """max-min over the two sampled sets; within one grid step of the true value."""
    pa, pb = grid_points(a_parts), grid_points(b_parts)
    return max(max(_nearest(pb, x) for x in pa), max(_nearest(pa, y) for y in pb))


def preimage_oracle(nodes, y: Fraction):
    """Solve ``f(x) = y`` on every linear piece separately: (points, flat pieces)."""
    points, flats = set(), []
    for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
        if y0 == y1:
            if y == y0:
                flats.append((x0, x1))
            continue
        t = (y - y0) / (y1 - y0)
        if 0 <= t <= 1:
            points.add(x0 + t * (x1 - x0))
    return points, flats


def fixed_oracle(nodes):
    """Fixed points per piece by solving ``y0 + s (x - x0) = x``."""
    pts, flats = set(), []
    for (x0, y0), (x1, y1) in zip(nodes, nodes[1:]):
        s = (y1 - y0) / (x1 - x0)
        if s == 1:
            if y0 == x0:
                flats.append((x0, x1))
            continue
        x = (y0 - s * x0) / (1 - s)
        if x0 <= x <= x1:
            pts.add(x)
    return pts, flats


def word(zero_positions, length: int) -> list[int]:
    """First ``length`` symbols of the sequence with zeros at the given 1-based positions."""
    return [0 if i in zero_positions else 1 for i in range(1, length + 1)]


def word_distance(u: list[int], v: list[int]) -> Fraction:
    for i, (a, b) in enumerate(zip(u, v), start=1):
        if a != b:
            return Fraction(1, i)
    return Fraction(0)


def shift_example_series(k: int, horizon: int) -> list[Fraction]:
    """d_H(σ^t M, σ^t N_k) by enumerating explicit 0/1 words long enough to hold every zero."""
    n = [0]
    for i in range(k - 1):
        n.append(n[-1] + i + 2)
    length = n[-1] + 2 + horizon
    M = [word(set(), length)]
    N = [word({ni + 1}, length) for ni in n]
    out = []
    for t in range(horizon + 1):
        Mt = [w[t:] for w in M]
        Nt = [w[t:] for w in N]
        d1 = max(min(word_distance(u, v) for v in Nt) for u in Mt)
        d2 = max(min(word_distance(u, v) for u in Mt) for v in Nt)
        out.append(max(d1, d2))
    return out
