"""Exact piecewise-linear self-maps of [0, 1].

A :class:`PLMap` is the linear interpolant of finitely many rational nodes.
Forward images of points and intervals, preimages, fixed points and
composition are all computed in exact rational arithmetic.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .intervals import (
    ONE,
    ZERO,
    CompactSet,
    DomainError,
    Interval,
    RationalLike,
    fmt,
    rational,
)

__all__ = [
    "PLMap",
    "MapFormatError",
    "IntervalOrbit",
    "eval_map",
    "image_interval",
    "iterate_interval",
    "interval_orbit",
    "point_orbit",
    "preimage_point",
    "preimage_in",
    "fixed_points",
    "compose",
    "power",
    "build_tent",
    "build_identity",
    "build_flip",
    "build_swapped_two_hump",
    "build_twin_tent",
    "build_snoha_example",
    "snoha_points",
    "builtin_map",
    "parse_map_json",
    "dump_map_json",
]


class MapFormatError(DomainError):
    """A node list violates a PLMap invariant; ``index`` names the offending node."""

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        prefix = f"node {index}: " if index is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class PLMap:
    """Continuous map of [0, 1] that is linear between consecutive nodes."""

    nodes: tuple[tuple[Fraction, Fraction], ...]
    _xs: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _ys: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)
    _slopes: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, nodes: Iterable[Sequence[RationalLike]]):
        pts = []
        for i, node in enumerate(nodes):
            if len(node) != 2:
                raise MapFormatError("expected an (x, y) pair", i)
            try:
                pts.append((rational(node[0]), rational(node[1])))
            except (DomainError, TypeError) as exc:
                raise MapFormatError(str(exc), i) from exc
        _validate(pts)
        object.__setattr__(self, "nodes", tuple(pts))
        xs = tuple(p[0] for p in pts)
        ys = tuple(p[1] for p in pts)
        object.__setattr__(self, "_xs", xs)
        object.__setattr__(self, "_ys", ys)
        object.__setattr__(
            self,
            "_slopes",
            tuple((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)),
        )

    @property
    def xs(self) -> tuple[Fraction, ...]:
        return self._xs

    @property
    def ys(self) -> tuple[Fraction, ...]:
        return self._ys

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return self._slopes

    @property
    def lipschitz(self) -> Fraction:
        """max |slope|; the exact uniform-continuity modulus of the map."""
        return max(abs(s) for s in self._slopes)

    def segments(self):
        """Yield ``(x0, y0, x1, y1)`` for each linear piece."""
        xs, ys = self._xs, self._ys
        for i in range(len(xs) - 1):
            yield xs[i], ys[i], xs[i + 1], ys[i + 1]

    def __call__(self, x: Fraction) -> Fraction:
        xs = self._xs
        i = bisect_right(xs, x) - 1
        if i >= len(xs) - 1:
            i = len(xs) - 2
        if x == xs[i]:
            return self._ys[i]
        return self._ys[i] + self._slopes[i] * (x - xs[i])

    def __str__(self) -> str:
        return " ".join(f"({fmt(x)},{fmt(y)})" for x, y in self.nodes)


def _validate(pts: list[tuple[Fraction, Fraction]]) -> None:
    if len(pts) < 2:
        raise MapFormatError("a PL map needs at least two nodes")
    for i, (x, y) in enumerate(pts):
        if i == 0 and x != ZERO:
            raise MapFormatError("first node must have x = 0", i)
        if i > 0 and x <= pts[i - 1][0]:
            raise MapFormatError("x-coordinates must be strictly increasing", i)
        if not (ZERO <= y <= ONE):
            raise MapFormatError("y must lie in [0, 1]", i)
    if pts[-1][0] != ONE:
        raise MapFormatError("last node must have x = 1", len(pts) - 1)


def eval_map(m: PLMap, x: RationalLike) -> Fraction:
    """Exact value of ``m`` at ``x``."""
    x = rational(x)
    if not (ZERO <= x <= ONE):
        raise DomainError(f"x = {x} is outside [0, 1]")
    return m(x)


def image_interval(m: PLMap, j: Interval) -> Interval:
    """Exact image ``m(j)``: extremes over the endpoints and interior nodes."""
    lo_v, hi_v = m(j.lo), m(j.hi)
    if j.degenerate:
        return Interval(lo_v, lo_v)
    a = bisect_right(m.xs, j.lo)
    b = bisect_left(m.xs, j.hi)
    vals = (lo_v, hi_v) + m.ys[a:b]
    return Interval(min(vals), max(vals))


def iterate_interval(m: PLMap, j: Interval, n: int) -> list[Interval]:
    """``[j, m(j), ..., m^n(j)]``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return interval_orbit(m, j, n).items


@dataclass(frozen=True)
class IntervalOrbit:
    """Exact interval iterates ``m^0(j) .. m^n(j)`` with cycle information.

    When the sequence revisits an interval exactly, it is eventually periodic
    from ``cycle_start`` with period ``period`` and every later term is known;
    ``items`` is then filled in from the cycle instead of recomputed.
    """

    items: list[Interval]
    cycle_start: int | None = None
    period: int | None = None

    @property
    def periodic(self) -> bool:
        return self.period is not None

    def cycle(self) -> list[Interval]:
        if self.period is None:
            raise ValueError("no cycle detected")
        s = self.cycle_start
        return self.items[s : s + self.period]  # type: ignore[operator]

    def at(self, n: int) -> Interval:
        """Term ``n``; past the stored horizon only if the orbit is periodic."""
        if n < len(self.items):
            return self.items[n]
        if self.period is None:
            raise IndexError(n)
        s = self.cycle_start
        return self.items[s + (n - s) % self.period]  # type: ignore[operator]


def _orbit_with_cycle(step, start, n: int):
    seen = {start: 0}
    items = [start]
    cur = start
    for k in range(1, n + 1):
        cur = step(cur)
        if cur in seen:
            s = seen[cur]
            p = k - s
            while len(items) < n + 1:
                items.append(items[s + (len(items) - s) % p])
            return items, s, p
        seen[cur] = k
        items.append(cur)
    return items, None, None


def interval_orbit(m: PLMap, j: Interval, n: int) -> IntervalOrbit:
    items, s, p = _orbit_with_cycle(lambda iv: image_interval(m, iv), j, n)
    return IntervalOrbit(items, s, p)


def point_orbit(m: PLMap, x: RationalLike, n: int) -> list[Fraction]:
    """``[x, m(x), ..., m^n(x)]``; eventually periodic tails are copied, not recomputed."""
    items, _, _ = _orbit_with_cycle(m, rational(x), n)
    return items


def preimage_point(m: PLMap, y: RationalLike) -> CompactSet | None:
    """Full preimage ``m^{-1}(y)``; flat pieces at height ``y`` give intervals."""
    y = rational(y)
    if not (ZERO <= y <= ONE):
        raise DomainError(f"y = {y} is outside [0, 1]")
    parts = []
    for x0, y0, x1, y1 in m.segments():
        if y0 == y1:
            if y0 == y:
                parts.append(Interval(x0, x1))
        elif min(y0, y1) <= y <= max(y0, y1):
            x = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            parts.append(Interval(x, x))
    return CompactSet(parts) if parts else None


def preimage_in(m: PLMap, y: RationalLike, j: Interval) -> Fraction | None:
    """Leftmost ``p`` in ``j`` with ``m(p) == y``, or ``None``."""
    y = rational(y)
    xs, ys, slopes = m.xs, m.ys, m.slopes
    jlo, jhi = j.lo, j.hi
    for i in range(max(bisect_right(xs, jlo) - 1, 0), len(xs) - 1):
        x0 = xs[i]
        if x0 > jhi:
            break
        y0, y1 = ys[i], ys[i + 1]
        # skip pieces whose value range misses y before doing any division
        if (y < y0 and y < y1) or (y > y0 and y > y1):
            continue
        lo = x0 if x0 > jlo else jlo
        if y0 == y1:
            return lo
        x = x0 + (y - y0) / slopes[i]
        if lo <= x and x <= jhi and x <= xs[i + 1]:
            return x
    return None


def fixed_points(m: PLMap) -> CompactSet:
    """Exact fixed-point set; pieces lying on the diagonal give intervals."""
    parts = []
    for x0, y0, x1, y1 in m.segments():
        g0, g1 = y0 - x0, y1 - x1
        if g0 == 0 and g1 == 0:
            parts.append(Interval(x0, x1))
        elif g0 == 0:
            parts.append(Interval(x0, x0))
        elif g1 == 0:
            parts.append(Interval(x1, x1))
        elif (g0 < 0) != (g1 < 0):
            x = x0 + g0 * (x1 - x0) / (g0 - g1)
            parts.append(Interval(x, x))
    return CompactSet(parts)


def compose(g: PLMap, f: PLMap) -> PLMap:
    """The PL map ``g ∘ f``."""
    breaks = set(f.xs)
    for yg in g.xs[1:-1]:
        pre = preimage_point(f, yg)
        if pre is not None:
            for part in pre:
                breaks.update((part.lo, part.hi))
    xs = sorted(breaks)
    nodes = [(x, g(f(x))) for x in xs]
    # drop nodes that sit on a straight line through their neighbours
    slim = [nodes[0]]
    for k in range(1, len(nodes) - 1):
        (xa, ya), (xb, yb), (xc, yc) = slim[-1], nodes[k], nodes[k + 1]
        if (yb - ya) * (xc - xb) != (yc - yb) * (xb - xa):
            slim.append(nodes[k])
    slim.append(nodes[-1])
    return PLMap(slim)


def power(m: PLMap, k: int) -> PLMap:
    """The k-th iterate ``m^k`` as a PL map (k >= 1)."""
    if k < 1:
        raise DomainError("power needs k >= 1")
    out = m
    for _ in range(k - 1):
        out = compose(m, out)
    return out


def build_tent() -> PLMap:
    return PLMap([(0, 0), (Fraction(1, 2), 1), (1, 0)])


def build_identity() -> PLMap:
    return PLMap([(0, 0), (1, 1)])


def build_flip() -> PLMap:
    """``x -> 1 - x``."""
    return PLMap([(0, 1), (1, 0)])


def build_swapped_two_hump() -> PLMap:
    """Two-hump map exchanging [0, 1/2] and [1/2, 1] (f^2 is transitive on each)."""
    h = Fraction(1, 2)
    return PLMap([(0, h), (Fraction(1, 4), 1), (h, h), (Fraction(3, 4), 0), (1, h)])


def build_twin_tent() -> PLMap:
    """Two transitive invariant intervals [0, 1/2] and [1/2, 1] sharing the fixed point 1/2."""
    h = Fraction(1, 2)
    return PLMap([(0, h), (Fraction(1, 4), 0), (h, h), (Fraction(3, 4), 1), (1, h)])


def snoha_points(i: int) -> tuple[Fraction, Fraction, Fraction]:
    """``(a_i, b_i, c_i)`` of the Snoha example."""
    a = 1 - Fraction(1, 3**i)
    b = 1 - Fraction(3, 4 * 3**i)
    c = 1 - Fraction(1, 2 * 3**i)
    return a, b, c


def build_snoha_example(depth: int) -> PLMap:
    """The approximant ``f_depth``: depth+1 tent-like blocks, identity on ``[a_{depth+1}, 1]``.

    Block i spans ``[a_i, a_{i+1}]`` with nodes ``(a_i, a_i), (b_i, 1), (c_i, a_i)``;
    every piece has slope ±4.
    """
    if depth < 0:
        raise DomainError("depth must be non-negative")
    nodes = []
    for i in range(depth + 1):
        a, b, c = snoha_points(i)
        nodes += [(a, a), (b, ONE), (c, a)]
    tail = snoha_points(depth + 1)[0]
    nodes += [(tail, tail), (ONE, ONE)]
    return PLMap(nodes)


def builtin_map(name: str) -> PLMap:
    """Resolve ``tent | identity | flip | 1-x | two-hump | twin-tent | snoha:<depth>``."""
    name = name.strip().lower()
    if name == "tent":
        return build_tent()
    if name == "identity":
        return build_identity()
    if name in ("flip", "1-x"):
        return build_flip()
    if name == "two-hump":
        return build_swapped_two_hump()
    if name == "twin-tent":
        return build_twin_tent()
    if name.startswith("snoha"):
        _, _, depth = name.partition(":")
        try:
            return build_snoha_example(int(depth) if depth else 6)
        except ValueError as exc:
            raise DomainError(f"bad snoha depth in {name!r}") from exc
    raise DomainError(f"unknown builtin map {name!r}")


def parse_map_json(text: str) -> PLMap:
    """Parse ``{"nodes": [["p/q", "r/s"], ...]}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapFormatError(f"invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise MapFormatError('expected an object with a "nodes" list')
    nodes = []
    for i, node in enumerate(doc["nodes"]):
        if not isinstance(node, list) or len(node) != 2:
            raise MapFormatError("expected a two-element [x, y] list", i)
        if not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in node):
            raise MapFormatError('coordinates must be "p/q" strings', i)
        nodes.append(node)
    return PLMap(nodes)


def dump_map_json(m: PLMap) -> str:
    return json.dumps({"nodes": [[fmt(x), fmt(y)] for x, y in m.nodes]})
