"""Hypothesis strategies and seeded generators for maps and sets."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from hyperchaos.intervals import CompactSet, Interval
from hyperchaos.pl_map import PLMap

DEN = 64


def unit_rationals(den: int = DEN):
    return st.builds(lambda p, q: Fraction(p % (q + 1), q), st.integers(0, den), st.integers(1, den))


@st.composite
def intervals(draw, nondegenerate: bool = False):
    a, b = draw(unit_rationals()), draw(unit_rationals())
    if nondegenerate and a == b:
        b = Fraction(1) if a < 1 else Fraction(0)
    return Interval(min(a, b), max(a, b))


@st.composite
def compact_sets(draw, max_parts: int = 4):
    return CompactSet(draw(st.lists(intervals(), min_size=1, max_size=max_parts)))


@st.composite
def pl_maps(draw, max_nodes: int = 12):
    k = draw(st.integers(2, max_nodes))
    inner = sorted(set(draw(st.lists(st.integers(1, DEN - 1), min_size=k - 2, max_size=k - 2))))
    xs = [Fraction(0)] + [Fraction(i, DEN) for i in inner] + [Fraction(1)]
    ys = [draw(unit_rationals()) for _ in xs]
    return PLMap(list(zip(xs, ys)))


def random_map(rng: random.Random, max_nodes: int = 12, den: int = DEN) -> PLMap:
    k = rng.randint(2, max_nodes)
    inner = sorted(set(rng.randint(1, den - 1) for _ in range(k - 2)))
    xs = [Fraction(0)] + [Fraction(i, den) for i in inner] + [Fraction(1)]
    return PLMap([(x, Fraction(rng.randint(0, den), den)) for x in xs])


def random_rational(rng: random.Random, den: int = DEN) -> Fraction:
    q = rng.randint(1, den)
    return Fraction(rng.randint(0, q), q)


def random_interval(rng: random.Random, den: int = DEN) -> Interval:
    a, b = random_rational(rng, den), random_rational(rng, den)
    return Interval(min(a, b), max(a, b))


def random_set(rng: random.Random, max_parts: int = 4, den: int = DEN) -> CompactSet:
    return CompactSet(random_interval(rng, den) for _ in range(rng.randint(1, max_parts)))
