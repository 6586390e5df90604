"""Closed rational intervals in [0, 1] and finite unions of them.

Every endpoint is a :class:`fractions.Fraction`; nothing in here ever rounds.
A :class:`CompactSet` is kept in canonical form (sorted, pairwise disjoint,
touching parts merged), so structural equality is set equality.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


def rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Floats are refused: a float has already lost the value it was meant to
    carry, and every criterion downstream relies on exact comparisons.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational literal: {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fmt(q: Fraction) -> str:
    """Render as ``p/q`` (always with a denominator, matching the file formats)."""
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval ``[lo, hi]`` inside [0, 1]; ``lo == hi`` encodes a point."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = rational(self.lo), rational(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (ZERO <= lo <= hi <= ONE):
            raise DomainError(f"interval [{lo}, {hi}] is not inside [0, 1]")

    @classmethod
    def point(cls, x: RationalLike) -> Interval:
        x = rational(x)
        return cls(x, x)

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def diam(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x: object) -> bool:
        return self.lo <= x <= self.hi  # type: ignore[operator]

    def contains_interval(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: Interval) -> Interval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def distance_to(self, other: Interval) -> Fraction:
        """Gap between the two intervals; zero when they overlap or touch."""
        if other.lo > self.hi:
            return other.lo - self.hi
        if self.lo > other.hi:
            return self.lo - other.hi
        return ZERO

    def distance_to_point(self, x: Fraction) -> Fraction:
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return ZERO

    def hull(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def shrink(self, fraction: Fraction) -> Interval:
        """Central sub-interval keeping ``fraction`` of the length."""
        cut = self.diam * (1 - fraction) / 2
        return Interval(self.lo + cut, self.hi - cut)

    def split(self, pieces: int) -> list[Interval]:
        """Partition into ``pieces`` closed sub-intervals of equal length."""
        step = self.diam / pieces
        return [Interval(self.lo + k * step, self.lo + (k + 1) * step) for k in range(pieces)]

    def __str__(self) -> str:
        if self.degenerate:
            return fmt(self.lo)
        return f"{fmt(self.lo)}..{fmt(self.hi)}"

    @classmethod
    def parse(cls, text: str) -> Interval:
        text = text.strip()
        if ".." in text:
            lo, hi = text.split("..", 1)
            return cls(rational(lo), rational(hi))
        return cls.point(rational(text))


def _canonical(parts: Iterable[Interval]) -> tuple[Interval, ...]:
    ordered = sorted(parts)
    merged: list[Interval] = []
    for part in ordered:
        if merged and part.lo <= merged[-1].hi:
            last = merged[-1]
            if part.hi > last.hi:
                merged[-1] = Interval(last.lo, part.hi)
        else:
            merged.append(part)
    return tuple(merged)


@dataclass(frozen=True)
class CompactSet:
    """Non-empty finite union of closed intervals in [0, 1], canonicalised."""

    parts: tuple[Interval, ...]

    def __init__(self, parts: Iterable[Interval]):
        canon = _canonical(parts)
        if not canon:
            raise DomainError("a compact set must be non-empty")
        object.__setattr__(self, "parts", canon)

    @classmethod
    def points(cls, *xs: RationalLike) -> CompactSet:
        return cls(Interval.point(x) for x in xs)

    @classmethod
    def of(cls, *items: Union[Interval, RationalLike, tuple]) -> CompactSet:
        """Build from a mix of intervals, ``(lo, hi)`` tuples and single points."""
        parts = []
        for item in items:
            if isinstance(item, Interval):
                parts.append(item)
            elif isinstance(item, tuple):
                parts.append(Interval(rational(item[0]), rational(item[1])))
            else:
                parts.append(Interval.point(item))
        return cls(parts)

    @classmethod
    def parse(cls, text: str) -> CompactSet:
        """Parse ``"p/q..r/s; t/u"``: semicolon-separated intervals or points."""
        chunks = [c for c in text.split(";") if c.strip()]
        if not chunks:
            raise DomainError("empty compact-set literal")
        return cls(Interval.parse(c) for c in chunks)

    def __str__(self) -> str:
        return ";".join(str(p) for p in self.parts)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def min(self) -> Fraction:
        return self.parts[0].lo

    @property
    def max(self) -> Fraction:
        return self.parts[-1].hi

    @property
    def diam(self) -> Fraction:
        return self.max - self.min

    @property
    def is_finite(self) -> bool:
        return all(p.degenerate for p in self.parts)

    def _locate(self, x: Fraction) -> int:
        # index of the last part whose lo <= x, or -1
        return bisect_right([p.lo for p in self.parts], x) - 1

    def __contains__(self, x: object) -> bool:
        x = rational(x)  # type: ignore[arg-type]
        i = self._locate(x)
        return i >= 0 and x <= self.parts[i].hi

    def distance_to_point(self, x: Fraction) -> Fraction:
        i = self._locate(x)
        best = None
        for j in (i, i + 1):
            if 0 <= j < len(self.parts):
                d = self.parts[j].distance_to_point(x)
                best = d if best is None or d < best else best
        assert best is not None
        return best

    def issubset(self, other: CompactSet) -> bool:
        return all(
            any(q.contains_interval(p) for q in other.parts) for p in self.parts
        )

    def union(self, other: CompactSet) -> CompactSet:
        return CompactSet(self.parts + other.parts)

    def gaps(self) -> list[tuple[Fraction, Fraction]]:
        """Open gaps between consecutive parts."""
        return [(a.hi, b.lo) for a, b in zip(self.parts, self.parts[1:])]


def intersect_all(intervals: Sequence[Interval]) -> Interval | None:
    """Intersection of a non-empty family of intervals (``None`` if empty)."""
    acc: Interval | None = intervals[0]
    for j in intervals[1:]:
        if acc is None:
            return None
        acc = acc.intersect(j)
    return acc
