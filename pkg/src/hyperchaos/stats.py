"""Finite-horizon summaries of distance or diameter sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intervals import DomainError


@dataclass(frozen=True)
class OrbitStats:
    """A sequence ``d_0 .. d_horizon`` with min/max over the tail window.

    ``tail_min`` and ``tail_max`` stand in for liminf and limsup; the window
    ``[tail_start, horizon]`` discards the transient.
    """

    distances: tuple[Fraction, ...]
    tail_start: int
    tail_min: Fraction
    tail_max: Fraction

    @classmethod
    def from_distances(cls, distances: Sequence[Fraction], tail_start: int | None = None) -> OrbitStats:
        dists = tuple(distances)
        horizon = len(dists) - 1
        if horizon < 1:
            raise DomainError("need at least two terms (horizon >= 1)")
        if tail_start is None:
            tail_start = horizon // 2
        if not 0 <= tail_start < horizon:
            raise DomainError(f"tail_start {tail_start} must lie in [0, {horizon})")
        tail = dists[tail_start:]
        return cls(dists, tail_start, min(tail), max(tail))

    @property
    def horizon(self) -> int:
        return len(self.distances) - 1

    @property
    def tail(self) -> tuple[Fraction, ...]:
        return self.distances[self.tail_start :]

    def first_zero(self) -> int | None:
        for i, d in enumerate(self.distances):
            if d == 0:
                return i
        return None
