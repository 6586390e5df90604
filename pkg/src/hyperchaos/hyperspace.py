"""The hyperspace of finite unions of closed rational intervals.

Hausdorff distance, closed ε-neighbourhoods, the induced map ``K -> f(K)``
and membership in Vietoris basic open sets, all exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .intervals import ONE, ZERO, CompactSet, DomainError, Interval, RationalLike, fmt, rational
from .pl_map import PLMap, image_interval
from .stats import OrbitStats

__all__ = [
    "OpenInterval",
    "VietorisBox",
    "directed_distance",
    "hausdorff_distance",
    "eps_neighborhood",
    "induced_image",
    "induced_orbit",
    "vietoris_member",
    "hausdorff_orbit_stats",
]


def directed_distance(a: CompactSet, b: CompactSet) -> Fraction:
    """``sup_{x in a} dist(x, b)``.

    ``dist(., b)`` is piecewise linear with local maxima only at midpoints of
    the gaps of ``b``, so the sup over a part of ``a`` is attained at one of
    its endpoints or at a gap midpoint lying inside it.
    """
    mids = [(g0 + g1) / 2 for g0, g1 in b.gaps()]
    best = ZERO
    for part in a:
        cands = [part.lo, part.hi] + [mid for mid in mids if part.lo < mid < part.hi]
        for x in cands:
            d = b.distance_to_point(x)
            if d > best:
                best = d
    return best


def hausdorff_distance(a: CompactSet, b: CompactSet) -> Fraction:
    if a == b:
        return ZERO
    return max(directed_distance(a, b), directed_distance(b, a))


def eps_neighborhood(a: CompactSet, eps: RationalLike) -> CompactSet:
    """Closed ε-neighbourhood of ``a`` clipped to [0, 1]."""
    eps = rational(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    return CompactSet(
        Interval(max(ZERO, p.lo - eps), min(ONE, p.hi + eps)) for p in a
    )


def induced_image(m: PLMap, a: CompactSet) -> CompactSet:
    """``f̄(a) = f(a)``."""
    return CompactSet(image_interval(m, p) for p in a)


def induced_orbit(m: PLMap, a: CompactSet, n: int) -> list[CompactSet]:
    """``[a, f̄(a), ..., f̄^n(a)]``; an exact repeat closes the orbit into a cycle."""
    if n < 0:
        raise DomainError("n must be non-negative")
    seen = {a: 0}
    out = [a]
    for k in range(1, n + 1):
        nxt = induced_image(m, out[-1])
        if nxt in seen:
            s = seen[nxt]
            p = k - s
            while len(out) < n + 1:
                out.append(out[s + (len(out) - s) % p])
            return out
        seen[nxt] = k
        out.append(nxt)
    return out


@dataclass(frozen=True)
class OpenInterval:
    """Open interval ``(lo, hi)``; endpoints may stick out of [0, 1] so that
    e.g. ``(-1/10, 1/2)`` is the relatively open ``[0, 1/2)``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", rational(self.lo))
        object.__setattr__(self, "hi", rational(self.hi))
        if not (self.lo < self.hi and self.lo < ONE and self.hi > ZERO):
            raise DomainError(f"open interval ({self.lo}, {self.hi}) misses (0, 1) or is empty")

    def contains(self, x: Fraction) -> bool:
        return self.lo < x < self.hi

    def meets(self, part: Interval) -> bool:
        return part.lo < self.hi and part.hi > self.lo

    def core(self, margin: Fraction = Fraction(1, 16)) -> Interval:
        """Closed interval strictly inside the open set, within [0, 1].

        Ends that are genuine open ends in [0, 1] are pulled in by ``margin`` of
        the length; an end outside [0, 1] is replaced by 0 or 1 itself, which
        the open set contains.
        """
        lo = max(self.lo, ZERO)
        hi = min(self.hi, ONE)
        cut = (hi - lo) * margin
        return Interval(lo + cut if self.lo >= ZERO else lo, hi - cut if self.hi <= ONE else hi)

    def __str__(self) -> str:
        return f"({fmt(self.lo)},{fmt(self.hi)})"

    @classmethod
    def parse(cls, text: str) -> OpenInterval:
        text = text.strip().strip("()")
        lo, hi = text.split(",")
        return cls(rational(lo), rational(hi))


@dataclass(frozen=True)
class VietorisBox:
    """Basic Vietoris open set ``<U_1, ..., U_n>`` with open-interval members."""

    opens: tuple[OpenInterval, ...]

    def __init__(self, opens: Iterable[OpenInterval | Sequence[RationalLike]]):
        items = tuple(
            o if isinstance(o, OpenInterval) else OpenInterval(rational(o[0]), rational(o[1]))
            for o in opens
        )
        if not items:
            raise DomainError("a Vietoris box needs at least one open set")
        object.__setattr__(self, "opens", items)

    def __len__(self) -> int:
        return len(self.opens)

    def __iter__(self):
        return iter(self.opens)

    def __str__(self) -> str:
        return "<" + ",".join(str(o) for o in self.opens) + ">"

    @classmethod
    def parse(cls, text: str) -> VietorisBox:
        """Parse ``"(0,1/4);(1/2,1)"``."""
        return cls(OpenInterval.parse(c) for c in text.strip().strip("<>").split(";") if c.strip())

    def components(self) -> list[tuple[Fraction, Fraction]]:
        """Connected components of the union of the opens (touching opens stay apart)."""
        spans = sorted((o.lo, o.hi) for o in self.opens)
        comps = [list(spans[0])]
        for lo, hi in spans[1:]:
            if lo < comps[-1][1]:
                comps[-1][1] = max(comps[-1][1], hi)
            else:
                comps.append([lo, hi])
        return [(c[0], c[1]) for c in comps]


def vietoris_member(a: CompactSet, box: VietorisBox) -> bool:
    """``a ⊆ ∪ U_i`` and ``a ∩ U_i ≠ ∅`` for every ``i``."""
    comps = box.components()
    for part in a:
        if not any(lo < part.lo and part.hi < hi for lo, hi in comps):
            return False
    return all(any(o.meets(part) for part in a) for o in box)


def hausdorff_orbit_stats(
    m: PLMap, a: CompactSet, b: CompactSet, horizon: int, tail_start: int | None = None
) -> OrbitStats:
    """Orbit statistics of ``d_H(f̄^n a, f̄^n b)`` for ``n = 0..horizon``."""
    if horizon < 1:
        raise DomainError("horizon must be at least 1")
    oa = induced_orbit(m, a, horizon)
    ob = induced_orbit(m, b, horizon)
    cache: dict[tuple[CompactSet, CompactSet], Fraction] = {}
    dists = []
    for x, y in zip(oa, ob):
        key = (x, y)
        if key not in cache:
            cache[key] = hausdorff_distance(x, y)
        dists.append(cache[key])
    return OrbitStats.from_distances(dists, tail_start)
