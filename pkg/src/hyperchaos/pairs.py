"""Finite-horizon classification of point pairs and set pairs, and density scans.

A verdict is a pure function of the exact distance sequence and the
parameters.  The rules, applied to the tail window of the sequence:

* an exact zero anywhere means the two orbits coincide from then on:
  ``ASYMPTOTIC`` (for points and for sets ``d = 0`` forces equality);
* every tail term ``<= tol_low``: ``ASYMPTOTIC``;
* some tail term ``<= tol_low`` followed later by a term ``> eps``:
  ``EPS_LY``; followed by a term ``> tol_low``: ``LY``;
* came within ``tol_low`` and never left again: ``UNDETERMINED``;
* every tail term ``> tol_low``: ``DISTAL`` unless the tail is strictly
  decreasing (still converging), then ``UNDETERMINED``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .hyperspace import VietorisBox, hausdorff_orbit_stats
from .intervals import CompactSet, DomainError, Interval, RationalLike, fmt, rational
from .pl_map import PLMap, _orbit_with_cycle, fixed_points, interval_orbit, preimage_in
from .stats import OrbitStats

__all__ = [
    "DEFAULT_HORIZON",
    "DEFAULT_TOL",
    "PairKind",
    "PairVerdict",
    "MeetingPair",
    "ReportRow",
    "DensityReport",
    "classify_stats",
    "classify_point_pair",
    "classify_set_pair",
    "pull_back",
    "meeting_pair",
    "eps_ly_possible",
    "scan_pairs",
    "scan_hyper_pairs",
]

DEFAULT_HORIZON = 512
DEFAULT_TOL = Fraction(1, 2**20)


class PairKind(str, Enum):
    EPS_LY = "eps_LY"
    LY = "LY"
    UNDETERMINED = "undetermined"
    DISTAL = "distal"
    ASYMPTOTIC = "asymptotic"

    @property
    def rank(self) -> int:
        # larger is a stronger chaos witness; used to pick a cell's best sample
        return _RANK[self]


_RANK = {
    PairKind.ASYMPTOTIC: 0,
    PairKind.DISTAL: 1,
    PairKind.UNDETERMINED: 2,
    PairKind.LY: 3,
    PairKind.EPS_LY: 4,
}


@dataclass(frozen=True)
class PairVerdict:
    kind: PairKind
    stats: OrbitStats
    tol_low: Fraction
    eps: Fraction
    pair: tuple | None = field(default=None, compare=False)

    @property
    def horizon(self) -> int:
        return self.stats.horizon

    @property
    def is_ly(self) -> bool:
        return self.kind in (PairKind.LY, PairKind.EPS_LY)

    @property
    def is_eps_ly(self) -> bool:
        return self.kind is PairKind.EPS_LY

    def is_delta_asymptotic(self, delta: RationalLike) -> bool:
        """limsup proxy below ``delta``."""
        return self.stats.tail_max < rational(delta)

    def to_dict(self) -> dict:
        out = {
            "class": self.kind.value,
            "eps": fmt(self.eps),
            "tol_low": fmt(self.tol_low),
            "horizon": self.horizon,
            "tail_start": self.stats.tail_start,
            "tail_min": fmt(self.stats.tail_min),
            "tail_max": fmt(self.stats.tail_max),
            "finite_horizon_proxy": True,
        }
        if self.pair is not None:
            out["pair"] = [str(p) if not isinstance(p, Fraction) else fmt(p) for p in self.pair]
        return out


def _require_eps(eps: RationalLike | None) -> Fraction:
    # ε is part of the claim under test, so it has no default
    if eps is None:
        raise DomainError("eps is required")
    return rational(eps)


def _check_params(horizon: int, tol_low: Fraction, eps: Fraction) -> None:
    if horizon < 1:
        raise DomainError("horizon must be at least 1")
    if not (0 < tol_low < eps):
        raise DomainError("need 0 < tol_low < eps")


def classify_stats(stats: OrbitStats, tol_low: RationalLike, eps: RationalLike) -> PairKind:
    tol_low, eps = rational(tol_low), rational(eps)
    if stats.first_zero() is not None:
        return PairKind.ASYMPTOTIC
    tail = stats.tail
    if stats.tail_max <= tol_low:
        return PairKind.ASYMPTOTIC
    close = next((i for i, d in enumerate(tail) if d <= tol_low), None)
    if close is not None:
        after = tail[close + 1 :]
        if any(d > eps for d in after):
            return PairKind.EPS_LY
        if any(d > tol_low for d in after):
            return PairKind.LY
        return PairKind.UNDETERMINED
    if all(b < a for a, b in zip(tail, tail[1:])):
        return PairKind.UNDETERMINED
    return PairKind.DISTAL


def _pair_distances(m: PLMap, x: Fraction, y: Fraction, horizon: int) -> list[Fraction]:
    ox, sx, px = _orbit_with_cycle(m, x, horizon)
    oy, sy, py = _orbit_with_cycle(m, y, horizon)
    if px is not None and py is not None:
        # the pair (f^n x, f^n y) repeats with the joint period, and so do the distances
        start, period = max(sx, sy), math.lcm(px, py)
        if start + period <= horizon:
            base = [abs(ox[n] - oy[n]) for n in range(start + period)]
            return base + [base[start + (n - start) % period] for n in range(start + period, horizon + 1)]
    return [abs(a - b) for a, b in zip(ox, oy)]


def classify_point_pair(
    m: PLMap,
    x: RationalLike,
    y: RationalLike,
    horizon: int = DEFAULT_HORIZON,
    tol_low: RationalLike = DEFAULT_TOL,
    eps: RationalLike | None = None,
    tail_start: int | None = None,
) -> PairVerdict:
    """Classify ``(x, y)`` from ``|f^n x - f^n y|``, ``n <= horizon``."""
    x, y = rational(x), rational(y)
    tol_low, eps = rational(tol_low), _require_eps(eps)
    _check_params(horizon, tol_low, eps)
    for v in (x, y):
        if not 0 <= v <= 1:
            raise DomainError(f"{v} is outside [0, 1]")
    stats = OrbitStats.from_distances(_pair_distances(m, x, y, horizon), tail_start)
    return PairVerdict(classify_stats(stats, tol_low, eps), stats, tol_low, eps, (x, y))


def classify_set_pair(
    m: PLMap,
    a: CompactSet,
    b: CompactSet,
    horizon: int = DEFAULT_HORIZON,
    tol_low: RationalLike = DEFAULT_TOL,
    eps: RationalLike | None = None,
    tail_start: int | None = None,
) -> PairVerdict:
    """Classify ``(a, b)`` under the induced map from ``d_H(f̄^n a, f̄^n b)``."""
    tol_low, eps = rational(tol_low), _require_eps(eps)
    _check_params(horizon, tol_low, eps)
    stats = hausdorff_orbit_stats(m, a, b, horizon, tail_start)
    return PairVerdict(classify_stats(stats, tol_low, eps), stats, tol_low, eps, (a, b))


# ---------------------------------------------------------------------------
# constructing candidate pairs by exact pull-back


def pull_back(
    m: PLMap, target: Fraction, start: Interval, steps: int, orbit: Sequence[Interval] | None = None
) -> Fraction | None:
    """A point ``p`` of ``start`` with ``f^steps(p) == target`` (leftmost choice at each step).

    ``None`` when ``target`` is not in ``f^steps(start)``.  ``orbit`` may pass
    the already computed iterates ``start, f(start), ..., f^steps(start)``.
    """
    items = interval_orbit(m, start, steps).items if orbit is None else orbit
    if target not in items[steps]:
        return None
    cur = target
    for k in range(steps - 1, -1, -1):
        cur = preimage_in(m, cur, items[k])
        if cur is None:  # pragma: no cover - excluded by f(orbit[k]) == orbit[k+1]
            return None
    return cur


@dataclass(frozen=True)
class MeetingPair:
    """A pair built so that ``f^meet(x) = target`` and ``f^meet(y) = target + offset``."""

    x: Fraction
    y: Fraction
    meet: int
    target: Fraction
    offset: Fraction
    verdict: PairVerdict


_MAX_FIXED_TARGETS = 3


def eps_ly_possible(m: PLMap, jx: Interval, jy: Interval, eps: Fraction, tail_start: int, horizon: int) -> bool:
    """False when no pair in ``jx x jy`` can be ε-LY inside the window.

    Both orbits stay in ``f^n(jx) ∪ f^n(jy)``; if the hull of that union never
    has diameter above ``eps`` in the tail window, no distance there exceeds it.
    """
    orb_x, orb_y = interval_orbit(m, jx, horizon), interval_orbit(m, jy, horizon)
    last = horizon
    if orb_x.periodic and orb_y.periodic:
        # past the joint pre-period one joint period shows every value
        start = max(orb_x.cycle_start, orb_y.cycle_start, tail_start)  # type: ignore[type-var]
        last = min(horizon, start + math.lcm(orb_x.period, orb_y.period) - 1)  # type: ignore[arg-type]
    ox, oy = orb_x.items, orb_y.items
    return any(ox[n].hull(oy[n]).diam > eps for n in range(tail_start, last + 1))


def _targets(m: PLMap, region: Interval) -> list[Fraction]:
    # repelling fixed points first: nearby orbits leave them quickly
    fixed = []
    for part in fixed_points(m):
        if part.degenerate and part.lo in region:
            p = part.lo
            expanding = any(
                abs(s) > 1 for (x0, _, x1, _), s in zip(m.segments(), m.slopes) if x0 <= p <= x1
            )
            fixed.append((not expanding, p))
    out = [p for _, p in sorted(fixed)][:_MAX_FIXED_TARGETS]
    for frac in (Fraction(1, 2), Fraction(1, 3)):
        q = region.lo + region.diam * frac
        if q not in out:
            out.append(q)
    return out


def meeting_pair(
    m: PLMap,
    jx: Interval,
    jy: Interval,
    horizon: int = DEFAULT_HORIZON,
    tol_low: RationalLike = DEFAULT_TOL,
    eps: RationalLike | None = None,
    tail_start: int | None = None,
    variant: int = 0,
    goal: PairKind | None = None,
) -> MeetingPair | None:
    """Search for ``x in jx``, ``y in jy`` whose orbits nearly meet inside the tail window.

    A target ``w`` in ``f^k(jx) ∩ f^k(jy)`` is pulled back to ``x`` and
    ``w + offset`` (``|offset| < tol_low``) to ``y``; expansion afterwards
    separates them.  Each candidate is judged only by its own exact orbit
    statistics; the best one found is returned.  An ``EPS_LY`` ends the
    search, and so does an ``LY`` when :func:`eps_ly_possible` rules out
    anything better (callers that already know this may pass ``goal``).
    """
    tol_low, eps = rational(tol_low), _require_eps(eps)
    _check_params(horizon, tol_low, eps)
    ts = horizon // 2 if tail_start is None else tail_start
    if goal is None:
        goal = PairKind.EPS_LY if eps_ly_possible(m, jx, jy, eps, ts, horizon) else PairKind.LY
    meets = sorted({min(ts + 1 + variant, horizon - 1), min(ts + (horizon - ts) // 4, horizon - 1)})
    best: MeetingPair | None = None
    for meet in meets:
        if meet < 1:
            continue
        orb_x = interval_orbit(m, jx, meet).items
        orb_y = interval_orbit(m, jy, meet).items
        ix, iy = orb_x[meet], orb_y[meet]
        region = ix.intersect(iy)
        if region is None:
            continue
        for w in _targets(m, region):
            x = pull_back(m, w, jx, meet, orb_x)
            if x is None:
                continue
            for denom in (3 + 2 * variant, 5 + 2 * variant):
                for sign in (1, -1):
                    off = sign * tol_low / denom
                    z = w + off
                    if z not in iy:
                        continue
                    y = pull_back(m, z, jy, meet, orb_y)
                    if y is None:
                        continue
                    v = classify_point_pair(m, x, y, horizon, tol_low, eps, ts)
                    cand = MeetingPair(x, y, meet, w, off, v)
                    if best is None or v.kind.rank > best.verdict.kind.rank:
                        best = cand
                    if v.kind.rank >= goal.rank:
                        return best
    return best


# ---------------------------------------------------------------------------
# scans


@dataclass(frozen=True)
class ReportRow:
    index: tuple[int, ...]
    best: PairVerdict
    kinds: tuple[PairKind, ...]
    tail_max: Fraction | None = None  # largest tail_max over all samples of the row

    @property
    def only_regular(self) -> bool:
        """Every sample asymptotic or distal: a counterexample candidate."""
        return all(k in (PairKind.ASYMPTOTIC, PairKind.DISTAL) for k in self.kinds)


@dataclass(frozen=True)
class DensityReport:
    """Per-row (cell or sample pair) results of a scan."""

    rows: tuple[ReportRow, ...]
    params: dict
    infeasible: tuple[str, ...] = ()

    @property
    def counts(self) -> dict[str, int]:
        out = {k.value: 0 for k in PairKind}
        for row in self.rows:
            for k in row.kinds:
                out[k.value] += 1
        return out

    @property
    def ly_fraction(self) -> Fraction:
        if not self.rows:
            return Fraction(0)
        return Fraction(sum(r.best.is_ly for r in self.rows), len(self.rows))

    @property
    def eps_ly_fraction(self) -> Fraction:
        if not self.rows:
            return Fraction(0)
        return Fraction(sum(r.best.is_eps_ly for r in self.rows), len(self.rows))

    @property
    def counterexamples(self) -> list[tuple[int, ...]]:
        return [r.index for r in self.rows if r.only_regular]

    def ly_rows(self) -> list[ReportRow]:
        return [r for r in self.rows if r.best.is_ly]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "pair_x", "pair_y", "verdict", "tail_min", "tail_max", "tail_max_float"])
        for r in self.rows:
            px, py = (r.best.pair or ("", ""))[:2]
            w.writerow([
                ":".join(map(str, r.index)),
                fmt(px) if isinstance(px, Fraction) else str(px),
                fmt(py) if isinstance(py, Fraction) else str(py),
                r.best.kind.value,
                fmt(r.best.stats.tail_min),
                fmt(r.best.stats.tail_max),
                f"{float(r.best.stats.tail_max):.6g}",
            ])
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "params": self.params,
            "rows": len(self.rows),
            "counts": self.counts,
            "ly_fraction": fmt(self.ly_fraction),
            "eps_ly_fraction": fmt(self.eps_ly_fraction),
            "counterexample_candidates": [list(i) for i in self.counterexamples],
            "infeasible": list(self.infeasible),
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True)


def _params(horizon, tol_low, eps, tail_start, **extra) -> dict:
    out = {"horizon": horizon, "tol_low": fmt(tol_low), "eps": fmt(eps), "tail_start": tail_start}
    out.update(extra)
    return out


def scan_pairs(
    m: PLMap,
    region: tuple[Interval, Interval],
    grid: int,
    horizon: int = DEFAULT_HORIZON,
    tol_low: RationalLike = DEFAULT_TOL,
    eps: RationalLike | None = None,
    tail_start: int | None = None,
    construct: bool = True,
) -> DensityReport:
    """Look for (ε-)LY pairs in every cell of a ``grid x grid`` partition of ``region``.

    Each cell contributes its centre pair, two fixed off-centre pairs and,
    unless one of those is already ``EPS_LY``, a pair built by
    :func:`meeting_pair` inside the cell's central three quarters.
    """
    tol_low, eps = rational(tol_low), _require_eps(eps)
    _check_params(horizon, tol_low, eps)
    if grid < 1:
        raise DomainError("grid must be at least 1")
    rx, ry = region
    if rx.degenerate or ry.degenerate:
        raise DomainError("scan region must be nondegenerate")
    ts = horizon // 2 if tail_start is None else tail_start
    quarter = Fraction(1, 4)
    rows = []
    for i, cx in enumerate(rx.split(grid)):
        for j, cy in enumerate(ry.split(grid)):
            samples = [
                (cx.mid, cy.mid),
                (cx.lo + cx.diam * quarter, cy.hi - cy.diam * quarter),
                (cx.hi - cx.diam * quarter, cy.lo + cy.diam * quarter),
            ]
            verdicts = [classify_point_pair(m, x, y, horizon, tol_low, eps, ts) for x, y in samples]
            sx, sy = cx.shrink(Fraction(3, 4)), cy.shrink(Fraction(3, 4))
            goal = PairKind.EPS_LY if eps_ly_possible(m, sx, sy, eps, ts, horizon) else PairKind.LY
            if construct and not any(v.kind.rank >= goal.rank for v in verdicts):
                mp = meeting_pair(m, sx, sy, horizon, tol_low, eps, ts, goal=goal)
                if mp is not None:
                    verdicts.append(mp.verdict)
            best = max(verdicts, key=lambda v: v.kind.rank)
            rows.append(ReportRow((i, j), best, tuple(v.kind for v in verdicts),
                                  max(v.stats.tail_max for v in verdicts)))
    return DensityReport(tuple(rows), _params(horizon, tol_low, eps, ts, grid=grid,
                                              region=[str(rx), str(ry)]))


def _box_members(box: VietorisBox, samples: int) -> list[CompactSet]:
    cores = [o.core() for o in box]
    out = []
    for s in range(samples):
        frac = Fraction(2 * s + 1, 2 * samples)
        out.append(CompactSet.points(*(c.lo + c.diam * frac for c in cores)))
    return out


def _synchronised(m: PLMap, boxes, horizon, tol_low, eps, ts, variant) -> tuple[CompactSet, CompactSet] | None:
    bu, bv = boxes
    cu = [o.core() for o in bu]
    cv = [o.core() for o in bv]
    mp = meeting_pair(m, cu[0], cv[0], horizon, tol_low, eps, ts, variant)
    if mp is None:
        return None
    us, vs = [mp.x], [mp.y]
    for core in cu[1:]:
        p = pull_back(m, mp.target, core, mp.meet)
        if p is None:
            return None
        us.append(p)
    for core in cv[1:]:
        p = pull_back(m, mp.target + mp.offset, core, mp.meet)
        if p is None:
            return None
        vs.append(p)
    return CompactSet.points(*us), CompactSet.points(*vs)


def scan_hyper_pairs(
    m: PLMap,
    boxes: tuple[VietorisBox, VietorisBox],
    samples: int,
    horizon: int = DEFAULT_HORIZON,
    tol_low: RationalLike = DEFAULT_TOL,
    eps: RationalLike | None = None,
    tail_start: int | None = None,
    construct: bool = True,
) -> DensityReport:
    """Classify finite member sets of two Vietoris boxes.

    ``samples`` member sets per box come from an even grid in the cores of
    the opens (one point per open); all ``samples**2`` pairs are classified.
    With ``construct`` each of ``samples`` extra pairs collapses every open
    onto the two points of a :func:`meeting_pair`, so that after the meeting
    time both sets are singletons following that pair.
    """
    tol_low, eps = rational(tol_low), _require_eps(eps)
    _check_params(horizon, tol_low, eps)
    if samples < 1:
        raise DomainError("samples must be at least 1")
    ts = horizon // 2 if tail_start is None else tail_start
    members_u = _box_members(boxes[0], samples)
    members_v = _box_members(boxes[1], samples)
    rows = []
    for s, a in enumerate(members_u):
        for t, b in enumerate(members_v):
            v = classify_set_pair(m, a, b, horizon, tol_low, eps, ts)
            rows.append(ReportRow((s, t), v, (v.kind,), v.stats.tail_max))
    infeasible = []
    if construct:
        for s in range(samples):
            sync = _synchronised(m, boxes, horizon, tol_low, eps, ts, s)
            if sync is None:
                infeasible.append(f"synchronised sample {s}: no common meeting target")
                continue
            v = classify_set_pair(m, sync[0], sync[1], horizon, tol_low, eps, ts)
            rows.append(ReportRow(("sync", s), v, (v.kind,), v.stats.tail_max))
    return DensityReport(tuple(rows), _params(horizon, tol_low, eps, ts, samples=samples,
                                              boxes=[str(boxes[0]), str(boxes[1])]),
                         tuple(infeasible))
