"""Checkable conditions for generic and dense chaos of PL interval maps.

Every check returns a tri-state.  ``fail`` is only emitted with a finite
certificate, almost always an exactly repeating interval iterate (the
sequence ``f^n(J)`` is hashed, and once it repeats every later term is
known).  Conditions that quantify over all intervals are evaluated on a
dyadic grid of cells; such results carry ``sampled=True``.

The aggregate :func:`classify_chaos` wires the conditions together through
the known equivalences for interval maps:

* generic  <=  route (f): (f-1) and (f-2); route (g): (g-1) and (g-2);
  route (h): (h-1) and (h-2);
* generic with ε  <=>  dense with ε (same ε), and (f-2) with ``a = ε``;
* dense  <=>  fixed-point attraction (a), positive liminf of diameters (b)
  and LY pairs in the one-sided punctured neighbourhoods of the fixed point (c).

The two constructors build Li-Yorke pairs of finite sets inside given
Vietoris boxes by pulling a point pair back through ``f^K``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .hyperspace import VietorisBox, vietoris_member
from .intervals import ONE, ZERO, CompactSet, DomainError, Interval, RationalLike, fmt, rational
from .pairs import (
    DEFAULT_HORIZON,
    DEFAULT_TOL,
    PairKind,
    PairVerdict,
    classify_set_pair,
    meeting_pair,
    pull_back,
    scan_pairs,
)
from .pl_map import IntervalOrbit, PLMap, fixed_points, image_interval, interval_orbit, power
from .stats import OrbitStats

__all__ = [
    "Status",
    "CheckResult",
    "TransitiveInterval",
    "TransitiveIntervalReport",
    "Params",
    "ChaosVerdict",
    "TraceStep",
    "Construction",
    "check_f1",
    "check_diam_growth",
    "check_g1",
    "check_covering_transitivity",
    "find_invariant_transitive_intervals",
    "classify_chaos",
    "construct_hyper_ly_pair",
    "construct_hyper_eps_ly_pair",
]


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CheckResult:
    status: Status
    witness: dict = field(default_factory=dict)
    sampled: bool = False

    @property
    def label(self) -> str:
        return _label(self.status, self.sampled)

    def to_dict(self) -> dict:
        return {"status": self.label, "witness": self.witness}


def _label(status: Status, sampled: bool) -> str:
    return f"{status.value} (sampled)" if sampled and status is not Status.INCONCLUSIVE else status.value


def _nondegenerate(*js: Interval) -> None:
    for j in js:
        if j.degenerate:
            raise DomainError(f"interval {j} is degenerate")


def _joint_cycle(o1: IntervalOrbit, o2: IntervalOrbit, limit: int = 1 << 16):
    """Index range covering one period of the pair sequence, or ``None``."""
    if not (o1.periodic and o2.periodic):
        return None
    start = max(o1.cycle_start, o2.cycle_start)  # type: ignore[type-var]
    period = math.lcm(o1.period, o2.period)  # type: ignore[arg-type]
    if period > limit:
        return None
    return range(start, start + period)


# ---------------------------------------------------------------------------
# single conditions


def _f1(o1: IntervalOrbit, o2: IntervalOrbit, horizon: int, tol: Fraction) -> CheckResult:
    dists = [o1.items[n].distance_to(o2.items[n]) for n in range(horizon + 1)]
    for n, d in enumerate(dists):
        if d <= tol:
            return CheckResult(Status.PASS, {"n": n, "dist": fmt(d)})
    cyc = _joint_cycle(o1, o2)
    if cyc is not None:
        low = min(o1.at(n).distance_to(o2.at(n)) for n in cyc)
        # the pair sequence repeats forever, so liminf dist equals this exact minimum
        return CheckResult(Status.FAIL, {"certificate": "joint_cycle", "start": cyc.start,
                                         "period": len(cyc), "liminf_dist": fmt(low)})
    return CheckResult(Status.INCONCLUSIVE, {"min_dist": fmt(min(dists))})


def check_f1(
    m: PLMap, j1: Interval, j2: Interval, horizon: int = DEFAULT_HORIZON, tol_low: RationalLike = DEFAULT_TOL
) -> CheckResult:
    """(f-1) for one pair: ``dist(f^n j1, f^n j2) <= tol_low`` for some ``n <= horizon``.

    The witness of a pass is the first such ``n``.  A fail needs both interval
    orbits to cycle exactly, so that the exact liminf is a minimum over one
    joint period (and it is positive, since no term reached ``tol_low``).
    """
    _nondegenerate(j1, j2)
    tol = rational(tol_low)
    return _f1(interval_orbit(m, j1, horizon), interval_orbit(m, j2, horizon), horizon, tol)


def _diam_limits(orbit: IntervalOrbit, horizon: int, tail_start: int | None = None) -> tuple[Fraction, Fraction, bool]:
    """``(liminf, limsup)`` of ``diam f^n(J)``: exact over a cycle, else tail proxies."""
    if orbit.periodic:
        ds = [iv.diam for iv in orbit.cycle()]
        return min(ds), max(ds), True
    stats = OrbitStats.from_distances([iv.diam for iv in orbit.items[: horizon + 1]], tail_start)
    return stats.tail_min, stats.tail_max, False


def check_diam_growth(
    m: PLMap, j: Interval, horizon: int = DEFAULT_HORIZON, tail_start: int | None = None
) -> OrbitStats:
    """Diameters of ``f^n(j)``, ``n <= horizon``; tail_max ~ limsup (f-2), tail_min ~ liminf (g-2)."""
    _nondegenerate(j)
    orbit = interval_orbit(m, j, horizon)
    return OrbitStats.from_distances([iv.diam for iv in orbit.items], tail_start)


def _g1(orbit: IntervalOrbit, x0: Fraction, horizon: int, tol: Fraction, tail_start: int) -> CheckResult:
    if orbit.periodic:
        ds = [iv.distance_to_point(x0) for iv in orbit.cycle()]
        # exact: the limit exists only if every cycle member contains x0
        status = Status.PASS if all(d == 0 for d in ds) else Status.FAIL
        return CheckResult(status, {"certificate": "cycle", "start": orbit.cycle_start,
                                    "period": orbit.period, "max_cycle_dist": fmt(max(ds))})
    tail = [orbit.items[n].distance_to_point(x0) for n in range(tail_start, horizon + 1)]
    if max(tail) <= tol:
        return CheckResult(Status.PASS, {"tail_max_dist": fmt(max(tail))})
    if min(tail) > tol and all(a <= b for a, b in zip(tail, tail[1:])):
        return CheckResult(Status.FAIL, {"certificate": "non_decreasing_tail", "tail_min_dist": fmt(min(tail))})
    return CheckResult(Status.INCONCLUSIVE, {"tail_max_dist": fmt(max(tail))})


def check_g1(
    m: PLMap,
    x0: RationalLike,
    j: Interval,
    horizon: int = DEFAULT_HORIZON,
    tol_low: RationalLike = DEFAULT_TOL,
    tail_start: int | None = None,
) -> CheckResult:
    """(g-1), also the first dense-chaos condition, for one interval: ``dist(f^n j, x0) -> 0``.

    With an exact cycle the answer is exact.  Otherwise: pass when the whole
    tail window is within ``tol_low``; fail when the tail stays above it and
    never decreases; inconclusive in between.
    """
    x0 = rational(x0)
    if m(x0) != x0:
        raise DomainError(f"{x0} is not a fixed point")
    _nondegenerate(j)
    ts = horizon // 2 if tail_start is None else tail_start
    return _g1(interval_orbit(m, j, horizon), x0, horizon, rational(tol_low), ts)


def _cover_one(orbit: IntervalOrbit, core: Interval, horizon: int) -> Status:
    if orbit.periodic:
        return Status.PASS if all(iv.contains_interval(core) for iv in orbit.cycle()) else Status.FAIL
    if all(orbit.items[n].contains_interval(core) for n in range(horizon // 2, horizon + 1)):
        return Status.PASS
    return Status.INCONCLUSIVE


def check_covering_transitivity(m: PLMap, t: Interval, grid: int = 5, horizon: int = 64) -> CheckResult:
    """Covering test on an invariant interval ``t``.

    Each of the ``2**grid`` closed cells ``J`` of ``t`` must eventually have
    ``H ⊆ f^n(J)`` for all later ``n``, where ``H`` is the central 90% of
    ``t``.  A cycle decides a cell exactly; without one the cell passes if
    ``H`` is covered throughout the second half of the horizon.
    """
    _nondegenerate(t)
    if not t.contains_interval(image_interval(m, t)):
        raise DomainError(f"{t} is not invariant")
    if grid < 0:
        raise DomainError("grid must be non-negative")
    core = t.shrink(Fraction(9, 10))
    worst = Status.PASS
    undecided = 0
    for cell in t.split(2**grid):
        s = _cover_one(interval_orbit(m, cell, horizon), core, horizon)
        if s is Status.FAIL:
            return CheckResult(Status.FAIL, {"interval": str(t), "cell": str(cell), "core": str(core),
                                             "certificate": "cycle_misses_core"}, sampled=True)
        if s is Status.INCONCLUSIVE:
            worst = Status.INCONCLUSIVE
            undecided += 1
    return CheckResult(worst, {"interval": str(t), "core": str(core), "cells": 2**grid,
                               "undecided_cells": undecided}, sampled=True)


# ---------------------------------------------------------------------------
# invariant transitive intervals


@dataclass(frozen=True)
class TransitiveInterval:
    interval: Interval
    dichotomy: str  # "all_powers_transitive" | "two_swapped_halves" | "not_established"
    swap_point: Fraction | None
    transitive: Status
    evidence: tuple[CheckResult, ...] = ()

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "interval": str(self.interval),
            "dichotomy": self.dichotomy,
            "transitive": self.transitive.value,
            "evidence": [e.to_dict() for e in self.evidence],
        }
        if self.swap_point is not None:
            out["dichotomy"] = f"two_swapped_halves({fmt(self.swap_point)})"
            out["swap_point"] = fmt(self.swap_point)
        return out


@dataclass(frozen=True)
class TransitiveIntervalReport:
    entries: tuple[TransitiveInterval, ...]
    candidates_tested: int

    @property
    def intervals(self) -> list[Interval]:
        return [e.interval for e in self.entries]

    @property
    def transitive(self) -> list[TransitiveInterval]:
        return [e for e in self.entries if e.transitive is Status.PASS]

    @property
    def dichotomy(self) -> str:
        """Dichotomy of the single reported interval, or ``not_established``."""
        if len(self.entries) == 1:
            e = self.entries[0]
            return f"two_swapped_halves({fmt(e.swap_point)})" if e.swap_point is not None else e.dichotomy
        return "not_established"

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries], "candidates_tested": self.candidates_tested,
                "dichotomy": self.dichotomy}


def _candidates(m: PLMap, grid: int, horizon: int) -> list[Interval]:
    found = {Interval(ZERO, ONE)}
    for cell in Interval(ZERO, ONE).split(2**grid):
        orbit = interval_orbit(m, cell, horizon)
        if not orbit.periodic:
            continue
        cyc = orbit.cycle()
        found.update(iv for iv in cyc if not iv.degenerate)
        union = CompactSet(cyc)
        if len(union) == 1 and not union.parts[0].degenerate:
            found.add(union.parts[0])
    return sorted(found)


def _swap_point(m: PLMap, t: Interval) -> Fraction | None:
    for part in fixed_points(m):
        y = part.lo
        if part.degenerate and t.lo < y < t.hi:
            left, right = Interval(t.lo, y), Interval(y, t.hi)
            if image_interval(m, left) == right and image_interval(m, right) == left:
                return y
    return None


@lru_cache(maxsize=64)
def find_invariant_transitive_intervals(m: PLMap, grid: int = 5, horizon: int = 64) -> TransitiveIntervalReport:
    """Invariant intervals on which ``m`` is (sampled-)transitive.

    Candidates are ``[0, 1]`` and the exact cycle limits (and connected
    cycle unions) of the grid cells' interval orbits.  An invariant
    candidate with an interior fixed point whose two halves are swapped is
    reported as ``two_swapped_halves``, transitive when the square map passes
    the covering test on both halves.  Any other candidate is reported only
    when the covering test passes on it (``all_powers_transitive``).
    """
    entries = []
    cands = _candidates(m, grid, horizon)
    square: PLMap | None = None
    for t in cands:
        if t.degenerate or not t.contains_interval(image_interval(m, t)):
            continue
        y = _swap_point(m, t)
        if y is not None:
            square = square or power(m, 2)
            halves = [check_covering_transitivity(square, h, grid, horizon) for h in
                      (Interval(t.lo, y), Interval(y, t.hi))]
            status = _conj([h.status for h in halves])
            entries.append(TransitiveInterval(t, "two_swapped_halves", y, status, tuple(halves)))
            continue
        cover = check_covering_transitivity(m, t, grid, horizon)
        if cover.status is Status.PASS:
            entries.append(TransitiveInterval(t, "all_powers_transitive", None, Status.PASS, (cover,)))
    # a swapped interval nested in a larger one around the same fixed point adds nothing
    entries = [e for e in entries if e.swap_point is None or not any(
        o is not e and o.swap_point == e.swap_point and o.interval.contains_interval(e.interval)
        for o in entries)]
    return TransitiveIntervalReport(tuple(entries), len(cands))


def _conj(statuses) -> Status:
    statuses = list(statuses)
    if any(s is Status.FAIL for s in statuses):
        return Status.FAIL
    if all(s is Status.PASS for s in statuses):
        return Status.PASS
    return Status.INCONCLUSIVE


# ---------------------------------------------------------------------------
# aggregate classifier


@dataclass(frozen=True)
class Params:
    """Knobs of the classifier and the constructors.

    ``eps`` is the ε under test; ``None`` means "use the estimate".
    ``grid`` sets the interval cells (width ``2**-grid``) and the smallest
    punctured neighbourhood radius; ``cover_grid``/``cover_horizon`` feed the
    covering test; ``scan_grid`` is the pair-scan grid used for dense-ε.
    """

    horizon: int = DEFAULT_HORIZON
    tol_low: Fraction = DEFAULT_TOL
    eps: Fraction | None = None
    grid: int = 6
    cover_grid: int = 5
    cover_horizon: int = 64
    scan_grid: int = 8

    def __post_init__(self) -> None:
        object.__setattr__(self, "tol_low", rational(self.tol_low))
        if self.eps is not None:
            object.__setattr__(self, "eps", rational(self.eps))
            if not 0 < self.eps < 1:
                raise DomainError("eps must lie in (0, 1)")
        if self.horizon < 4:
            raise DomainError("horizon must be at least 4")
        if not 0 < self.tol_low < Fraction(1, 2**10):
            raise DomainError("tol_low must lie in (0, 2^-10)")
        for name in ("grid", "cover_grid", "scan_grid"):
            if getattr(self, name) < 1:
                raise DomainError(f"{name} must be at least 1")

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "tol_low": fmt(self.tol_low),
            "eps": None if self.eps is None else fmt(self.eps),
            "grid": self.grid,
            "cover_grid": self.cover_grid,
            "cover_horizon": self.cover_horizon,
            "scan_grid": self.scan_grid,
        }


VARIANTS = ("generic", "generic_eps", "dense", "dense_eps")


@dataclass(frozen=True)
class ChaosVerdict:
    statuses: dict  # variant name -> Status
    sampled: dict  # variant name -> bool
    eps: Fraction | None
    eps_estimate: Fraction | None
    evidence: dict  # condition name -> CheckResult
    params: Params
    notes: tuple[str, ...] = ()

    @property
    def generic(self) -> Status:
        return self.statuses["generic"]

    @property
    def generic_eps(self) -> Status:
        return self.statuses["generic_eps"]

    @property
    def dense(self) -> Status:
        return self.statuses["dense"]

    @property
    def dense_eps(self) -> Status:
        return self.statuses["dense_eps"]

    def label(self, variant: str) -> str:
        return _label(self.statuses[variant], self.sampled[variant])

    def to_dict(self) -> dict:
        return {
            "verdict": {v: self.label(v) for v in VARIANTS},
            "eps": None if self.eps is None else fmt(self.eps),
            "eps_estimate": None if self.eps_estimate is None else fmt(self.eps_estimate),
            "conditions": {k: self.evidence[k].to_dict() for k in sorted(self.evidence)},
            "params": self.params.to_dict(),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def table(self) -> str:
        rows = [f"{v:<12} {self.label(v)}" for v in VARIANTS]
        rows.append("")
        rows += [f"{k:<14} {self.evidence[k].label}" for k in sorted(self.evidence)]
        return "\n".join(rows)


def _hull(ivs) -> Interval:
    return Interval(min(iv.lo for iv in ivs), max(iv.hi for iv in ivs))


def _fixed_candidates(m: PLMap) -> list[Fraction]:
    out: list[Fraction] = []
    for part in fixed_points(m):
        for p in (part.lo, part.hi):
            if p not in out:
                out.append(p)
    return out


def _dyadic_below(value: Fraction, kmax: int = 10) -> Fraction | None:
    for k in range(1, kmax + 1):
        e = Fraction(1, 2**k)
        if e < value:
            return e
    return None


def _dense_c(m: PLMap, x0: Fraction, p: Params, eps: Fraction) -> CheckResult:
    """LY pairs in one-sided punctured neighbourhoods of ``x0`` of radius 2^-1 .. 2^-grid."""
    tried = []
    for k in range(1, p.grid + 1):
        r = Fraction(1, 2**k)
        sides = []
        if x0 - r * Fraction(3, 4) >= 0:
            sides.append(("left", Interval(x0 - r * Fraction(3, 4), x0 - r / 4)))
        if x0 + r * Fraction(3, 4) <= 1:
            sides.append(("right", Interval(x0 + r / 4, x0 + r * Fraction(3, 4))))
        regions = [(name, (cell, cell)) for name, cell in sides]
        if len(sides) == 2:
            regions.append(("across", (sides[0][1], sides[1][1])))
        for name, region in regions:
            rep = scan_pairs(m, region, 1, p.horizon, p.tol_low, eps)
            row = rep.rows[0]
            tried.append(f"{name}:2^-{k}")
            if not row.best.is_ly:
                return CheckResult(Status.INCONCLUSIVE, {"x0": fmt(x0), "radius": fmt(r), "side": name,
                                                         "region": [str(c) for c in region],
                                                         "best": row.best.kind.value}, sampled=True)
    return CheckResult(Status.PASS, {"x0": fmt(x0), "neighbourhoods": tried}, sampled=True)


def classify_chaos(m: PLMap, params: Params | None = None) -> ChaosVerdict:
    """Aggregate verdict for the four chaos variants; see the module docstring."""
    return _classify(m, params or Params())


@lru_cache(maxsize=32)
def _classify(m: PLMap, p: Params) -> ChaosVerdict:
    H, tol = p.horizon, p.tol_low
    ts = H // 2
    width = Fraction(1, 2**p.grid)
    cells = Interval(ZERO, ONE).split(2**p.grid)
    orbits = [interval_orbit(m, c, H) for c in cells]
    ev: dict[str, CheckResult] = {}
    notes: list[str] = []

    # diameters: exact over cycles, tail proxies otherwise
    limits = [_diam_limits(o, H, ts) for o in orbits]
    lim_inf = min(l[0] for l in limits)
    lim_sup = min(l[1] for l in limits)
    i_sup = min(range(len(cells)), key=lambda i: limits[i][1])
    i_inf = min(range(len(cells)), key=lambda i: limits[i][0])
    eps_est = _dyadic_below(lim_sup)
    eps = p.eps if p.eps is not None else eps_est

    # (f-1) over all pairs of cells
    f1 = CheckResult(Status.PASS, {"pairs": len(cells) * (len(cells) + 1) // 2}, sampled=True)
    undecided = None
    for i in range(len(cells)):
        for j in range(i, len(cells)):
            r = _f1(orbits[i], orbits[j], H, tol)
            if r.status is Status.FAIL:
                f1 = CheckResult(Status.FAIL, dict(r.witness, j1=str(cells[i]), j2=str(cells[j])))
                break
            if r.status is Status.INCONCLUSIVE and undecided is None:
                undecided = (i, j)
        if f1.status is Status.FAIL:
            break
    if f1.status is Status.PASS and undecided is not None:
        f1 = CheckResult(Status.INCONCLUSIVE, {"j1": str(cells[undecided[0]]), "j2": str(cells[undecided[1]])},
                         sampled=True)
    ev["f1"] = f1

    # (f-2) / (g-2): a uniform bound must beat the cell width, else the cells never grew
    def _bound(value: Fraction, idx: int, what: str) -> CheckResult:
        w = {what: fmt(value), "cell": str(cells[idx]), "cell_width": fmt(width),
             "exact_cycle": limits[idx][2]}
        return CheckResult(Status.PASS if value > width else Status.FAIL, w, sampled=True)

    ev["f2"] = _bound(lim_sup, i_sup, "min_limsup_diam")
    ev["g2"] = _bound(lim_inf, i_inf, "min_liminf_diam")

    # dense (b): positive liminf per cell; a degenerate cycle member refutes it exactly
    zero = [i for i, l in enumerate(limits) if l[0] == 0 and l[2]]
    if zero:
        ev["dense_b"] = CheckResult(Status.FAIL, {"cell": str(cells[zero[0]]), "certificate": "cycle_hits_point"})
    else:
        ev["dense_b"] = CheckResult(Status.PASS if lim_inf > 0 else Status.INCONCLUSIVE,
                                  {"min_liminf_diam": fmt(lim_inf)}, sampled=True)

    # (g-1), the first dense condition: some fixed point attracts every cell
    g1 = CheckResult(Status.FAIL, {"fixed_points_tried": []}, sampled=True)
    tried = []
    x0_ok: Fraction | None = None
    for x0 in _fixed_candidates(m):
        results = [_g1(o, x0, H, tol, ts) for o in orbits]
        status = _conj(r.status for r in results)
        tried.append(fmt(x0))
        if status is Status.PASS:
            x0_ok = x0
            g1 = CheckResult(Status.PASS, {"x0": fmt(x0)}, sampled=True)
            break
        if status is Status.INCONCLUSIVE:
            g1 = CheckResult(Status.INCONCLUSIVE, {"x0": fmt(x0)}, sampled=True)
    if g1.status is Status.FAIL:
        g1 = CheckResult(Status.FAIL, {"fixed_points_tried": tried}, sampled=True)
    ev["g1"] = g1
    ev["dense_a"] = g1

    # dense (c): LY pairs in punctured neighbourhoods of x0
    if x0_ok is not None:
        ev["dense_c"] = _dense_c(m, x0_ok, p, eps or Fraction(1, 2))
    else:
        ev["dense_c"] = CheckResult(Status.INCONCLUSIVE, {"reason": "no fixed point passed (a)"})

    # (h): transitive intervals
    rep = find_invariant_transitive_intervals(m, p.cover_grid, p.cover_horizon)
    trans = [e.interval for e in rep.transitive]
    shared = len(trans) == 2 and trans[0].intersect(trans[1]) is not None and trans[0].intersect(trans[1]).degenerate
    h1_status = Status.PASS if len(trans) == 1 or shared else Status.FAIL
    ev["h1"] = CheckResult(h1_status, {"transitive": [str(t) for t in trans],
                                       "report": rep.to_dict()}, sampled=True)
    h2 = CheckResult(Status.PASS, {"cells": len(cells)}, sampled=True)
    if trans:
        for c, o in zip(cells, orbits):
            hits = any(iv.hi > t.lo and iv.lo < t.hi for iv in o.items for t in trans)
            if not hits:
                h2 = CheckResult(Status.FAIL if o.periodic else Status.INCONCLUSIVE,
                                 {"cell": str(c)}, sampled=True)
                break
    else:
        h2 = CheckResult(Status.FAIL, {"reason": "no transitive interval"}, sampled=True)
    ev["h2"] = h2

    # dense-ε: exact refutation by a cell whose limsup diameter cannot exceed ε
    if eps is None:
        ev["dense_eps"] = CheckResult(Status.FAIL, {"reason": "no dyadic eps below the minimal limsup diameter"},
                                      sampled=True)
    else:
        # prefer a cell lying inside the hull of its own cycle: the box then sits where the dynamics lives
        certs = [i for i, l in enumerate(limits) if l[2] and l[1] <= eps]
        inside = [i for i in certs if _hull(orbits[i].cycle()).contains_interval(cells[i])]
        cert = (inside or certs or [None])[0]
        if cert is not None:
            box = cells[cert]
            # direct orbit computations inside the box: grid samples, then constructed
            # meeting pairs (these may reach the bound itself, never exceed it)
            grid_probe = scan_pairs(m, (box, box), 2, H, tol, eps, construct=False)
            built_probe = scan_pairs(m, (box, box), 2, H, tol, eps)
            ev["dense_eps"] = CheckResult(Status.FAIL, {
                "eps": fmt(eps),
                "box": [str(box), str(box)],
                "limsup_diam": fmt(limits[cert][1]),
                "certificate": "cycle_diameter_at_most_eps",
                "sampled_tail_max": fmt(max(r.tail_max for r in grid_probe.rows)),
                "constructed_tail_max": fmt(max(r.tail_max for r in built_probe.rows)),
            })
        else:
            scan = scan_pairs(m, (Interval(ZERO, ONE), Interval(ZERO, ONE)), p.scan_grid, H, tol, eps)
            frac = scan.eps_ly_fraction
            ev["dense_eps"] = CheckResult(Status.PASS if frac == 1 else Status.INCONCLUSIVE,
                                          {"eps": fmt(eps), "eps_ly_fraction": fmt(frac),
                                           "counterexample_candidates": [list(i) for i in scan.counterexamples]},
                                          sampled=True)

    # routes and aggregation
    route_f = _conj([ev["f1"].status, ev["f2"].status])
    route_g = _conj([ev["g1"].status, ev["g2"].status])
    route_h = _conj([ev["h1"].status, ev["h2"].status])
    dense = _conj([ev["dense_a"].status, ev["dense_b"].status, ev["dense_c"].status])
    dense_eps = ev["dense_eps"].status

    if dense is Status.FAIL or ev["f1"].status is Status.FAIL or route_h is Status.FAIL:
        generic = Status.FAIL
        if Status.PASS in (route_f, route_g):
            notes.append("routes disagree: a refutation outranks resolution-limited passes")
    elif Status.PASS in (route_f, route_g, route_h):
        generic = Status.PASS
    else:
        generic = Status.INCONCLUSIVE

    a_eps = eps is not None and all(l[1] > eps for l in limits)
    if generic is Status.FAIL or dense_eps is Status.FAIL:
        generic_eps = Status.FAIL
    elif dense_eps is Status.PASS and ev["f1"].status is Status.PASS and a_eps:
        generic_eps = Status.PASS
    else:
        generic_eps = Status.INCONCLUSIVE

    st = {"generic": generic, "generic_eps": generic_eps, "dense": dense, "dense_eps": dense_eps}
    _wire(st, notes)
    sampled = {v: True for v in VARIANTS}
    for v in VARIANTS:
        if st[v] is Status.FAIL and v in ("dense_eps", "generic_eps") and "box" in ev["dense_eps"].witness:
            sampled[v] = False
    if st["generic"] is Status.FAIL and ev["f1"].status is Status.FAIL:
        sampled["generic"] = False
    return ChaosVerdict(st, sampled, eps, eps_est, ev, p, tuple(notes))


def _wire(st: dict, notes: list[str]) -> None:
    """Enforce the equivalences; every forced change is recorded in ``notes``."""

    def force(v: str, s: Status, why: str) -> None:
        if st[v] is not s:
            notes.append(f"{v}: {st[v].value} -> {s.value} ({why})")
            st[v] = s

    if st["dense"] is Status.FAIL:
        for v in VARIANTS:
            force(v, Status.FAIL, "dense fails")
    if st["generic"] is Status.FAIL:
        force("generic_eps", Status.FAIL, "generic fails")
        force("dense_eps", Status.FAIL, "dense-eps for some eps implies generic")
    if st["generic_eps"] is Status.PASS:
        force("generic", Status.PASS, "generic-eps passes")
        force("dense_eps", Status.PASS, "generic-eps passes")
    if st["dense_eps"] is Status.PASS:
        force("dense", Status.PASS, "dense-eps passes")


# ---------------------------------------------------------------------------
# constructors


@dataclass(frozen=True)
class TraceStep:
    stage: str
    detail: dict

    def to_dict(self) -> dict:
        return {"stage": self.stage, **self.detail}


@dataclass(frozen=True)
class Construction:
    """Result of a constructor; ``found`` is False with ``failed_stage`` naming where it stopped."""

    found: bool
    U: CompactSet | None
    V: CompactSet | None
    trace: tuple[TraceStep, ...]
    verdict: PairVerdict | None = None
    failed_stage: str | None = None
    case: str | None = None
    branch: str | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "found": self.found,
            "trace": [t.to_dict() for t in self.trace],
        }
        if self.found:
            out.update(U=str(self.U), V=str(self.V), case=self.case, branch=self.branch,
                       verdict=self.verdict.to_dict() if self.verdict else None)
        else:
            out["failed_stage"] = self.failed_stage
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class _NotFound(Exception):
    def __init__(self, stage: str, detail: dict | None = None):
        super().__init__(stage)
        self.stage = stage
        self.detail = detail or {}


def _cores(box: VietorisBox) -> list[Interval]:
    return [o.core() for o in box]


def _delta(g: PLMap, pieces: list[Interval], horizon: int) -> Fraction:
    return min(_diam_limits(interval_orbit(g, j, horizon), horizon)[0] for j in pieces)


def _k_search(g: PLMap, pieces: list[Interval], delta: Fraction, x0s: list[Fraction], horizon: int):
    """First ``(x0, k)`` with ``dist(g^k A, x0) < δ/4`` and ``diam g^k A > δ/2`` for every piece."""
    orbits = [interval_orbit(g, j, horizon).items for j in pieces]
    for x0 in x0s:
        for k in range(horizon + 1):
            if all(o[k].distance_to_point(x0) < delta / 4 and o[k].diam > delta / 2 for o in orbits):
                return x0, k
    return None


def _pair_offsets():
    return (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 5), Fraction(4, 5))


@dataclass
class _Setup:
    """Everything the case analysis needs, in the map ``g`` (``m`` or ``m**2``)."""

    g: PLMap
    scale: int  # m-steps per g-step
    cores_u: list[Interval]
    cores_v: list[Interval]
    class_u: list[int]
    class_v: list[int]
    images: dict  # class -> intersection interval S_c
    steps: int  # total g-steps K pulled back through


def _cases(setup: _Setup, m: PLMap, p: Params, eps: Fraction, want: PairKind, trace: list[TraceStep]):
    H, tol = p.horizon, p.tol_low
    ts = H // 2
    K, sc = setup.steps, setup.scale
    hg = H // sc - K
    tg = -(-ts // sc) - K
    if tg < 1 or hg <= tg:
        raise _NotFound("window", {"steps": K, "scale": sc, "horizon": H})
    cu, cv = setup.class_u, setup.class_v
    classes = {1: [c for c in cu + cv if c == 1], 2: [c for c in cu + cv if c == 2]}
    if all(c in cu for c in (1, 2)) and all(c in cv for c in (1, 2)):
        case = "case1"
    elif not classes[1] or not classes[2]:
        case = "case3"
    else:
        case = "case2"
    trace.append(TraceStep("case", {"case": case, "classes_U": cu, "classes_V": cv}))

    def pull(target: Fraction, core: Interval) -> Fraction:
        pt = pull_back(setup.g, target, core, K)
        if pt is None:  # pragma: no cover - the targets lie in g^K(core) by construction
            raise _NotFound("pull-back", {"target": fmt(target), "core": str(core)})
        return pt

    if case == "case3":
        c = 1 if classes[1] else 2
        s_iv = setup.images[c]
        jobs = [(s_iv, s_iv, None)]
    elif case == "case1":
        jobs = [(setup.images[1], setup.images[1], setup.images[2])]
    else:
        # the class holding every U (or every V) provides s; the other class provides r
        c = 1 if all(x == 1 for x in cu) or all(x == 1 for x in cv) else 2
        jobs = [(setup.images[c], setup.images[3 - c], None)]
    for variant in range(4):
        for sx, sy, rest in jobs:
            mp = meeting_pair(setup.g, sx.shrink(Fraction(3, 4)), sy.shrink(Fraction(3, 4)),
                              hg, tol, eps, tg, variant)
            if mp is None or mp.verdict.kind.rank < want.rank:
                continue
            s, q = mp.x, mp.y
            rs = [None] if rest is None else [rest.lo + rest.diam * f for f in _pair_offsets()]
            for r in rs:
                if case == "case3":
                    c = 1 if classes[1] else 2
                    us = [pull(s, core) for core in setup.cores_u]
                    vs = [pull(q, core) for core in setup.cores_v]
                elif case == "case1":
                    us = [pull(s if k == 1 else r, core) for k, core in zip(cu, setup.cores_u)]
                    vs = [pull(q if k == 1 else r, core) for k, core in zip(cv, setup.cores_v)]
                else:
                    c = 1 if all(x == 1 for x in cu) or all(x == 1 for x in cv) else 2
                    if all(x == c for x in cu):
                        us = [pull(s, core) for core in setup.cores_u]
                        vs = [pull(s if k == c else q, core) for k, core in zip(cv, setup.cores_v)]
                    else:
                        vs = [pull(s, core) for core in setup.cores_v]
                        us = [pull(s if k == c else q, core) for k, core in zip(cu, setup.cores_u)]
                U, V = CompactSet.points(*us), CompactSet.points(*vs)
                v = classify_set_pair(m, U, V, H, tol, eps, ts)
                trace.append(TraceStep("verify", {"variant": variant, "s": fmt(s), "p": fmt(q),
                                                  "r": None if r is None else fmt(r),
                                                  "point_pair": mp.verdict.kind.value,
                                                  "set_pair": v.kind.value}))
                if v.kind.rank >= want.rank:
                    return U, V, v, case
    raise _NotFound("pair-search" if not any(t.stage == "verify" for t in trace) else "verify",
                    {"want": want.value})


def _result(fn, m, box_u, box_v, p, eps, want, trace):
    try:
        U, V, v, case, branch = fn(m, box_u, box_v, p, eps, want, trace)
    except _NotFound as nf:
        trace.append(TraceStep("not-found", {"stage": nf.stage, **nf.detail}))
        return Construction(False, None, None, tuple(trace), failed_stage=nf.stage)
    ok_u, ok_v = vietoris_member(U, box_u), vietoris_member(V, box_v)
    trace.append(TraceStep("membership", {"U_in_boxU": ok_u, "V_in_boxV": ok_v}))
    if not (ok_u and ok_v):  # pragma: no cover - pull-backs land in the cores
        return Construction(False, None, None, tuple(trace), failed_stage="membership")
    return Construction(True, U, V, tuple(trace), v, None, case, branch)


def _split_construction(m, box_u, box_v, p, eps, want, trace):
    H = p.horizon
    cu, cv = _cores(box_u), _cores(box_v)
    pieces = cu + cv
    delta = _delta(m, pieces, H)
    trace.append(TraceStep("delta", {"delta": fmt(delta)}))
    if delta <= 0:
        raise _NotFound("delta", {"delta": fmt(delta)})
    found = _k_search(m, pieces, delta, _fixed_candidates(m), H // 4)
    if found is None:
        raise _NotFound("k-search", {"delta": fmt(delta)})
    x0, k = found
    trace.append(TraceStep("k-search", {"x0": fmt(x0), "k": k}))
    mark = x0 - delta / 4

    def cls(core: Interval) -> int:
        iv = interval_orbit(m, core, k).items[k]
        return 1 if iv.lo <= mark <= iv.hi else 2

    class_u = [cls(c) for c in cu]
    class_v = [cls(c) for c in cv]
    images = {}
    for c in (1, 2):
        members = [j for j, k_ in zip(pieces, class_u + class_v) if k_ == c]
        if members:
            acc = interval_orbit(m, members[0], k).items[k]
            for j in members[1:]:
                acc = acc.intersect(interval_orbit(m, j, k).items[k])
                if acc is None:
                    raise _NotFound("intersection", {"class": c})
            if acc.degenerate:
                raise _NotFound("intersection", {"class": c, "S": str(acc)})
            images[c] = acc
    trace.append(TraceStep("partition", {"S1": str(images.get(1)), "S2": str(images.get(2))}))
    setup = _Setup(m, 1, cu, cv, class_u, class_v, images, k)
    U, V, v, case = _cases(setup, m, p, eps, want, trace)
    return U, V, v, case, "fixed_point_split"


def construct_hyper_ly_pair(
    m: PLMap, box_u: VietorisBox, box_v: VietorisBox, params: Params | None = None
) -> Construction:
    """A Li-Yorke pair ``(U, V)`` of finite sets with ``U ∈ box_u``, ``V ∈ box_v``.

    Follows the three-case argument: find ``δ`` (the least liminf diameter of
    the boxes' opens), a fixed point ``x0`` and a step ``k`` with every
    ``f^k(A)`` within ``δ/4`` of ``x0`` and wider than ``δ/2``; split the
    opens by whether ``f^k(A)`` contains ``x0 - δ/4``; intersect the images
    of each class; pick an LY point pair in the intersections; pull it back.
    """
    p = params or Params()
    eps = p.eps or Fraction(1, 2)
    trace: list[TraceStep] = [TraceStep("start", {"boxU": str(box_u), "boxV": str(box_v)})]
    return _result(_split_construction, m, box_u, box_v, p, eps, PairKind.LY, trace)


def _refine(g: PLMap, core: Interval, targets: list[Interval], l: int) -> tuple[Interval, int] | None:
    """Central half of ``g^l(core) ∩ T`` for the first ``T`` giving a nondegenerate piece."""
    img = interval_orbit(g, core, l).items[l]
    for idx, t in enumerate(targets):
        cut = img.intersect(t)
        if cut is not None and not cut.degenerate:
            return cut.shrink(Fraction(1, 2)), idx
    return None


def _l_search(g: PLMap, cores: list[Interval], targets: list[Interval], horizon: int):
    for l in range(horizon + 1):
        out = [_refine(g, c, targets, l) for c in cores]
        if all(o is not None for o in out):
            return l, out
    return None


def _two_intervals(m, g, scale, cu, cv, t1, t2, x0, p, eps, want, trace, branch):
    """Branch (a) for ``g``: invariant transitive ``t1``, ``t2`` meeting at ``x0``."""
    hg = p.horizon // scale
    found = _l_search(g, cu + cv, [t1, t2], hg // 4)
    if found is None:
        raise _NotFound("l-search")
    l, refined = found
    pieces = [r[0] for r in refined]
    klass = [r[1] + 1 for r in refined]
    b = _delta(g, pieces, hg)
    trace.append(TraceStep("l-search", {"l": l, "pieces": [str(x) for x in pieces], "b": fmt(b)}))
    if b <= 0:
        raise _NotFound("delta", {"b": fmt(b)})
    ks = _k_search(g, pieces, b, [x0], hg // 4)
    if ks is None:
        raise _NotFound("k-search", {"b": fmt(b)})
    k = ks[1]
    images = {}
    for c in (1, 2):
        members = [j for j, kk in zip(pieces, klass) if kk == c]
        if members:
            acc = interval_orbit(g, members[0], k).items[k]
            for j in members[1:]:
                acc = acc.intersect(interval_orbit(g, j, k).items[k])
                if acc is None or acc.degenerate:
                    raise _NotFound("intersection", {"class": c})
            images[c] = acc
    trace.append(TraceStep("k-search", {"x0": fmt(x0), "k": k, "S1": str(images.get(1)),
                                        "S2": str(images.get(2))}))
    n = len(cu)
    setup = _Setup(g, scale, cu, cv, klass[:n], klass[n:], images, k + l)
    U, V, v, case = _cases(setup, m, p, eps, want, trace)
    return U, V, v, case, branch


def _transitive_construction(m, box_u, box_v, p, eps, want, trace):
    verdict = classify_chaos(m, replace(p, eps=eps))
    trace.append(TraceStep("precondition", {"dense_eps": verdict.label("dense_eps"), "eps": fmt(eps)}))
    if verdict.dense_eps is not Status.PASS:
        raise _NotFound("precondition", {"dense_eps": verdict.label("dense_eps")})
    rep = find_invariant_transitive_intervals(m, p.cover_grid, p.cover_horizon)
    trans = rep.transitive
    if not trans:
        raise _NotFound("precondition", {"reason": "no invariant transitive interval"})
    cu, cv = _cores(box_u), _cores(box_v)
    if len(trans) == 2:
        t1, t2 = sorted(e.interval for e in trans)
        trace.append(TraceStep("branch", {"branch": "two_intervals", "T1": str(t1), "T2": str(t2)}))
        return _two_intervals(m, m, 1, cu, cv, t1, t2, t1.hi, p, eps, want, trace, "two_intervals")
    top = trans[0]
    t = top.interval
    if top.swap_point is not None:
        y = top.swap_point
        trace.append(TraceStep("branch", {"branch": "square_map", "T": str(t), "swap_point": fmt(y)}))
        return _two_intervals(m, power(m, 2), 2, cu, cv, Interval(t.lo, y), Interval(y, t.hi), y,
                              p, eps, want, trace, "square_map")
    trace.append(TraceStep("branch", {"branch": "all_powers_transitive", "T": str(t)}))
    H, tol = p.horizon, p.tol_low
    found = _l_search(m, cu + cv, [t], H // 4)
    if found is None:
        raise _NotFound("l-search")
    l, refined = found
    pu = [r[0] for r in refined[: len(cu)]]
    pv = [r[0] for r in refined[len(cu):]]
    hull_u = CompactSet(pu)
    hull_v = CompactSet(pv)
    hu, hv = Interval(hull_u.min, hull_u.max), Interval(hull_v.min, hull_v.max)
    trace.append(TraceStep("l-search", {"l": l, "U'": str(hu), "V'": str(hv)}))
    k = None
    orbits_u = [interval_orbit(m, j, H // 4).items for j in pu]
    orbits_v = [interval_orbit(m, j, H // 4).items for j in pv]
    for n in range(H // 4 + 1):
        if all(o[n].contains_interval(hu) for o in orbits_u) and all(o[n].contains_interval(hv) for o in orbits_v):
            k = n
            break
    if k is None:
        raise _NotFound("covering", {"U'": str(hu), "V'": str(hv)})
    trace.append(TraceStep("covering", {"k": k}))
    K = k + l
    ts = H // 2
    if ts - K < 1:
        raise _NotFound("window", {"steps": K})
    for variant in range(4):
        mp = meeting_pair(m, hu, hv, H - K, tol, eps, ts - K, variant)
        if mp is None or mp.verdict.kind.rank < want.rank:
            continue
        us = [pull_back(m, mp.x, core, K) for core in cu]
        vs = [pull_back(m, mp.y, core, K) for core in cv]
        if any(x is None for x in us + vs):  # pragma: no cover - covering guarantees preimages
            continue
        U, V = CompactSet.points(*us), CompactSet.points(*vs)
        v = classify_set_pair(m, U, V, H, tol, eps, ts)
        trace.append(TraceStep("verify", {"variant": variant, "s": fmt(mp.x), "p": fmt(mp.y),
                                          "set_pair": v.kind.value}))
        if v.kind.rank >= want.rank:
            return U, V, v, "single_interval", "all_powers_transitive"
    raise _NotFound("pair-search", {"want": want.value})


def construct_hyper_eps_ly_pair(
    m: PLMap, box_u: VietorisBox, box_v: VietorisBox, eps: RationalLike, params: Params | None = None
) -> Construction:
    """An ε-Li-Yorke pair ``(U, V)`` of finite sets inside the two boxes.

    Requires a dense-ε pass from :func:`classify_chaos` and at least one
    invariant transitive interval.  Two transitive intervals meeting at a
    point use the three-case split by interval; a single interval with
    swapped halves runs the same split for the square map; a single interval
    with all powers transitive uses the covering step and pulls back one
    ε-LY point pair through ``f^(k+l)``.
    """
    p = params or Params()
    eps = rational(eps)
    trace: list[TraceStep] = [TraceStep("start", {"boxU": str(box_u), "boxV": str(box_v), "eps": fmt(eps)})]
    return _result(_transitive_construction, m, box_u, box_v, p, eps, PairKind.EPS_LY, trace)
