"""Eventually-one binary sequences under the shift, and their finite sets.

A sequence is stored by the positions (1-based) of its zeros, so ``1^∞`` is
the empty tuple and ``1^r 0 1^∞`` is ``(r + 1,)``.  The subsystem ``A`` holds
the sequences with at most one zero.  Every pair of points of ``A`` is
asymptotic, yet the pair of sets ``M = {1^∞}`` and
``N = {1^{n_i} 0 1^∞ : i >= 0}`` (``n_0 = 0``, ``n_{i+1} = n_i + i + 2``) is a
Li-Yorke pair for the induced map.  :func:`verify_example` checks this on a
truncation ``N_k`` of ``N`` and refuses windows in which truncation would
show.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .intervals import DomainError, fmt

__all__ = [
    "BinarySeq",
    "SeqSet",
    "ShiftReport",
    "shift",
    "shift_set",
    "seq_distance",
    "hausdorff_seq",
    "n_values",
    "build_example_N",
    "example_M",
    "closed_form",
    "census",
    "verify_example",
]


@dataclass(frozen=True, order=True)
class BinarySeq:
    zeros: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        zs = tuple(self.zeros)
        if any(z < 1 for z in zs) or any(b <= a for a, b in zip(zs, zs[1:])):
            raise DomainError(f"zero positions must be positive and strictly increasing: {zs}")
        object.__setattr__(self, "zeros", zs)

    @classmethod
    def single(cls, position: int) -> BinarySeq:
        return cls((position,))

    @property
    def in_A(self) -> bool:
        return len(self.zeros) <= 1

    def __getitem__(self, i: int) -> int:
        """Symbol at 1-based index ``i``."""
        if i < 1:
            raise IndexError(i)
        return 0 if i in self.zeros else 1

    def __str__(self) -> str:
        out, prev = [], 0
        for z in self.zeros:
            run = z - prev - 1
            if run:
                out.append(f"1^{run}")
            out.append("0")
            prev = z
        out.append("1^∞")
        return " ".join(out)

    @classmethod
    def parse(cls, text: str) -> BinarySeq:
        """Inverse of ``str``: tokens ``1^a``, ``1`` and ``0``, ending in ``1^∞`` (or ``1^inf``)."""
        tokens = text.split()
        if not tokens or tokens[-1] not in ("1^∞", "1^inf"):
            raise DomainError(f"sequence must end with 1^∞: {text!r}")
        pos, zeros = 0, []
        for tok in tokens[:-1]:
            if tok == "0":
                pos += 1
                zeros.append(pos)
            elif tok == "1":
                pos += 1
            elif re.fullmatch(r"1\^\d+", tok):
                pos += int(tok[2:])
            else:
                raise DomainError(f"bad token {tok!r}")
        return cls(tuple(zeros))


ONES = BinarySeq()


def shift(x: BinarySeq) -> BinarySeq:
    """Drop the first symbol."""
    return BinarySeq(tuple(z - 1 for z in x.zeros if z > 1))


def seq_distance(x: BinarySeq, y: BinarySeq) -> Fraction:
    """``1/i`` for the first index ``i`` where the symbols differ; 0 if equal."""
    diff = set(x.zeros) ^ set(y.zeros)
    return Fraction(1, min(diff)) if diff else Fraction(0)


@dataclass(frozen=True)
class SeqSet:
    elements: tuple[BinarySeq, ...]

    def __init__(self, elements: Iterable[BinarySeq]):
        items = tuple(sorted(set(elements)))
        if not items:
            raise DomainError("a sequence set must be non-empty")
        object.__setattr__(self, "elements", items)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.elements) + "}"


def shift_set(a: SeqSet) -> SeqSet:
    return SeqSet(shift(x) for x in a)


def hausdorff_seq(a: SeqSet, b: SeqSet) -> Fraction:
    def directed(p: SeqSet, q: SeqSet) -> Fraction:
        return max(min(seq_distance(x, y) for y in q) for x in p)

    return max(directed(a, b), directed(b, a))


def n_values(k: int) -> list[int]:
    """``n_0 .. n_{k-1}``: 0, 2, 5, 9, 14, ..."""
    out = [0]
    for i in range(k - 1):
        out.append(out[-1] + i + 2)
    return out[:k]


def build_example_N(k: int) -> SeqSet:
    """``{1^{n_i} 0 1^∞ : 0 <= i < k}``; element ``i`` has its zero at ``n_i + 1``."""
    if k < 1:
        raise DomainError("k must be at least 1")
    return SeqSet(BinarySeq.single(n + 1) for n in n_values(k))


def example_M() -> SeqSet:
    return SeqSet([ONES])


def closed_form(k: int, t: int) -> Fraction:
    """``d_H(σ̄^t M, σ̄^t N_k)`` for ``t <= n_{k-1}``.

    Only ``1^∞`` is in ``M``, so the distance is ``1/p`` for the smallest
    surviving zero position ``p = n_{i*} + 1 - t``, ``i* = min{i : n_i >= t}``.
    """
    ns = n_values(k)
    if not 0 <= t <= ns[-1]:
        raise DomainError(f"t = {t} is outside [0, n_(k-1)] = [0, {ns[-1]}]")
    first = next(n for n in ns if n >= t)
    return Fraction(1, first + 1 - t)


def census(horizon: int) -> list[BinarySeq]:
    """``1^∞`` and every one-zero sequence with its zero at position ``<= horizon``."""
    return [ONES] + [BinarySeq.single(p) for p in range(1, horizon + 1)]


@dataclass(frozen=True)
class ShiftReport:
    k: int
    horizon: int
    n_values: tuple[int, ...]
    series: tuple[Fraction, ...]
    expected: tuple[Fraction, ...]
    census_size: int
    census_pairs: int
    census_asymptotic: bool
    closed_form_ok: bool
    limsup_proxy: Fraction
    liminf_proxy: Fraction
    dips: tuple[Fraction, ...]
    dips_decreasing: bool

    @property
    def passed(self) -> bool:
        return self.census_asymptotic and self.closed_form_ok and self.limsup_proxy == 1 and self.dips_decreasing

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "horizon": self.horizon,
            "n_values": list(self.n_values),
            "series": [fmt(d) for d in self.series],
            "closed_form": [fmt(d) for d in self.expected],
            "census_size": self.census_size,
            "census_pairs": self.census_pairs,
            "census_all_asymptotic": self.census_asymptotic,
            "closed_form_ok": self.closed_form_ok,
            "limsup_proxy": fmt(self.limsup_proxy),
            "liminf_proxy": fmt(self.liminf_proxy),
            "dips": [fmt(d) for d in self.dips],
            "dips_decreasing": self.dips_decreasing,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _pair_asymptotic(x: BinarySeq, y: BinarySeq) -> bool:
    # after max zero position shifts both are 1^∞, which is fixed
    t = max(x.zeros + y.zeros, default=0)
    for _ in range(t):
        x, y = shift(x), shift(y)
    return seq_distance(x, y) == 0 and seq_distance(shift(x), shift(y)) == 0


def verify_example(k: int, horizon: int) -> ShiftReport:
    """Check the asymptotic base and the Li-Yorke set pair ``(M, N_k)`` up to ``horizon``.

    The window must satisfy ``horizon <= n_{k-1}``: later on every element of
    the truncated ``N_k`` has shifted to ``1^∞`` and the series would drop to
    0, which the untruncated ``N`` never does.
    """
    if k < 1 or horizon < 0:
        raise DomainError("need k >= 1 and horizon >= 0")
    ns = n_values(k)
    if horizon > ns[-1]:
        raise DomainError(f"horizon {horizon} exceeds n_(k-1) = {ns[-1]}: the truncated N would "
                          "become asymptotic to M inside the window")
    pop = census(horizon)
    pairs = list(combinations(pop, 2))
    census_ok = all(_pair_asymptotic(x, y) for x, y in pairs)

    M, N = example_M(), build_example_N(k)
    series = []
    for _ in range(horizon + 1):
        series.append(hausdorff_seq(M, N))
        M, N = shift_set(M), shift_set(N)
    expected = [closed_form(k, t) for t in range(horizon + 1)]
    tail = series[horizon // 2 :]
    dips = [series[n + 1] for n in ns if n + 1 <= horizon]
    return ShiftReport(
        k=k,
        horizon=horizon,
        n_values=tuple(ns),
        series=tuple(series),
        expected=tuple(expected),
        census_size=len(pop),
        census_pairs=len(pairs),
        census_asymptotic=census_ok,
        closed_form_ok=series == expected,
        limsup_proxy=max(tail),
        liminf_proxy=min(tail),
        dips=tuple(dips),
        dips_decreasing=all(b < a for a, b in zip(dips, dips[1:])),
    )
