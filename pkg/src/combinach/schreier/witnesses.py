"""Quantitative witnesses about the Schreier ideals I_alpha = Exh(phi_alpha)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from ..ordinal import ONE, Ordinal, as_ordinal, check_depth, format_ordinal
from ..setgen import BlockPrefix, BlockRule, FiniteSet, block_of, realize
from .core import schreier_contains


class VerificationError(AssertionError):
    """An exact identity that must hold failed: indicates an engine bug."""


class PreconditionError(ValueError):
    pass


def phi_alpha(alpha, A) -> Fraction:
    from ..families import Schreier
    from ..submeasures import LAMBDA, SubmeasureSpec, phi

    return phi(SubmeasureSpec(Schreier(check_depth(as_ordinal(alpha))), LAMBDA), A)


# ------------------------------------------------------------- essential inclusion

def essential_inclusion_probe(alpha, beta, window: int) -> int | None:
    """Least n with S_alpha ↾ [n, window) ⊆ S_beta, checked exhaustively.

    Only thresholds in the lower half of the window count: above it the
    window is too short to hold the sets that would separate the families,
    so such an n proves nothing.  ``None`` means inconclusive on this window.
    """
    if window > 14:
        raise PreconditionError("window must be <= 14")
    alpha, beta = as_ordinal(alpha), as_ordinal(beta)
    bad_mins = []
    for r in range(2, window):
        for F in itertools.combinations(range(1, window), r):
            if schreier_contains(alpha, F) and not schreier_contains(beta, F):
                bad_mins.append(F[0])
    worst = max(bad_mins, default=0)
    n = worst + 1 if bad_mins else 0
    return n if n < (window + 1) // 2 else None


# --------------------------------------------------------------- summable-like

@dataclass
class SummableLikeWitness:
    alpha: Ordinal
    N: int
    sets: list[FiniteSet]
    piece_values: list[Fraction]
    union_value: Fraction

    def as_record(self) -> dict:
        return {
            "witness": "summable-like",
            "alpha": format_ordinal(self.alpha),
            "N": self.N,
            "delta": str(Fraction(1, 2 ** self.N)),
            "k": len(self.sets),
            "pieces": [
                {"n": n, "interval": [2 ** (self.N + n), 2 ** (self.N + n + 1)],
                 "size": len(F), "value": str(v)}
                for n, (F, v) in enumerate(zip(self.sets, self.piece_values))
            ],
            "union_value": str(self.union_value),
        }


def summable_like_sets(N: int) -> list[FiniteSet]:
    """F_n = first 2^n points of [2^(N+n), 2^(N+n+1)) for n < 2^N."""
    return [
        tuple(range(2 ** (N + n), 2 ** (N + n) + 2 ** n))
        for n in range(2 ** N)
    ]


def summable_like_witness(alpha, N: int) -> SummableLikeWitness:
    alpha = check_depth(as_ordinal(alpha))
    if alpha < Ordinal.of(2):
        raise PreconditionError("the summable-like witness needs alpha >= 2")
    if not 1 <= N <= 4:
        raise PreconditionError("N must lie in [1, 4]")
    sets = summable_like_sets(N)
    values = [phi_alpha(alpha, F) for F in sets]
    union = tuple(k for F in sets for k in F)
    union_value = phi_alpha(alpha, union)
    delta = Fraction(1, 2 ** N)
    if any(v != delta for v in values) or union_value != 1:
        raise VerificationError(
            f"summable-like witness failed for alpha={alpha}, N={N}: "
            f"pieces {[str(v) for v in values]}, union {union_value}"
        )
    return SummableLikeWitness(alpha, N, sets, values, union_value)


# ------------------------------------------------------------ trace versus I_2

HALVED = BlockPrefix(BlockRule("halvedByLog"))
MAX_BLOCK_POINTS = 1 << 14


@dataclass
class TraceRow:
    k: int
    n: int
    horizon: int
    trace_value: Fraction


@dataclass
class TraceWitness:
    k_max: int
    rows: list[TraceRow] = field(default_factory=list)
    s2_windows: list[tuple[int, int, int, Fraction]] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def as_record(self) -> dict:
        return {
            "witness": "trace-i2",
            "k_max": self.k_max,
            "trace_tails": [
                {"k": r.k, "n": r.n, "window": [2 ** r.n, r.horizon], "value": str(r.trace_value)}
                for r in self.rows
            ],
            "s2_windows": [
                {"k": k, "window": [lo, hi], "value": str(v)} for k, lo, hi, v in self.s2_windows
            ],
            "skipped": self.skipped,
        }


def trace_vs_I2_witness(k_max: int) -> TraceWitness:
    """A = first 2^(n-k) points of each block n in [2^k, 2^(k+1)).

    Checks phi_trace(A ∩ [2^n, 2^(n+2))) = 2^-k, and phi_2 = 1 on the window
    [2^(2^k), 2^(2^(k+1))), whose part of A is a union of 2^k consecutive S_1
    sets starting at 2^(2^k).  Blocks with more than 2^14 points are skipped
    and listed.
    """
    from ..norms import antichain_norm
    from ..submeasures import phi_trace

    if not 0 <= k_max <= 4:
        raise PreconditionError("k_max must lie in [0, 4]")
    out = TraceWitness(k_max)
    for k in range(k_max + 1):
        for n in range(2 ** k, 2 ** (k + 1)):
            if 2 ** (n - k) > MAX_BLOCK_POINTS:
                out.skipped.append(f"trace k={k} n={n}: block holds 2^{n - k} points")
                continue
            hi = 2 ** (n + 2)
            A = realize(HALVED, hi)
            tail = [a for a in A if a >= 2 ** n]
            v = phi_trace(tail)
            dp = antichain_norm({a: Fraction(1, 2 ** block_of(a)) for a in tail})
            if v != dp or v != Fraction(1, 2 ** k):
                raise VerificationError(f"trace tail at n={n}: minimal-sum {v}, antichain {dp}")
            out.rows.append(TraceRow(k, n, hi, v))
        lo, hi = 2 ** (2 ** k), 2 ** (2 ** (k + 1))
        if 2 ** (2 ** (k + 1) - 1 - k) > MAX_BLOCK_POINTS:
            out.skipped.append(f"S_2 window k={k}: [{lo}, {hi}) too large")
            continue
        F = tuple(a for a in realize(HALVED, hi) if a >= lo)
        v = phi_alpha(2, F)
        if v < 1:
            raise VerificationError(f"S_2 window for k={k} has value {v} < 1")
        out.s2_windows.append((k, lo, hi, v))
    return out


# ---------------------------------------------------------------- density bound

@dataclass
class DensityReport:
    j: int
    N: int
    horizon: int
    value: Fraction
    bound: Fraction
    block_counts: dict[int, int]

    @property
    def holds(self) -> bool:
        return self.value <= self.bound

    def as_record(self) -> dict:
        return {
            "witness": "density-bound",
            "epsilon": str(Fraction(1, 2 ** self.j)),
            "N": self.N,
            "window": [2 ** self.N, self.horizon],
            "value": str(self.value),
            "bound": str(self.bound),
            "holds": self.holds,
        }


def density_bound_check(j: int, g, N: int, horizon: int) -> DensityReport:
    """phi_1(A ∩ [2^N, horizon)) <= (1 + j) 2^-j when every block n >= N of A
    has fewer than 2^(n - j) points."""
    if j < 0:
        raise PreconditionError("j must be >= 0")
    A = realize(g, horizon)
    counts: dict[int, int] = {}
    for a in A:
        n = block_of(a)
        if n >= N:
            counts[n] = counts.get(n, 0) + 1
    for n, c in sorted(counts.items()):
        if c * 2 ** j >= 2 ** n:
            raise PreconditionError(
                f"block {n} holds {c} points, not below 2^-{j} * 2^{n}"
            )
    tail = tuple(a for a in A if a >= 2 ** N)
    value = phi_alpha(ONE, tail)
    bound = Fraction(1 + j, 2 ** j)
    report = DensityReport(j, N, horizon, value, bound, counts)
    if not report.holds:
        raise VerificationError(f"phi_1 = {value} exceeds the bound {bound}")
    return report


__all__ = [
    "DensityReport", "PreconditionError", "SummableLikeWitness", "TraceWitness",
    "VerificationError", "density_bound_check", "essential_inclusion_probe", "phi_alpha",
    "summable_like_sets", "summable_like_witness", "trace_vs_I2_witness",
]
