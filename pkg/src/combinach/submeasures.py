"""Submeasures phi(A) = Phi_F(tau restricted to A), tail profiles and evidence reports.

Values computed on a window ``A ∩ [n, horizon)`` are exact, and by lower
semicontinuity they are lower bounds for the value on the infinite tail
``A \\ n``; reports say so rather than claiming ideal membership.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .families import Antichains, family_label
from .norms import FinVec, as_fraction, ext_norm
from .setgen import FiniteSet, block_of, realize

WEIGHT_KINDS = ("lambda", "harmonic", "one", "geometric", "block-inv-square", "custom")


@dataclass(frozen=True)
class WeightSeq:
    """Positive weight sequence tau on the positive integers.

    ``lambda`` is 2^-n on block n; ``block-inv-square`` is 1/n^2 on block n >= 1
    and 1 at index 1.  ``custom`` reads a finite table, falling back to ``default``.
    """

    kind: str = "lambda"
    table: tuple[tuple[int, Fraction], ...] = ()
    default: str = "lambda"

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind == "custom":
            if self.default not in WEIGHT_KINDS[:-1]:
                raise ValueError(f"custom weights need a catalog default, got {self.default!r}")
            if any(v <= 0 for _, v in self.table):
                raise ValueError("weights must be strictly positive")

    def __call__(self, k: int) -> Fraction:
        if k < 1:
            raise ValueError("weights are indexed from 1")
        kind = self.kind
        if kind == "custom":
            lookup = dict(self.table)
            if k in lookup:
                return lookup[k]
            kind = self.default
        if kind == "lambda":
            return Fraction(1, 1 << block_of(k))
        if kind == "harmonic":
            return Fraction(1, k)
        if kind == "one":
            return Fraction(1)
        if kind == "geometric":
            return Fraction(1, 1 << k)
        if kind == "block-inv-square":
            n = block_of(k)
            return Fraction(1) if n == 0 else Fraction(1, n * n)
        raise AssertionError(kind)

    def mass(self, A: Iterable[int]) -> Fraction:
        return sum((self(k) for k in A), Fraction(0))

    def vector(self, A: Iterable[int]) -> FinVec:
        return FinVec({k: self(k) for k in A})

    @property
    def divergent(self) -> bool | None:
        """Symbolic divergence of the full series; None when it depends on a table."""
        kind = self.default if self.kind == "custom" else self.kind
        return kind in ("lambda", "harmonic", "one", "block-inv-square")


LAMBDA = WeightSeq("lambda")


@dataclass(frozen=True)
class SubmeasureSpec:
    family: object
    tau: WeightSeq = field(default_factory=WeightSeq)

    @property
    def label(self) -> str:
        return f"{family_label(self.family)}+{self.tau.kind}"


def phi(s: SubmeasureSpec, A: Iterable[int]) -> Fraction:
    return ext_norm(s.family, s.tau.vector(A))


def window(A: Sequence[int], lo: int, hi: int) -> FiniteSet:
    return tuple(k for k in A if lo <= k < hi)


@dataclass(frozen=True)
class TailPoint:
    cutoff: int
    horizon: int
    value: Fraction

    @property
    def decimal(self) -> str:
        return f"{float(self.value):.12g}"


def tail_profile(s: SubmeasureSpec, g, cutoffs: Sequence[int], horizon: int) -> list[TailPoint]:
    """phi(A ∩ [n, horizon)) for each cutoff n: certified lower bounds of phi(A \\ n)."""
    if any(n > horizon for n in cutoffs):
        raise ValueError("cutoffs must not exceed the horizon")
    A = realize(g, horizon)
    return [TailPoint(n, horizon, phi(s, window(A, n, horizon))) for n in cutoffs]


def profile_csv(points: Sequence[TailPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["cutoff", "horizon", "value_rational", "value_decimal"])
    for p in points:
        writer.writerow([p.cutoff, p.horizon, str(p.value), p.decimal])
    return buf.getvalue()


def phi_trace(A: Iterable[int]) -> Fraction:
    """Sum of 2^-|s| over the prefix-minimal codes s of A."""
    A = set(A)
    total = Fraction(0)
    for k in A:
        anc = k >> 1
        while anc >= 1 and anc not in A:
            anc >>= 1
        if anc == 0:
            total += Fraction(1, 1 << block_of(k))
    return total


TRACE = SubmeasureSpec(Antichains(), LAMBDA)


@dataclass
class ExhEvidence:
    spec: str
    epsilon: Fraction
    profile: list[TailPoint]
    verdict: str
    cutoff: int | None
    value: Fraction | None
    certified: str

    def as_record(self) -> dict:
        return {
            "spec": self.spec,
            "epsilon": str(self.epsilon),
            "verdict": self.verdict,
            "cutoff": self.cutoff,
            "value": None if self.value is None else str(self.value),
            "certified": self.certified,
            "profile": [
                {"cutoff": p.cutoff, "horizon": p.horizon, "lower_bound": str(p.value)}
                for p in self.profile
            ],
        }


def exh_evidence(s: SubmeasureSpec, g, epsilon, cutoffs: Sequence[int], horizon: int) -> ExhEvidence:
    """Tag the tail profile as supporting or refuting membership in Exh(phi).

    REFUTES-MEMBERSHIP-AT(n, v): the window value v >= epsilon at the last
    cutoff n certifies phi(A \\ n) >= v.  SUPPORTS-MEMBERSHIP: every window
    value from some cutoff on is below epsilon; nothing about the infinite
    tail is certified in that case.
    """
    epsilon = as_fraction(epsilon)
    cutoffs = sorted(cutoffs)
    prof = tail_profile(s, g, cutoffs, horizon)
    if not prof:
        raise ValueError("need at least one cutoff")
    last = prof[-1]
    if last.value >= epsilon:
        return ExhEvidence(
            s.label, epsilon, prof, "REFUTES-MEMBERSHIP-AT", last.cutoff, last.value,
            f"phi(A \\ {last.cutoff}) >= {last.value} >= epsilon (lower semicontinuity)",
        )
    first_below = last
    for p in reversed(prof):
        if p.value >= epsilon:
            break
        first_below = p
    return ExhEvidence(
        s.label, epsilon, prof, "SUPPORTS-MEMBERSHIP", first_below.cutoff, first_below.value,
        f"window values below epsilon for every cutoff >= {first_below.cutoff} up to horizon "
        f"{horizon}; tail value itself not certified",
    )


def weights_from_json(obj) -> WeightSeq:
    if isinstance(obj, str):
        return WeightSeq(obj)
    if not isinstance(obj, Mapping):
        raise ValueError(f"bad weight description {obj!r}")
    extra = set(obj) - {"kind", "table", "default"}
    if extra:
        raise ValueError(f"unknown fields for weights: {sorted(extra)}")
    table = tuple(sorted((int(k), Fraction(str(v))) for k, v in obj.get("table", {}).items()))
    return WeightSeq(obj.get("kind", "custom"), table, obj.get("default", "lambda"))


def weights_to_json(w: WeightSeq):
    if w.kind != "custom":
        return w.kind
    return {"kind": "custom", "table": {str(k): str(v) for k, v in w.table}, "default": w.default}


__all__ = [
    "ExhEvidence", "LAMBDA", "SubmeasureSpec", "TRACE", "TailPoint", "WeightSeq",
    "exh_evidence", "phi", "phi_trace", "profile_csv", "tail_profile", "weights_from_json",
    "weights_to_json", "window",
]
