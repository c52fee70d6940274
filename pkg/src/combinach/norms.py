"""The extended norm generated by a family: max over members of the l1 mass."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping

from .families import (
    AllFinite, Antichains, BlockCappedJoined, BlockCappedLocal, Explicit,
    PartitionBlocks, Restrict, Schreier, Singletons, members_within,
)
from .schreier.core import schreier_norm
from .setgen import block_of

ORACLE_MAX_SUPPORT = 20


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"exact rationals only, got {type(value).__name__}")


class FinVec(Mapping[int, Fraction]):
    """Finitely supported vector of exact rationals indexed by positive integers."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[int, Fraction] = {}
        for k, v in items:
            k = int(k)
            if k < 1:
                raise ValueError(f"indices start at 1, got {k}")
            v = as_fraction(v)
            if v:
                clean[k] = v
        self._entries = dict(sorted(clean.items()))

    def __getitem__(self, k: int) -> Fraction:
        return self._entries.get(k, Fraction(0))

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, k) -> bool:
        return k in self._entries

    def __eq__(self, other) -> bool:
        if isinstance(other, FinVec):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in self._entries.items())
        return f"FinVec({{{body}}})"

    def support(self) -> tuple[int, ...]:
        return tuple(self._entries)

    def abs(self) -> "FinVec":
        return FinVec({k: abs(v) for k, v in self._entries.items()})

    def __add__(self, other: "FinVec") -> "FinVec":
        out = dict(self._entries)
        for k, v in other.items():
            out[k] = out.get(k, Fraction(0)) + v
        return FinVec(out)

    def __neg__(self) -> "FinVec":
        return FinVec({k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "FinVec") -> "FinVec":
        return self + (-other)

    def scale(self, c) -> "FinVec":
        c = as_fraction(c)
        return FinVec({k: c * v for k, v in self._entries.items()})

    def to_json(self) -> dict[str, str]:
        return {str(k): str(v) for k, v in self._entries.items()}

    @classmethod
    def from_json(cls, obj: Mapping[str, object]) -> "FinVec":
        out = {}
        for k, v in obj.items():
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise ValueError(f"coefficient for {k!r} must be an integer or rational string")
            out[int(k)] = Fraction(v)
        return cls(out)


def basis(n: int) -> FinVec:
    return FinVec({n: 1})


def project(x: FinVec, A: Iterable[int]) -> FinVec:
    keep = set(A)
    return FinVec({k: v for k, v in x.items() if k in keep})


def _abs_entries(x: FinVec) -> tuple[tuple[int, ...], tuple[Fraction, ...]]:
    items = [(k, abs(v)) for k, v in x.items()]
    return tuple(k for k, _ in items), tuple(v for _, v in items)


def ext_norm(f, x: FinVec) -> Fraction:
    """Exact ``max { sum_{i in F} |x_i| : F in f }`` via a per-kind optimiser."""
    if not x:
        return Fraction(0)
    idx, w = _abs_entries(x)
    if isinstance(f, AllFinite):
        return sum(w, Fraction(0))
    if isinstance(f, Singletons):
        return max(w)
    if isinstance(f, (PartitionBlocks, BlockCappedLocal, BlockCappedJoined)):
        blocks: dict[int, list[Fraction]] = defaultdict(list)
        for k, v in zip(idx, w):
            blocks[block_of(k)].append(v)
        if isinstance(f, PartitionBlocks):
            return max(sum(vs, Fraction(0)) for vs in blocks.values())
        best = [sum(sorted(vs, reverse=True)[: f.cap(n)], Fraction(0)) for n, vs in blocks.items()]
        return max(best) if isinstance(f, BlockCappedLocal) else sum(best, Fraction(0))
    if isinstance(f, Antichains):
        return antichain_norm(dict(zip(idx, w)))
    if isinstance(f, Schreier):
        return schreier_norm(f.alpha, idx, w)
    if isinstance(f, Explicit):
        vals = dict(zip(idx, w))
        return max((sum((vals.get(k, Fraction(0)) for k in F), Fraction(0)) for F in f.sets),
                   default=Fraction(0))
    if isinstance(f, Restrict):
        return ext_norm(f.base, project(x, f.window))
    raise TypeError(f"not a family: {f!r}")


def antichain_norm(weights: Mapping[int, Fraction]) -> Fraction:
    """Best antichain of tree codes: best(t) = max(w_t, sum of best over children)."""
    if not weights:
        return Fraction(0)
    # number-agnostic: exact for ints as well as Fractions
    best: dict = defaultdict(int)
    nodes = set()
    for k in weights:
        while k >= 1 and k not in nodes:
            nodes.add(k)
            k >>= 1
    # children have larger codes, so decreasing order visits them first
    for t in sorted(nodes, reverse=True):
        val = max(weights.get(t, 0), best.pop(t, 0))
        if t > 1:
            best[t >> 1] += val
        else:
            return val
    raise AssertionError("root not reached")


def tail_norm(f, x: FinVec, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be >= 0")
    return ext_norm(f, FinVec({k: v for k, v in x.items() if k >= n}))


def norm_oracle(f, x: FinVec) -> Fraction:
    """Brute force over every member inside supp(x)."""
    if len(x) > ORACLE_MAX_SUPPORT:
        raise ValueError(f"oracle limited to supports of size {ORACLE_MAX_SUPPORT}")
    absx = {k: abs(v) for k, v in x.items()}
    return max(sum((absx[k] for k in F), Fraction(0)) for F in members_within(f, absx))


__all__ = [
    "FinVec", "antichain_norm", "as_fraction", "basis", "ext_norm", "norm_oracle",
    "project", "tail_norm",
]
