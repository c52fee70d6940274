"""Hereditary families of finite sets of positive integers.

Every catalog family is hereditary and contains the empty set and all
singletons of its universe.  ``Explicit`` families stand for the hereditary
closure of the listed sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .ordinal import Ordinal, ONE, add, as_ordinal, format_ordinal, omega_power
from .schreier.core import schreier_contains
from .setgen import (
    AllIndices, BlockPrefix, BlockRule, Comb, FiniteSet, block_of, finite_set,
    is_tree_prefix, realize,
)

# ------------------------------------------------------------------ cap rules

CAP_KINDS = ("full", "farah", "one", "index", "custom")


@dataclass(frozen=True)
class CapRule:
    """Per-block bound ``cap(n)`` on how many points of ``P_n`` a member may use.

    ``farah`` is ``floor(2^n / n)`` with block 0 uncapped; ``index`` is
    ``max(n, 1)``; ``custom`` reads a finite table and falls back to ``default``.
    """

    kind: str = "full"
    table: tuple[tuple[int, int], ...] = ()
    default: str = "one"

    def __post_init__(self):
        if self.kind not in CAP_KINDS:
            raise ValueError(f"unknown cap rule {self.kind!r}")
        if self.kind == "custom":
            if self.default not in CAP_KINDS[:-1]:
                raise ValueError(f"custom cap default must be a catalog rule, got {self.default!r}")
            if any(v < 1 for _, v in self.table):
                raise ValueError("caps must be >= 1 so that singletons stay members")

    def __call__(self, n: int) -> int:
        kind = self.kind
        if kind == "custom":
            lookup = dict(self.table)
            if n in lookup:
                return lookup[n]
            kind = self.default
        if kind == "full":
            return 1 << n
        if kind == "farah":
            return 1 if n == 0 else (1 << n) // n
        if kind == "one":
            return 1
        if kind == "index":
            return max(n, 1)
        raise AssertionError(kind)


# ------------------------------------------------------------------- families

@dataclass(frozen=True)
class Explicit:
    sets: tuple[FiniteSet, ...]


@dataclass(frozen=True)
class Singletons:
    pass


@dataclass(frozen=True)
class AllFinite:
    pass


@dataclass(frozen=True)
class PartitionBlocks:
    pass


@dataclass(frozen=True)
class BlockCappedJoined:
    cap: CapRule


@dataclass(frozen=True)
class BlockCappedLocal:
    cap: CapRule


@dataclass(frozen=True)
class Schreier:
    alpha: Ordinal


@dataclass(frozen=True)
class Antichains:
    pass


@dataclass(frozen=True)
class Restrict:
    base: "Family"
    window: FiniteSet


Family = (
    Explicit | Singletons | AllFinite | PartitionBlocks | BlockCappedJoined
    | BlockCappedLocal | Schreier | Antichains | Restrict
)

FARAH = BlockCappedJoined(CapRule("farah"))


def explicit(sets: Iterable[Iterable[int]]) -> Explicit:
    return Explicit(tuple(sorted({finite_set(s) for s in sets})))


def schreier(alpha) -> Schreier:
    return Schreier(as_ordinal(alpha))


def is_hereditary(f) -> bool:
    return True


# ----------------------------------------------------------------- membership

def family_contains(f, F: Sequence[int]) -> bool:
    F = tuple(F)
    if not F:
        return True
    if isinstance(f, AllFinite):
        return True
    if isinstance(f, Singletons):
        return len(F) == 1
    if isinstance(f, PartitionBlocks):
        return block_of(F[0]) == block_of(F[-1])
    if isinstance(f, BlockCappedLocal):
        n = block_of(F[0])
        return block_of(F[-1]) == n and len(F) <= f.cap(n)
    if isinstance(f, BlockCappedJoined):
        counts: dict[int, int] = {}
        for k in F:
            n = block_of(k)
            counts[n] = counts.get(n, 0) + 1
        return all(c <= f.cap(n) for n, c in counts.items())
    if isinstance(f, Schreier):
        return schreier_contains(f.alpha, F)
    if isinstance(f, Antichains):
        return all(not is_tree_prefix(a, b) for a, b in itertools.combinations(F, 2))
    if isinstance(f, Explicit):
        s = set(F)
        return any(s.issubset(member) for member in f.sets)
    if isinstance(f, Restrict):
        return set(F).issubset(f.window) and family_contains(f.base, F)
    raise TypeError(f"not a family: {f!r}")


class Members(NamedTuple):
    members: list[FiniteSet]
    truncated: bool


def members_within(f, support: Sequence[int]) -> list[FiniteSet]:
    """All members of ``f`` contained in ``support`` (uses heredity to prune)."""
    support = tuple(sorted(support))
    out: list[FiniteSet] = [()]

    def extend(prefix: FiniteSet, start: int) -> None:
        for i in range(start, len(support)):
            cand = prefix + (support[i],)
            if family_contains(f, cand):
                out.append(cand)
                extend(cand, i + 1)

    extend((), 0)
    return out


def enumerate_members(f, N: int, max_count: int | None = None) -> Members:
    """Members of ``f`` inside ``[1, N)`` ordered by size, then lexicographically."""
    found = members_within(f, range(1, N))
    found.sort(key=lambda F: (len(F), F))
    if max_count is not None and len(found) > max_count:
        return Members(found[:max_count], True)
    return Members(found, False)


# ----------------------------------------------------------------- Delta systems

class DeltaSystem(NamedTuple):
    indices: tuple[int, ...]
    sets: tuple[FiniteSet, ...]
    root: FiniteSet


def is_delta_system(sets: Sequence[Iterable[int]], root: Iterable[int]) -> bool:
    root = set(root)
    sets = [set(s) for s in sets]
    return all(a & b == root for a, b in itertools.combinations(sets, 2))


def delta_system_extract(sets: Sequence[Iterable[int]], m: int) -> DeltaSystem | None:
    """First ``m``-element Delta-subsystem, trying roots by (size, lex) order.

    For each candidate root the sets containing it are scanned in input order
    and a family with pairwise disjoint petals is found by backtracking.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    sets = [finite_set(s) for s in sets]
    roots = sorted(
        {r for s in sets for k in range(len(s) + 1) for r in itertools.combinations(s, k)},
        key=lambda r: (len(r), r),
    )
    for root in roots:
        rs = set(root)
        cands = [(i, set(s) - rs) for i, s in enumerate(sets) if rs.issubset(s)]
        if len(cands) < m:
            continue
        picked = _disjoint_petals(cands, m)
        if picked is not None:
            idx = tuple(picked)
            return DeltaSystem(idx, tuple(sets[i] for i in idx), root)
    return None


def _disjoint_petals(cands, m):
    chosen: list[int] = []
    used: set[int] = set()

    def search(start: int) -> bool:
        if len(chosen) == m:
            return True
        for pos in range(start, len(cands)):
            if len(cands) - pos < m - len(chosen):
                return False
            i, petal = cands[pos]
            if petal & used:
                continue
            chosen.append(i)
            used.update(petal)
            if search(pos + 1):
                return True
            chosen.pop()
            used.difference_update(petal)
        return False

    return chosen if search(0) else None


# ------------------------------------------------------------ chains, compactness

def chain_witness_check(f, gen, N: int) -> bool:
    """Every initial segment of ``realize(gen, N)`` belongs to ``f``."""
    A = realize(gen, N)
    return all(family_contains(f, A[:i]) for i in range(1, len(A) + 1))


@dataclass(frozen=True)
class Precompact:
    reason: str


@dataclass(frozen=True)
class NotPrecompact:
    witness: object


@dataclass(frozen=True)
class Unknown:
    reason: str = "no catalog verdict"


def precompact_status(f):
    if isinstance(f, Schreier):
        return Precompact(f"S_{format_ordinal(f.alpha)} is compact and hereditary")
    if isinstance(f, (Explicit, Restrict)):
        return Precompact("finite family")
    if isinstance(f, Singletons):
        return Precompact("sets of size <= 1")
    if isinstance(f, (PartitionBlocks, BlockCappedLocal)):
        return Precompact("every member lies inside one finite block")
    if isinstance(f, AllFinite):
        return NotPrecompact(AllIndices())
    if isinstance(f, BlockCappedJoined):
        return NotPrecompact(BlockPrefix(BlockRule("one")))
    if isinstance(f, Antichains):
        return NotPrecompact(Comb())
    return Unknown()


def symbolic_rank(f) -> Ordinal | None:
    """Cantor-Bendixson rank of the closure, from the catalog."""
    if isinstance(f, Schreier):
        return add(omega_power(f.alpha), ONE)
    if isinstance(f, (Explicit, Restrict)):
        return ONE
    if isinstance(f, (Singletons, PartitionBlocks, BlockCappedLocal)):
        return Ordinal.of(2)
    return None


# ------------------------------------------------------- heredity and spreading

def _dominating_steps(F: FiniteSet, window: int):
    """Sets obtained by pushing one element of F up by one inside [1, window)."""
    for i, a in enumerate(F):
        nxt = F[i + 1] if i + 1 < len(F) else window
        if a + 1 < nxt:
            yield F[:i] + (a + 1,) + F[i + 1:]


def spreading_check(f, window: int) -> tuple[FiniteSet, FiniteSet] | None:
    """``None`` if spreading holds inside ``[1, window)``, else the first violation.

    Any dominating set is reachable by single +1 moves through dominating
    sets, so closure under those moves decides the property; the reported
    counterexample takes F among the largest members first (then lex), G lex.
    """
    members = enumerate_members(f, window).members
    member_set = set(members)
    if all(G in member_set for F in members for G in _dominating_steps(F, window)):
        return None
    for F in sorted(members, key=lambda F: (-len(F), F)):
        for G in itertools.combinations(range(1, window), len(F)):
            if G != F and all(a <= b for a, b in zip(F, G)) and G not in member_set:
                return F, G
    raise AssertionError("unreachable: a single-step violation implies a full one")


def heredity_violation(f, window: int) -> tuple[FiniteSet, FiniteSet] | None:
    """First (F, G) with F a member, G a subset of F that is not, inside [1, window)."""
    for r in range(window):
        for F in itertools.combinations(range(1, window), r):
            if not family_contains(f, F):
                continue
            for i in range(len(F)):
                G = F[:i] + F[i + 1:]
                if not family_contains(f, G):
                    return F, G
    return None


# ---------------------------------------------------------------- JSON vocabulary

_FAMILY_FIELDS = {
    "explicit": {"sets"}, "singletons": set(), "all-finite": set(),
    "partition-blocks": set(), "block-capped-joined": {"cap"},
    "block-capped-local": {"cap"}, "schreier": {"alpha"}, "antichains": set(),
    "restrict": {"base", "window"}, "farah": set(),
}


def family_from_json(obj):
    if isinstance(obj, str):
        obj = {"kind": obj}
    if not isinstance(obj, Mapping) or "kind" not in obj:
        raise ValueError(f"family description needs a 'kind': {obj!r}")
    kind = obj["kind"]
    if kind not in _FAMILY_FIELDS:
        raise ValueError(f"unknown family kind {kind!r}")
    extra = set(obj) - _FAMILY_FIELDS[kind] - {"kind"}
    if extra:
        raise ValueError(f"unknown fields for family {kind!r}: {sorted(extra)}")
    if kind == "explicit":
        return explicit(obj.get("sets", []))
    if kind == "singletons":
        return Singletons()
    if kind == "all-finite":
        return AllFinite()
    if kind == "partition-blocks":
        return PartitionBlocks()
    if kind == "farah":
        return FARAH
    if kind in ("block-capped-joined", "block-capped-local"):
        cap = cap_from_json(obj.get("cap", "full"))
        return BlockCappedJoined(cap) if kind == "block-capped-joined" else BlockCappedLocal(cap)
    if kind == "schreier":
        return Schreier(as_ordinal(str(obj["alpha"])))
    if kind == "antichains":
        return Antichains()
    return Restrict(family_from_json(obj["base"]), finite_set(obj["window"]))


def cap_from_json(obj) -> CapRule:
    if isinstance(obj, str):
        return CapRule(obj)
    extra = set(obj) - {"kind", "table", "default"}
    if extra:
        raise ValueError(f"unknown fields for cap rule: {sorted(extra)}")
    table = tuple(sorted((int(k), int(v)) for k, v in obj.get("table", {}).items()))
    return CapRule(obj.get("kind", "custom"), table, obj.get("default", "one"))


def family_to_json(f) -> dict:
    if isinstance(f, Explicit):
        return {"kind": "explicit", "sets": [list(s) for s in f.sets]}
    if isinstance(f, Singletons):
        return {"kind": "singletons"}
    if isinstance(f, AllFinite):
        return {"kind": "all-finite"}
    if isinstance(f, PartitionBlocks):
        return {"kind": "partition-blocks"}
    if isinstance(f, (BlockCappedJoined, BlockCappedLocal)):
        c = f.cap
        cap = c.kind if c.kind != "custom" else {
            "kind": "custom", "table": {str(k): v for k, v in c.table}, "default": c.default}
        kind = "block-capped-joined" if isinstance(f, BlockCappedJoined) else "block-capped-local"
        return {"kind": kind, "cap": cap}
    if isinstance(f, Schreier):
        return {"kind": "schreier", "alpha": format_ordinal(f.alpha)}
    if isinstance(f, Antichains):
        return {"kind": "antichains"}
    if isinstance(f, Restrict):
        return {"kind": "restrict", "base": family_to_json(f.base), "window": list(f.window)}
    raise TypeError(f"not a family: {f!r}")


def family_label(f) -> str:
    if isinstance(f, Schreier):
        return f"Schreier({format_ordinal(f.alpha)})"
    if isinstance(f, (BlockCappedJoined, BlockCappedLocal)):
        return f"{type(f).__name__}({f.cap.kind})"
    return type(f).__name__


__all__ = [
    "AllFinite", "Antichains", "BlockCappedJoined", "BlockCappedLocal", "CapRule",
    "Explicit", "FARAH", "Family", "Members", "NotPrecompact", "OMEGA", "PartitionBlocks",
    "Precompact", "Restrict", "Schreier", "Singletons", "Unknown", "chain_witness_check",
    "delta_system_extract", "enumerate_members", "explicit", "family_contains",
    "family_from_json", "family_to_json", "heredity_violation", "is_delta_system",
    "members_within", "precompact_status", "schreier", "spreading_check", "symbolic_rank",
]
