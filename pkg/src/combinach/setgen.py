"""Finite descriptions of infinite index sets and the coding of the binary tree.

Indices are positive integers.  The dyadic block ``P_n`` is ``[2^n, 2^(n+1))``.
Binary strings are coded level by level: ``code(s) = 2^|s| + int(s, 2)`` with
the first character as the most significant bit, so the children of code ``c``
are ``2c`` and ``2c + 1`` and the level of ``c`` is ``c.bit_length() - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

FiniteSet = tuple[int, ...]


def finite_set(items) -> FiniteSet:
    out = tuple(sorted(set(int(i) for i in items)))
    if out and out[0] < 1:
        raise ValueError(f"indices must be positive integers: {out}")
    return out


def block_of(k: int) -> int:
    return k.bit_length() - 1


def block_range(n: int) -> range:
    return range(1 << n, 1 << (n + 1))


# ------------------------------------------------------------------ tree codes

def tree_code(s: str) -> int:
    if any(ch not in "01" for ch in s):
        raise ValueError(f"not a binary string: {s!r}")
    return (1 << len(s)) + (int(s, 2) if s else 0)


def tree_decode(n: int) -> str:
    if n < 1:
        raise ValueError("tree codes start at 1")
    length = n.bit_length() - 1
    return format(n - (1 << length), "b").zfill(length) if length else ""


def tree_parent(n: int) -> int:
    if n <= 1:
        raise ValueError("the root has no parent")
    return n >> 1


def is_tree_prefix(a: int, b: int) -> bool:
    """True iff the string coded by ``a`` is a prefix of the one coded by ``b``."""
    shift = b.bit_length() - a.bit_length()
    return shift >= 0 and (b >> shift) == a


# ----------------------------------------------------------------- block rules

BLOCK_RULES = ("full", "one", "farah", "halvedByLog", "scaled", "custom")


@dataclass(frozen=True)
class BlockRule:
    """How many leading points of block ``P_n`` to take."""

    kind: str = "full"
    table: tuple[tuple[int, int], ...] = ()
    default: str = "full"
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in BLOCK_RULES:
            raise ValueError(f"unknown block rule {self.kind!r}")
        if self.kind == "custom" and self.default not in BLOCK_RULES[:-1]:
            raise ValueError(f"custom rule default must be a catalog rule, got {self.default!r}")

    def count(self, n: int) -> int:
        size = 1 << n
        kind = self.kind
        if kind == "custom":
            lookup = dict(self.table)
            if n in lookup:
                return max(0, min(size, lookup[n]))
            kind = self.default
        if kind == "full":
            return size
        if kind == "one":
            return 1
        if kind == "farah":
            return size if n == 0 else size // n
        if kind == "halvedByLog":
            return size if n == 0 else 1 << (n - block_of(n))
        if kind == "scaled":
            return min(size, int(self.scale * size))
        raise AssertionError(kind)


# ------------------------------------------------------------------ generators

@dataclass(frozen=True)
class ExplicitFinite:
    elements: FiniteSet


@dataclass(frozen=True)
class AllIndices:
    pass


@dataclass(frozen=True)
class BlockPrefix:
    rule: BlockRule = field(default_factory=BlockRule)


@dataclass(frozen=True)
class BlocksUnion:
    """Union of the blocks ``P_n`` for ``n`` in the (positive) index set ``blocks``."""

    blocks: "SetGenerator"


@dataclass(frozen=True)
class TreeBranch:
    """Codes of the initial segments of the branch ``period`` repeated forever."""

    period: str

    def __post_init__(self):
        if not self.period or any(ch not in "01" for ch in self.period):
            raise ValueError(f"period must be a nonempty binary string: {self.period!r}")


@dataclass(frozen=True)
class Comb:
    """Codes of ``0^n 1`` for ``n >= 0``: an infinite antichain of the tree."""


@dataclass(frozen=True)
class TailFrom:
    n: int


@dataclass(frozen=True)
class UnionOf:
    parts: tuple["SetGenerator", ...]


@dataclass(frozen=True)
class IntersectionOf:
    parts: tuple["SetGenerator", ...]


@dataclass(frozen=True)
class Minus:
    left: "SetGenerator"
    right: "SetGenerator"


SetGenerator = (
    ExplicitFinite | AllIndices | BlockPrefix | BlocksUnion | TreeBranch | Comb
    | TailFrom | UnionOf | IntersectionOf | Minus
)


def realize(g, N: int) -> FiniteSet:
    """The denoted set intersected with ``[1, N)``."""
    if N < 1:
        raise ValueError("realize needs N >= 1")
    return tuple(sorted(_realize(g, N)))


def _realize(g, N: int) -> set[int]:
    if isinstance(g, ExplicitFinite):
        return {k for k in g.elements if k < N}
    if isinstance(g, AllIndices):
        return set(range(1, N))
    if isinstance(g, TailFrom):
        return set(range(max(g.n, 1), N))
    if isinstance(g, BlockPrefix):
        out: set[int] = set()
        n = 0
        while (1 << n) < N:
            start = 1 << n
            out.update(range(start, min(start + g.rule.count(n), N)))
            n += 1
        return out
    if isinstance(g, BlocksUnion):
        top = block_of(N - 1) + 1 if N > 1 else 0
        out = set()
        for n in _realize(g.blocks, top + 1):
            out.update(k for k in block_range(n) if k < N)
        return out
    if isinstance(g, TreeBranch):
        out, code, i = set(), 1, 0
        while code < N:
            out.add(code)
            code = 2 * code + int(g.period[i % len(g.period)])
            i += 1
        return out
    if isinstance(g, Comb):
        out, k = set(), 3
        while k < N:
            out.add(k)
            k = 2 * k - 1  # code(0^n 1) = 2^(n+1) + 1
        return out
    if isinstance(g, UnionOf):
        out = set()
        for part in g.parts:
            out |= _realize(part, N)
        return out
    if isinstance(g, IntersectionOf):
        if not g.parts:
            return set(range(1, N))
        sets = [_realize(part, N) for part in g.parts]
        return set.intersection(*sets)
    if isinstance(g, Minus):
        return _realize(g.left, N) - _realize(g.right, N)
    raise TypeError(f"not a set generator: {g!r}")


# ------------------------------------------------------------- JSON vocabulary

def generator_from_json(obj) -> object:
    if isinstance(obj, str):
        obj = {"kind": obj}
    if not isinstance(obj, Mapping) or "kind" not in obj:
        raise ValueError(f"generator description needs a 'kind': {obj!r}")
    kind = obj["kind"]
    allowed = {
        "explicit": {"set"}, "all": set(), "block-prefix": {"rule"},
        "blocks-union": {"blocks"}, "tree-branch": {"period"}, "comb": set(),
        "tail-from": {"n"}, "union": {"parts"}, "intersect": {"parts"},
        "minus": {"left", "right"},
    }
    if kind not in allowed:
        raise ValueError(f"unknown generator kind {kind!r}")
    extra = set(obj) - allowed[kind] - {"kind"}
    if extra:
        raise ValueError(f"unknown fields for generator {kind!r}: {sorted(extra)}")
    if kind == "explicit":
        return ExplicitFinite(finite_set(obj.get("set", [])))
    if kind == "all":
        return AllIndices()
    if kind == "block-prefix":
        return BlockPrefix(rule_from_json(obj.get("rule", "full")))
    if kind == "blocks-union":
        return BlocksUnion(generator_from_json(obj["blocks"]))
    if kind == "tree-branch":
        return TreeBranch(str(obj["period"]))
    if kind == "comb":
        return Comb()
    if kind == "tail-from":
        return TailFrom(int(obj["n"]))
    if kind == "union":
        return UnionOf(tuple(generator_from_json(p) for p in obj["parts"]))
    if kind == "intersect":
        return IntersectionOf(tuple(generator_from_json(p) for p in obj["parts"]))
    return Minus(generator_from_json(obj["left"]), generator_from_json(obj["right"]))


def rule_from_json(obj) -> BlockRule:
    if isinstance(obj, str):
        return BlockRule(obj)
    extra = set(obj) - {"kind", "table", "default", "scale"}
    if extra:
        raise ValueError(f"unknown fields for block rule: {sorted(extra)}")
    table = tuple(sorted((int(k), int(v)) for k, v in obj.get("table", {}).items()))
    return BlockRule(
        kind=obj.get("kind", "custom"),
        table=table,
        default=obj.get("default", "full"),
        scale=Fraction(str(obj.get("scale", "1"))),
    )


def generator_to_json(g) -> dict:
    if isinstance(g, ExplicitFinite):
        return {"kind": "explicit", "set": list(g.elements)}
    if isinstance(g, AllIndices):
        return {"kind": "all"}
    if isinstance(g, BlockPrefix):
        r = g.rule
        if r.kind in ("custom", "scaled"):
            rule = {"kind": r.kind, "table": {str(k): v for k, v in r.table},
                    "default": r.default, "scale": str(r.scale)}
        else:
            rule = r.kind
        return {"kind": "block-prefix", "rule": rule}
    if isinstance(g, BlocksUnion):
        return {"kind": "blocks-union", "blocks": generator_to_json(g.blocks)}
    if isinstance(g, TreeBranch):
        return {"kind": "tree-branch", "period": g.period}
    if isinstance(g, Comb):
        return {"kind": "comb"}
    if isinstance(g, TailFrom):
        return {"kind": "tail-from", "n": g.n}
    if isinstance(g, UnionOf):
        return {"kind": "union", "parts": [generator_to_json(p) for p in g.parts]}
    if isinstance(g, IntersectionOf):
        return {"kind": "intersect", "parts": [generator_to_json(p) for p in g.parts]}
    if isinstance(g, Minus):
        return {"kind": "minus", "left": generator_to_json(g.left), "right": generator_to_json(g.right)}
    raise TypeError(f"not a set generator: {g!r}")
