"""Schreier families S_alpha: membership and exact max-weight members.

``S_0`` holds the sets of size at most one.  ``S_(b+1)`` holds unions
``E_1 < ... < E_n`` of nonempty ``S_b`` sets with ``n <= min E_1``.  For a limit
``a``, ``S_a`` holds the nonempty ``E`` with ``E in S_(xi_k)`` for some
``k <= min E`` where ``xi_k`` is the canonical fundamental sequence.
"""
from __future__ import annotations

import bisect
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..ordinal import ONE, Ordinal, as_ordinal, check_depth, fundamental_sequence

# Above this support size the norm engine switches from whole-table
# iteration (which detects stabilising ordinal chains) to lazy memoisation.
TABLE_LIMIT = 24


def schreier_contains(alpha, F: Sequence[int]) -> bool:
    alpha = check_depth(as_ordinal(alpha))
    F = tuple(F)
    if not F:
        return True
    if F[0] < 1:
        raise ValueError("Schreier families live on the positive integers")
    return _contains_cached(alpha, F)


@lru_cache(maxsize=1 << 18)
def _contains_cached(alpha: Ordinal, F: tuple[int, ...]) -> bool:
    return _Membership(F).contains(alpha, 0, len(F))


class _Membership:
    """Membership of the slices ``F[i:j]`` of one fixed increasing tuple."""

    def __init__(self, F: tuple[int, ...]):
        self.F = F
        self.contains = lru_cache(maxsize=None)(self._contains)

    def _contains(self, alpha: Ordinal, i: int, j: int) -> bool:
        size = j - i
        if size <= 1:
            return True
        if alpha.is_zero:
            return False
        lo = self.F[i]
        if size <= lo:
            # |F| <= min F puts F in S_1, and S_1 is contained in every S_a, a >= 1
            return True
        if alpha == ONE:
            return False
        if alpha.is_successor:
            return self._pieces(alpha.predecessor(), i, j, lo) <= lo
        return any(
            self.contains(fundamental_sequence(alpha, k), i, j)
            for k in range(1, lo + 1)
        )

    def _pieces(self, beta: Ordinal, i: int, j: int, budget: int) -> int:
        """Least number of consecutive S_beta pieces covering F[i:j].

        Greedy is optimal: S_beta is hereditary, so the minimum piece count of a
        final segment never exceeds that of a longer final segment.  Stops
        counting once ``budget`` is exceeded.
        """
        count = 0
        while i < j:
            count += 1
            if count > budget:
                return count
            # longest prefix of F[i:j] in S_beta; prefix membership is monotone
            lo, hi = i + 1, j
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if self.contains(beta, i, mid):
                    lo = mid
                else:
                    hi = mid - 1
            i = lo
        return count


# ------------------------------------------------------------------- norms

def top_sum(weights: Sequence[Fraction], count: int) -> Fraction:
    if count <= 0:
        return Fraction(0)
    return sum(sorted(weights, reverse=True)[:count], Fraction(0))


def schreier1_norm(positions: Sequence[int], weights: Sequence[Fraction]) -> Fraction:
    """max over j of the sum of the ``positions[j]`` largest weights at or after j."""
    m = len(positions)
    if m == 0:
        return 0
    ranked = sorted(range(m), key=lambda i: (-weights[i], i))
    rank = [0] * m
    for r, i in enumerate(ranked):
        rank[i] = r
    cnt = _Fenwick(m)
    tot = _Fenwick(m)
    best = 0
    for j in range(m - 1, -1, -1):
        cnt.add(rank[j], 1)
        tot.add(rank[j], weights[j])
        best = max(best, _top_k(cnt, tot, positions[j]))
    return best


class _Fenwick:
    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)

    def add(self, i: int, v) -> None:
        i += 1
        while i <= self.n:
            self.tree[i] += v
            i += i & -i


def _top_k(cnt: _Fenwick, tot: _Fenwick, k: int) -> Fraction:
    """Sum of the k best-ranked inserted weights (all of them if fewer)."""
    pos, taken, acc = 0, 0, 0
    step = 1 << cnt.n.bit_length()
    while step:
        nxt = pos + step
        if nxt <= cnt.n and taken + cnt.tree[nxt] <= k:
            pos = nxt
            taken += cnt.tree[nxt]
            acc += tot.tree[nxt]
        step >>= 1
    return acc


def schreier_norm(alpha, positions: Sequence[int], weights: Sequence[Fraction]) -> Fraction:
    """Exact ``max { sum_{i in F} w_i : F in S_alpha, F within positions }``.

    ``weights`` must be nonnegative and aligned with the increasing ``positions``.
    """
    alpha = check_depth(as_ordinal(alpha))
    positions = tuple(positions)
    weights = tuple(Fraction(w) for w in weights)
    if not positions:
        return Fraction(0)
    if schreier_contains(alpha, positions):
        return sum(weights, Fraction(0))
    if alpha.is_zero:
        return max(weights)
    # integer arithmetic on a common denominator keeps the inner loops cheap
    denom = math.lcm(*(w.denominator for w in weights))
    scaled = tuple(w.numerator * (denom // w.denominator) for w in weights)
    if alpha == ONE:
        return Fraction(schreier1_norm(positions, scaled), denom)
    engine = _TableEngine if len(positions) <= TABLE_LIMIT else _LazyEngine
    return Fraction(engine(positions, scaled).value(alpha), denom)


class _TableEngine:
    """Whole interval tables ``T[s][e]`` = norm of the vector restricted to s..e.

    Successor tables depend only on the predecessor table, so they are cached
    by content; a chain that stops changing costs nothing further.
    """

    def __init__(self, positions, weights):
        self.p = positions
        self.w = weights
        self.m = len(positions)
        self.prefix = [0]
        for w in weights:
            self.prefix.append(self.prefix[-1] + w)
        self.tables: dict[Ordinal, tuple] = {}
        self.succ_cache: dict[tuple, tuple] = {}

    def value(self, alpha: Ordinal) -> int:
        return self.table(alpha)[0][self.m - 1]

    def mass(self, s: int, e: int) -> int:
        return self.prefix[e + 1] - self.prefix[s]

    def table(self, alpha: Ordinal) -> tuple:
        hit = self.tables.get(alpha)
        if hit is not None:
            return hit
        limit_part, n = alpha.split_finite()
        if n == 0:
            t = self._base() if alpha.is_zero else self._limit(alpha)
        else:
            t = self.table(limit_part) if not limit_part.is_zero else self._base()
        for _ in range(n):
            t = self._succ(t)
        self.tables[alpha] = t
        return t

    def _base(self) -> tuple:
        m, w = self.m, self.w
        rows = []
        for s in range(m):
            row = [0] * m
            cur = 0
            for e in range(s, m):
                cur = max(cur, w[e])
                row[e] = cur
            rows.append(tuple(row))
        return tuple(rows)

    def _succ(self, t: tuple) -> tuple:
        hit = self.succ_cache.get(t)
        if hit is not None:
            return hit
        m, p = self.m, self.p
        rows = [[0] * m for _ in range(m)]
        for e in range(m):
            # g[s][r]: best sum over <= r consecutive pieces partitioning s..e
            g = [None] * (e + 2)
            g[e + 1] = None
            for s in range(e, -1, -1):
                total = self.mass(s, e)
                row = [0, t[s][e]]
                # rows stop once they reach the full mass: later entries repeat it
                while row[-1] < total:
                    r = len(row)
                    best = row[r - 1]
                    for split in range(s, e):
                        rest = g[split + 1]
                        cand = t[s][split] + rest[min(r - 1, len(rest) - 1)]
                        if cand > best:
                            best = cand
                    row.append(best)
                g[s] = row
            best = 0
            for s in range(e, -1, -1):
                row = g[s]
                val = row[min(p[s], len(row) - 1)]
                if val > best:
                    best = val
                rows[s][e] = best
        out = tuple(tuple(r) for r in rows)
        self.succ_cache[t] = out
        return out

    def _limit(self, lam: Ordinal) -> tuple:
        m, p = self.m, self.p
        rows = [[0] * m for _ in range(m)]
        first_at = _first_index_at_least(p)
        for k in range(1, p[-1] + 1):
            t = self.table(fundamental_sequence(lam, k))
            sk = first_at(k)
            for s in range(m):
                start = max(s, sk)
                for e in range(start, m):
                    v = t[start][e]
                    if v > rows[s][e]:
                        rows[s][e] = v
        return tuple(tuple(r) for r in rows)


class _LazyEngine:
    """Memoised interval values for long supports and small ordinals."""

    def __init__(self, positions, weights):
        self.p = positions
        self.w = weights
        self.m = len(positions)
        self.first_at = _first_index_at_least(positions)
        self.prefix = [0]
        for x in weights:
            self.prefix.append(self.prefix[-1] + x)
        self.member = _Membership(tuple(positions)).contains
        self.memo: dict[tuple, Fraction] = {}
        self.gmemo: dict[tuple, list] = {}
        self.s1memo: dict[int, list] = {}

    def value(self, alpha: Ordinal) -> int:
        return self.T(alpha, 0, self.m - 1)

    def T(self, alpha: Ordinal, s: int, e: int) -> int:
        if s > e:
            return 0
        key = (alpha, s, e)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        p, w = self.p, self.w
        if alpha.is_zero:
            val = max(w[s:e + 1])
        elif self.member(alpha, s, e + 1):
            val = self.prefix[e + 1] - self.prefix[s]
        elif alpha == ONE:
            val = self._s1_column(e)[s]
        elif alpha.is_successor:
            beta = alpha.predecessor()
            table = self._g(beta, e)
            val = 0
            for s2 in range(s, e + 1):
                row = table[s2]
                val = max(val, row[min(p[s2], len(row) - 1)])
        else:
            val = 0
            for k in range(1, p[e] + 1):
                start = max(s, self.first_at(k))
                xi = fundamental_sequence(alpha, k)
                val = max(val, self.T(xi, start, e))
                if self.member(xi, start, e + 1):
                    # larger k only see shorter windows, each worth at most this mass
                    break
        self.memo[key] = val
        return val

    def _s1_column(self, e: int) -> list:
        """T(1, s, e) for every s <= e in one right-to-left sweep."""
        col = self.s1memo.get(e)
        if col is not None:
            return col
        m = e + 1
        p, w = self.p, self.w
        ranked = sorted(range(m), key=lambda i: (-w[i], i))
        rank = [0] * m
        for r, i in enumerate(ranked):
            rank[i] = r
        cnt, tot = _Fenwick(m), _Fenwick(m)
        col = [0] * m
        best = 0
        for j in range(e, -1, -1):
            cnt.add(rank[j], 1)
            tot.add(rank[j], w[j])
            best = max(best, _top_k(cnt, tot, p[j]))
            col[j] = best
        self.s1memo[e] = col
        return col

    def _g(self, beta: Ordinal, e: int) -> list:
        key = (beta, e)
        hit = self.gmemo.get(key)
        if hit is not None:
            return hit
        g: list = [None] * (e + 2)
        for s in range(e, -1, -1):
            total = self.prefix[e + 1] - self.prefix[s]
            row = [0, self.T(beta, s, e)]
            while row[-1] < total:
                r = len(row)
                best = row[r - 1]
                for split in range(s, e):
                    rest = g[split + 1]
                    cand = self.T(beta, s, split) + rest[min(r - 1, len(rest) - 1)]
                    if cand > best:
                        best = cand
                row.append(best)
            g[s] = row
        self.gmemo[key] = g
        return g


def _first_index_at_least(positions: Sequence[int]):
    def first_at(k: int) -> int:
        return bisect.bisect_left(positions, k)

    return first_at


__all__ = ["schreier_contains", "schreier_norm", "schreier1_norm", "ZERO"]
