import itertools
import random
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combinach.families import schreier
from combinach.norms import FinVec, ext_norm, norm_oracle
from combinach.ordinal import ord_parse, fundamental_sequence, Ordinal
from combinach.schreier import (
    PreconditionError, density_bound_check, essential_inclusion_probe, phi_alpha,
    schreier_contains, schreier_norm, summable_like_sets, summable_like_witness,
    trace_vs_I2_witness,
)
from combinach.schreier.core import _LazyEngine, _TableEngine, schreier1_norm
from combinach.setgen import BlockPrefix, BlockRule, ExplicitFinite

from strategies import finite_sets, finvecs, nonneg_rationals

SAMPLE = ["1", "2", "3", "w", "w+1", "w*2", "w^2"]


@lru_cache(maxsize=None)
def split_oracle(alpha: Ordinal, F: tuple) -> bool:
    """Membership straight from the recursive definition, trying every split."""
    if not F:
        return True
    if alpha.is_zero:
        return len(F) == 1
    if alpha.is_successor:
        beta = alpha.predecessor()
        return _splits(beta, F, F[0])
    return any(split_oracle(fundamental_sequence(alpha, k), F) for k in range(1, F[0] + 1))


def _splits(beta, F, budget):
    if not F:
        return True
    if budget == 0:
        return False
    return any(split_oracle(beta, F[:i]) and _splits(beta, F[i:], budget - 1)
               for i in range(1, len(F) + 1))


def test_membership_examples():
    assert schreier_contains(1, (3, 5, 8))
    assert not schreier_contains(1, (2, 5, 8))
    assert schreier_contains(2, (2, 5, 6, 7, 8))
    assert schreier_contains("w", (3, 4, 5))
    assert schreier_contains(0, (7,)) and not schreier_contains(0, (1, 2))


@pytest.mark.parametrize("alpha", ["0"] + SAMPLE)
def test_membership_matches_split_oracle_exhaustively(alpha):
    a = ord_parse(alpha)
    for r in range(8):
        for F in itertools.combinations(range(1, 11), r):
            assert schreier_contains(a, F) == split_oracle(a, F), (alpha, F)


@given(finite_sets(1, 24, 9))
def test_s1_law(F):
    assert schreier_contains(1, F) == (len(F) <= (F[0] if F else 0))


@pytest.mark.parametrize("a,b", [("1", "2"), ("2", "3"), ("3", "4"), ("w", "w+1")])
def test_successor_contains_predecessor(a, b):
    for r in range(7):
        for F in itertools.combinations(range(1, 11), r):
            if schreier_contains(a, F):
                assert schreier_contains(b, F)


def test_phi_alpha_examples():
    assert phi_alpha(1, range(4, 8)) == 1
    assert phi_alpha(2, summable_like_sets(2)[1]) == Fraction(1, 4)
    assert phi_alpha(1, ()) == 0


@pytest.mark.parametrize("alpha", SAMPLE)
@given(x=finvecs(1, 14, 9))
@settings(max_examples=25)
def test_norm_matches_oracle(alpha, x):
    f = schreier(alpha)
    assert ext_norm(f, x) == norm_oracle(f, x)


@pytest.mark.parametrize("alpha", ["2", "3", "w", "w+1", "w*2", "w^2"])
def test_lazy_and_table_engines_agree(alpha):
    rng = random.Random(SAMPLE.index(alpha) if alpha in SAMPLE else 0)
    a = ord_parse(alpha)
    for _ in range(25):
        positions = tuple(sorted(rng.sample(range(1, 40), rng.randint(2, 18))))
        weights = [rng.randint(0, 9) for _ in positions]
        assert _TableEngine(positions, weights).value(a) == _LazyEngine(positions, weights).value(a)


@given(st.lists(st.tuples(st.integers(1, 30), nonneg_rationals), max_size=12, unique_by=lambda t: t[0]))
def test_schreier1_closed_form_matches_oracle(pairs):
    pairs.sort()
    positions = [k for k, _ in pairs]
    weights = [v for _, v in pairs]
    x = FinVec(dict(pairs))
    expected = norm_oracle(schreier(1), x) if x else 0
    assert schreier_norm(1, positions, weights) == expected
    if positions:
        assert schreier1_norm(positions, weights) == expected


@given(finvecs(1, 14, 8))
@settings(max_examples=30)
def test_norm_grows_along_finite_successors(x):
    values = [ext_norm(schreier(n), x) for n in range(4)]
    assert values == sorted(values)


def test_essential_inclusion_examples():
    assert essential_inclusion_probe(1, 2, 12) == 0
    assert essential_inclusion_probe(0, 1, 12) == 0
    assert essential_inclusion_probe(2, 1, 12) is None
    with pytest.raises(PreconditionError):
        essential_inclusion_probe(1, 2, 15)


@pytest.mark.parametrize("alpha,N,k", [("2", 2, 4), ("3", 1, 2), ("w", 2, 4)])
def test_summable_like_examples(alpha, N, k):
    w = summable_like_witness(alpha, N)
    assert len(w.sets) == k
    assert all(v == Fraction(1, 2 ** N) for v in w.piece_values)
    assert w.union_value == 1


def test_summable_like_preconditions():
    with pytest.raises(PreconditionError):
        summable_like_witness(1, 2)
    with pytest.raises(PreconditionError):
        summable_like_witness(2, 5)


def test_trace_witness_values():
    w = trace_vs_I2_witness(2)
    by_k = {}
    for row in w.rows:
        by_k.setdefault(row.k, set()).add(row.trace_value)
    assert by_k == {0: {1}, 1: {Fraction(1, 2)}, 2: {Fraction(1, 4)}}
    assert all(v >= 1 for *_, v in w.s2_windows)
    assert not w.skipped


def test_trace_witness_k4_lists_skipped_blocks():
    w = trace_vs_I2_witness(4)
    assert any("n=19" in s for s in w.skipped)
    assert all(r.trace_value == Fraction(1, 2 ** r.k) for r in w.rows)


def test_density_examples():
    one = BlockPrefix(BlockRule("one"))
    rep = density_bound_check(4, one, 5, 1 << 12)
    assert rep.bound == Fraction(5, 16) and rep.value <= rep.bound
    # block 4 holds 1 point = 2^-4 * 2^4, not strictly below the density
    with pytest.raises(PreconditionError):
        density_bound_check(4, one, 4, 1 << 12)
    eighth = BlockPrefix(BlockRule("custom", tuple((n, 2 ** n // 8) for n in range(5, 12)), "full"))
    rep = density_bound_check(2, eighth, 5, 1 << 12)
    assert rep.bound == Fraction(3, 4) and rep.value <= rep.bound
    assert density_bound_check(3, ExplicitFinite(()), 1, 64).value == 0


@given(st.integers(0, 5), st.data())
@settings(max_examples=20)
def test_density_bound_random_sets(j, data):
    N = j + 1
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    pts = []
    for n in range(N, 10):
        c = rng.randrange(0, max(1, -(-(2 ** n) // 2 ** j)))
        pts.extend(rng.sample(range(2 ** n, 2 ** (n + 1)), c))
    rep = density_bound_check(j, ExplicitFinite(tuple(sorted(pts))), N, 1 << 10)
    assert rep.value <= Fraction(1 + j, 2 ** j)
