from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from combinach.families import (
    FARAH, AllFinite, Antichains, PartitionBlocks, Singletons, explicit, family_contains,
    schreier,
)
from combinach.schreier import summable_like_sets
from combinach.setgen import AllIndices, BlockPrefix, BlockRule, TailFrom
from combinach.submeasures import (
    LAMBDA, TRACE, SubmeasureSpec, WeightSeq, exh_evidence, phi, phi_trace, profile_csv,
    tail_profile, weights_from_json, weights_to_json,
)

from strategies import finite_sets

Q = Fraction
HALVED = BlockPrefix(BlockRule("halvedByLog"))
SPECS = [
    SubmeasureSpec(f, WeightSeq(w))
    for f in (Singletons(), AllFinite(), PartitionBlocks(), FARAH, Antichains(), schreier(1),
              schreier(2), explicit([[1, 5, 9], [2, 3]]))
    for w in ("lambda", "harmonic", "one", "geometric", "block-inv-square")
]


def test_phi_examples():
    assert phi(SubmeasureSpec(PartitionBlocks(), LAMBDA), range(8, 16)) == 1
    assert phi(SubmeasureSpec(AllFinite(), WeightSeq("harmonic")), (1, 2, 4)) == Q(7, 4)
    assert phi(SubmeasureSpec(schreier(2), LAMBDA), summable_like_sets(2)[1]) == Q(1, 4)


def test_weight_values():
    assert [LAMBDA(k) for k in (1, 2, 3, 4, 7, 8)] == [1, Q(1, 2), Q(1, 2), Q(1, 4), Q(1, 4), Q(1, 8)]
    assert WeightSeq("block-inv-square")(9) == Q(1, 9)
    custom = WeightSeq("custom", ((2, Q(5)),), "one")
    assert custom(2) == 5 and custom(3) == 1
    assert weights_from_json(weights_to_json(custom)) == custom
    assert WeightSeq("geometric").divergent is False and LAMBDA.divergent
    with pytest.raises(ValueError):
        WeightSeq("custom", ((1, Q(0)),))


def test_tail_profile_examples():
    s = SubmeasureSpec(PartitionBlocks(), LAMBDA)
    cutoffs = [2 ** j for j in range(10)]
    prof = tail_profile(s, BlockPrefix(BlockRule("one")), cutoffs, 2 ** 10)
    assert [p.value for p in prof] == [Q(1, 2 ** j) for j in range(10)]
    harm = SubmeasureSpec(AllFinite(), WeightSeq("harmonic"))
    (p,) = tail_profile(harm, AllIndices(), [4], 64)
    assert p.value == sum(Q(1, k) for k in range(4, 64))


@pytest.mark.parametrize("k,horizon", [(0, 64), (1, 256), (2, 512)])
def test_trace_tails(k, horizon):
    cutoffs = [2 ** n for n in range(2 ** k, 2 ** (k + 1))]
    for p in tail_profile(TRACE, HALVED, cutoffs, horizon):
        assert p.value == Q(1, 2 ** k)


def test_phi_trace_examples():
    assert phi_trace({2, 3}) == 1
    assert phi_trace({1, 2}) == 1
    assert phi_trace(()) == 0


@given(finite_sets(1, 128, 10))
def test_phi_trace_is_the_antichain_submeasure(A):
    assert phi_trace(A) == phi(TRACE, A)


def test_exh_evidence_examples():
    blocks = SubmeasureSpec(PartitionBlocks(), LAMBDA)
    ev = exh_evidence(blocks, BlockPrefix(BlockRule("full")), Q(1, 2), [2 ** j for j in range(1, 8)], 256)
    assert ev.verdict == "REFUTES-MEMBERSHIP-AT" and ev.value == 1
    assert all(p.value == 1 for p in ev.profile)
    geo = SubmeasureSpec(AllFinite(), WeightSeq("geometric"))
    ev = exh_evidence(geo, AllIndices(), Q(1, 8), list(range(1, 12)), 64)
    assert ev.verdict == "SUPPORTS-MEMBERSHIP" and ev.cutoff == 4
    s2 = SubmeasureSpec(schreier(2), LAMBDA)
    ev = exh_evidence(s2, HALVED, Q(1), [4, 16], 256)
    assert ev.verdict == "REFUTES-MEMBERSHIP-AT" and ev.value >= 1


def test_profile_csv_columns():
    prof = tail_profile(SubmeasureSpec(Singletons(), LAMBDA), AllIndices(), [1, 3], 8)
    text = profile_csv(prof)
    assert text.splitlines() == [
        "cutoff,horizon,value_rational,value_decimal", "1,8,1,1", "3,8,1/2,0.5",
    ]


@pytest.mark.parametrize("s", SPECS, ids=lambda s: s.label)
@given(A=finite_sets(1, 40, 10), B=finite_sets(1, 40, 10))
@settings(max_examples=15)
def test_submeasure_axioms(s, A, B):
    AB = tuple(sorted(set(A) | set(B)))
    pa, pb, pab = phi(s, A), phi(s, B), phi(s, AB)
    assert phi(s, ()) == 0
    assert max(pa, pb) <= pab <= pa + pb
    for k in A[:3]:
        expected = s.tau(k) if family_contains(s.family, (k,)) else 0
        assert phi(s, (k,)) == expected


@pytest.mark.parametrize("s", SPECS, ids=lambda s: s.label)
def test_tail_profile_monotone(s):
    cutoffs = [1, 2, 3, 5, 8, 13, 21, 34]
    rows = [[p.value for p in tail_profile(s, g, cutoffs, h)]
            for g in (AllIndices(), HALVED, TailFrom(6)) for h in (34, 55, 89)]
    for i in range(0, len(rows), 3):
        group = rows[i:i + 3]
        for row in group:
            assert all(a >= b for a, b in zip(row, row[1:]))
        for lo, hi in zip(group, group[1:]):
            assert all(a <= b for a, b in zip(lo, hi))


@given(st.integers(2, 200))
def test_lambda_block_sums_are_one(n):
    n = n % 12 + 1
    assert LAMBDA.mass(range(2 ** n, 2 ** (n + 1))) == 1
