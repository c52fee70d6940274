import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from combinach.families import (
    FARAH, AllFinite, Antichains, BlockCappedJoined, BlockCappedLocal, CapRule,
    NotPrecompact, PartitionBlocks, Precompact, Restrict, Singletons, chain_witness_check,
    delta_system_extract, enumerate_members, explicit, family_contains, family_from_json,
    family_to_json, heredity_violation, is_delta_system, precompact_status, schreier,
    spreading_check, symbolic_rank,
)
from combinach.ordinal import ord_parse
from combinach.setgen import AllIndices, BlockPrefix, BlockRule, realize

from strategies import finite_sets


def test_membership_examples():
    assert family_contains(Antichains(), (2, 3))
    assert not family_contains(Antichains(), (1, 2))
    assert family_contains(FARAH, (8, 9, 16))
    assert not family_contains(FARAH, (8, 9, 10))  # cap at block 3 is 2


@pytest.mark.parametrize("f,N,expected", [
    (Singletons(), 4, [(), (1,), (2,), (3,)]),
    (schreier(1), 4, [(), (1,), (2,), (3,), (2, 3)]),
    (PartitionBlocks(), 5, [(), (1,), (2,), (3,), (4,), (2, 3)]),
])
def test_enumerate_members_examples(f, N, expected):
    got = enumerate_members(f, N)
    assert got.members == expected and not got.truncated


def test_enumerate_truncates():
    got = enumerate_members(AllFinite(), 6, max_count=5)
    assert got.truncated and len(got.members) == 5


def test_delta_system_examples():
    found = delta_system_extract([(1, 2), (1, 3), (1, 4)], 3)
    assert found.root == (1,)
    found = delta_system_extract([(1,), (2,), (3,)], 3)
    assert found.root == ()


def test_delta_system_random_sets_verified_independently():
    rng = random.Random(7)
    sets = [tuple(sorted(rng.sample(range(1, 10), rng.randint(1, 3)))) for _ in range(20)]
    found = delta_system_extract(sets, 3)
    assert found is not None
    picked = [set(sets[i]) for i in found.indices]
    for a, b in itertools.combinations(picked, 2):
        assert a & b == set(found.root)
    assert is_delta_system(found.sets, found.root)


def test_delta_system_not_found():
    assert delta_system_extract([(1, 2), (2, 3), (1, 3)], 3) is None


def test_chain_witness_examples():
    assert chain_witness_check(AllFinite(), AllIndices(), 10)
    assert not chain_witness_check(schreier(1), AllIndices(), 10)
    assert chain_witness_check(FARAH, BlockPrefix(BlockRule("one")), 64)


def test_precompact_examples():
    assert isinstance(precompact_status(schreier("w")), Precompact)
    assert isinstance(precompact_status(AllFinite()), NotPrecompact)
    status = precompact_status(FARAH)
    assert isinstance(status, NotPrecompact)
    assert status.witness == BlockPrefix(BlockRule("one"))


@pytest.mark.parametrize("f", [AllFinite(), FARAH, BlockCappedJoined(CapRule("one")), Antichains()])
def test_non_precompact_witnesses_are_chains(f):
    w = precompact_status(f).witness
    for N in (16, 64, 256):
        assert chain_witness_check(f, w, N)
    assert len(realize(w, 256)) >= 7


@pytest.mark.parametrize("f,rank", [
    (schreier(1), "w+1"), (schreier(2), "w^2+1"), (schreier("w"), "w^w+1"),
    (explicit([[1, 2]]), "1"), (Singletons(), "2"), (PartitionBlocks(), "2"),
    (BlockCappedLocal(CapRule("index")), "2"),
])
def test_symbolic_rank(f, rank):
    assert symbolic_rank(f) == ord_parse(rank)


@pytest.mark.parametrize("f", [AllFinite(), FARAH, Antichains()])
def test_no_rank_without_compactness(f):
    assert symbolic_rank(f) is None


def test_spreading_examples():
    assert spreading_check(schreier(2), 12) is None
    assert spreading_check(PartitionBlocks(), 6) == ((2, 3), (2, 4))
    assert spreading_check(explicit([[1, 2]]), 5) == ((1, 2), (1, 3))


def test_singletons_and_all_finite_spread():
    assert spreading_check(Singletons(), 10) is None
    assert spreading_check(AllFinite(), 8) is None


@pytest.mark.parametrize("f", [
    Singletons(), PartitionBlocks(), FARAH, BlockCappedLocal(CapRule("index")), Antichains(),
    explicit([[1, 4, 6], [2, 3]]), Restrict(schreier(1), (3, 4, 5, 9)),
])
def test_catalog_families_are_hereditary(f):
    assert heredity_violation(f, 11) is None


@pytest.mark.parametrize("f", [
    Singletons(), AllFinite(), PartitionBlocks(), FARAH, Antichains(), schreier("w*2"),
    explicit([[1, 2, 3], [4, 5]]), Restrict(schreier(2), (1, 3, 5, 7)),
    BlockCappedLocal(CapRule("custom", ((2, 3),), "one")),
])
def test_family_json_round_trip(f):
    assert family_from_json(family_to_json(f)) == f


def test_family_json_rejects_unknown():
    with pytest.raises(ValueError):
        family_from_json({"kind": "schreier", "alpha": "1", "beta": 2})
    with pytest.raises(ValueError):
        family_from_json({"kind": "mystery"})


def _naive_antichain(F):
    from combinach.setgen import tree_decode

    strings = [tree_decode(k) for k in F]
    return not any(a != b and b.startswith(a) for a in strings for b in strings)


@given(finite_sets(1, 64, 6))
def test_antichain_membership_matches_strings(F):
    assert family_contains(Antichains(), F) == _naive_antichain(F)


@given(finite_sets(1, 40, 6), finite_sets(1, 40, 6))
def test_explicit_is_hereditary_closure(A, B):
    f = explicit([A, B])
    for r in range(len(A) + 1):
        for sub in itertools.combinations(A, r):
            assert family_contains(f, sub)
    extra = tuple(sorted(set(A) | {41}))
    assert not family_contains(f, extra)


@given(st.integers(1, 12))
def test_farah_cap(n):
    cap = CapRule("farah")
    assert cap(n) == 2 ** n // n
    assert family_contains(FARAH, tuple(range(2 ** n, 2 ** n + cap(n))))
    if 2 ** n + cap(n) < 2 ** (n + 1):
        assert not family_contains(FARAH, tuple(range(2 ** n, 2 ** n + cap(n) + 1)))
