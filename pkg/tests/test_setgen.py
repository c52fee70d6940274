import pytest
from fractions import Fraction
from hypothesis import given
from hypothesis import strategies as st

from combinach.setgen import (
    AllIndices, BlockPrefix, BlockRule, BlocksUnion, Comb, ExplicitFinite, IntersectionOf,
    Minus, TailFrom, TreeBranch, UnionOf, block_of, generator_from_json, generator_to_json,
    is_tree_prefix, realize, tree_code, tree_decode,
)
from combinach.submeasures import LAMBDA


def test_block_prefix_one():
    assert realize(BlockPrefix(BlockRule("one")), 9) == (1, 2, 4, 8)


def test_block_prefix_halved_by_log():
    assert realize(BlockPrefix(BlockRule("halvedByLog")), 16) == (1, 2, 3, 4, 5, 8, 9, 10, 11)


def test_tree_branch_of_zeros():
    assert realize(TreeBranch("0"), 9) == (1, 2, 4, 8)


def test_farah_rule_counts():
    rule = BlockRule("farah")
    assert [rule.count(n) for n in range(1, 6)] == [2, 2, 2, 4, 6]


def test_combinators():
    evens = BlocksUnion(ExplicitFinite((1, 3)))
    assert realize(evens, 20) == (2, 3, 8, 9, 10, 11, 12, 13, 14, 15)
    u = UnionOf((ExplicitFinite((1, 5)), TailFrom(10)))
    assert realize(u, 13) == (1, 5, 10, 11, 12)
    i = IntersectionOf((AllIndices(), ExplicitFinite((3, 30))))
    assert realize(i, 31) == (3, 30)
    m = Minus(TailFrom(1), BlockPrefix(BlockRule("one")))
    assert realize(m, 9) == (3, 5, 6, 7)


def test_comb_is_an_antichain():
    codes = realize(Comb(), 1 << 12)
    assert len(codes) == 11
    assert not any(is_tree_prefix(a, b) for a in codes for b in codes if a != b)


def test_tree_codes():
    assert tree_code("") == 1 and tree_code("0") == 2 and tree_code("1") == 3
    assert tree_code("01") == 5
    assert tree_decode(11) == "011"
    with pytest.raises(ValueError):
        tree_decode(0)
    with pytest.raises(ValueError):
        tree_code("012")


def test_prefix_relation():
    assert is_tree_prefix(tree_code("0"), tree_code("011"))
    assert not is_tree_prefix(tree_code("1"), tree_code("011"))
    assert is_tree_prefix(5, 5)


def test_round_trip_codes():
    for n in range(1, (1 << 12) + 1):
        assert tree_code(tree_decode(n)) == n


def test_lambda_matches_string_length():
    for n in range(1, (1 << 10) + 1):
        assert LAMBDA(n) == Fraction(1, 2 ** len(tree_decode(n)))


def test_children_are_extensions():
    for n in range(1, 200):
        s = tree_decode(n)
        assert tree_decode(2 * n) == s + "0" and tree_decode(2 * n + 1) == s + "1"


CATALOG = [
    AllIndices(), BlockPrefix(BlockRule("one")), BlockPrefix(BlockRule("farah")),
    BlockPrefix(BlockRule("halvedByLog")), BlockPrefix(BlockRule("scaled", scale=Fraction(1, 3))),
    BlockPrefix(BlockRule("custom", table=((3, 5), (4, 0)), default="one")),
    BlocksUnion(TailFrom(2)), TreeBranch("01"), TreeBranch("110"), Comb(), TailFrom(7),
    ExplicitFinite((2, 9, 100)),
    Minus(AllIndices(), BlockPrefix(BlockRule("halvedByLog"))),
]


@pytest.mark.parametrize("g", CATALOG, ids=lambda g: type(g).__name__)
def test_window_monotone(g):
    windows = [8 * 2 ** i for i in range(6)]
    for N, M in zip(windows, windows[1:]):
        small, big = realize(g, N), realize(g, M)
        assert small == tuple(k for k in big if k < N)
        assert all(1 <= k < N for k in small)


@pytest.mark.parametrize("g", CATALOG, ids=lambda g: type(g).__name__)
def test_json_round_trip(g):
    assert generator_from_json(generator_to_json(g)) == g


def test_json_rejects_unknown_fields():
    with pytest.raises(ValueError):
        generator_from_json({"kind": "all", "extra": 1})
    with pytest.raises(ValueError):
        generator_from_json({"kind": "nope"})


@given(st.integers(1, 1 << 16))
def test_block_of_brackets(k):
    n = block_of(k)
    assert 2 ** n <= k < 2 ** (n + 1)
