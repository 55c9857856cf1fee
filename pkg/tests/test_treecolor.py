import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fscoloring import treecolor
from fscoloring.dyadic import low_bit, top_bit
from fscoloring.errors import GuardError
from fscoloring.treecolor import (
    CountingRequest,
    CountingTriRequest,
    MemoRequest,
    RequestFunction,
    TriRequestFunction,
    bridge,
    color_mod,
    color_mod_bfs,
    color_parity,
    default_request,
    extend_request,
    lift_tri,
    popcount_coloring,
    random_request,
    random_tri_request,
    signed_count,
    signed_counts_table,
    tree_edges,
)

POW2 = RequestFunction(lambda n, w: 1 << n, "pow2")


def test_extend_request_examples():
    empty = extend_request()
    assert empty(1, 4) == 3
    patched = extend_request({(1, 4): 2})
    assert patched(1, 4) == 2
    assert patched(1, 8) == 3
    with pytest.raises(ValueError):
        extend_request({(1, 4): 5})


def test_request_function_checks_block():
    bad = RequestFunction(lambda n, w: 5, "bad")
    with pytest.raises(ValueError):
        bad(1, 8)


def test_tree_edges_examples():
    default = default_request()
    tree = tree_edges(2, default)
    assert sorted((a, b) for a, b, _n in tree.edges) == [(4, 5), (4, 7), (6, 7)]
    tree.validate()

    tree2 = tree_edges(2, POW2)
    assert sorted((a, b) for a, b, _n in tree2.edges) == [(4, 5), (4, 6), (6, 7)]


@given(st.integers(min_value=0, max_value=1000))
def test_tree_single_edge_any_request(seed):
    tree = tree_edges(1, random_request(seed))
    assert [(a, b) for a, b, _n in tree.edges] == [(2, 3)]


@given(st.integers(min_value=0, max_value=500), st.integers(min_value=1, max_value=9))
@settings(max_examples=60, deadline=None)
def test_tree_structure_random(seed, s):
    tree = tree_edges(s, random_request(seed))
    assert len(tree.edges) == (1 << s) - 1
    assert tree.problems() == []


def test_tree_guard():
    with pytest.raises(GuardError):
        tree_edges(18, default_request())


def test_bridge_examples():
    assert bridge(4, 1, extend_request({(1, 4): 2})) == (4, 6)
    assert bridge(4, 1, default_request()) == (4, 7)
    assert bridge(8, 2, extend_request({(2, 8): 5})) == (8, 13)
    with pytest.raises(ValueError):
        bridge(4, 2, default_request())


def test_bridge_uniqueness_exhaustive():
    # the only tree edge joining the two halves of any aligned span is the
    # one leaving the span's base; exhaustive over every legal (w, n) by
    # bucketing each edge under the spans whose halves it straddles
    for seed in (0, 1, 2):
        request = random_request(seed)
        for s in range(2, 11):
            crossings = {}
            for a, b, _m in tree_edges(s, request).edges:
                for n in range(1, s + 1):
                    base = a & ~((1 << (n + 1)) - 1)
                    if base <= a < base + (1 << n) <= b < base + (1 << (n + 1)):
                        crossings.setdefault((base, n), []).append((a, b))
            for w in range(1 << s, 1 << (s + 1)):
                for n in range(1, low_bit(w)):
                    assert crossings.get((w, n)) == [(w, w + request(n, w))]


def test_color_examples():
    assert [color_parity(POW2, w) for w in (4, 5, 6, 7)] == [0, 1, 1, 0]
    assert color_mod(POW2, 7, 3) == 2
    for s in range(1, 14):
        assert color_parity(random_request(3), 1 << s) == 0


def test_color_mod_bfs_examples():
    default = default_request()
    assert [color_mod_bfs(default, w, 2) for w in (4, 5, 6, 7)] == [0, 1, 0, 1]
    assert color_mod_bfs(default, 2, 2) == 0
    assert color_mod_bfs(default, 3, 2) == 1


def test_color_rejects_degenerate():
    with pytest.raises(ValueError):
        color_mod(POW2, 1, 2)
    with pytest.raises(ValueError):
        color_mod(POW2, 4, 1)


@given(st.integers(min_value=0, max_value=100), st.integers(min_value=1, max_value=9))
@settings(max_examples=40, deadline=None)
def test_generic_evaluator_matches_bfs(seed, s):
    request = random_request(seed)
    table = signed_counts_table(tree_edges(s, request))
    for w in range(1 << s, 1 << (s + 1)):
        assert signed_count(request, w) == table[w]


@given(st.integers(min_value=0, max_value=100), st.integers(min_value=1, max_value=9))
@settings(max_examples=40, deadline=None)
def test_factored_evaluator_matches_bfs(seed, s):
    tri = random_tri_request(seed)
    lifted = lift_tri(tri)
    plain = RequestFunction(lambda n, w: tri(n, low_bit(w), top_bit(w)), "unfactored")
    table = signed_counts_table(tree_edges(s, plain))
    for w in range(1 << s, 1 << (s + 1)):
        assert signed_count(lifted, w) == table[w]


@given(st.integers(min_value=0, max_value=100), st.integers(min_value=2, max_value=9))
@settings(max_examples=30, deadline=None)
def test_increment_contract_random(seed, s):
    request = MemoRequest(random_request(seed))
    for w in range(1 << s, 1 << (s + 1)):
        for n in range(low_bit(w)):
            # exact step along the request edge, hence mod r for every r
            assert signed_count(request, w + request(n, w)) == signed_count(request, w) + 1


def test_consistency_parity_is_mod_two():
    request = random_request(9)
    for w in range(16, 64):
        assert color_parity(request, w) == color_mod(request, w, 2)


def test_large_exponent_quadratic_budget():
    # block exponent 20 through the factored path, instrumented
    counting = CountingTriRequest(random_tri_request(5))
    lifted = lift_tri(TriRequestFunction(counting, "counted"))
    w = (1 << 20) + 0b1010110011010101  # arbitrary member of the block
    color_mod(lifted, w, 2)
    assert counting.count <= 4 * 20 * 20


def test_memo_request_is_pure():
    memo = MemoRequest(random_request(4))
    first = [signed_count(memo, w) for w in range(32, 64)]
    second = [signed_count(memo, w) for w in range(32, 64)]
    assert first == second


def test_counting_request_counts():
    counting = CountingRequest(default_request())
    color_parity(counting, 12)
    assert counting.count > 0


@pytest.mark.parametrize("w, expected", [(2, 1), (3, 0), (4, 1), (5, 0)])
def test_popcount_documented_values(w, expected):
    assert popcount_coloring(w) == expected


def test_popcount_request_contract_small():
    for w in range(1, 1 << 12):
        for n in range(low_bit(w)):
            assert popcount_coloring(w) != popcount_coloring(w + (1 << n))


def test_lift_tri_examples():
    constant = TriRequestFunction(lambda n, k, s: 1 << n, "pow2 tri")
    lifted = lift_tri(constant)
    assert lifted(3, 16) == 8

    table = {(1, 3, 5): 2}
    tri = TriRequestFunction(lambda n, k, s: table.get((n, k, s), (1 << (n + 1)) - 1), "patched")
    lifted = lift_tri(tri)
    assert lifted(1, 40) == 2  # low_bit(40)=3, top_bit(40)=5

    # factoring property: equal measures, equal requests
    seed_tri = random_tri_request(7)
    lifted = lift_tri(seed_tri)
    w1, w2 = 40, 56  # both have low bit 3 and top bit 5
    for n in range(3):
        assert lifted(n, w1) == lifted(n, w2)
