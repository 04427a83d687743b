from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from gosset import cliques


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 14))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    adj = [0] * n
    for i, j in edges:
        if i != j:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def brute_cliques(adj, size):
    return [c for c in itertools.combinations(range(len(adj)), size)
            if all(adj[i] >> j & 1 for i, j in itertools.combinations(c, 2))]


@settings(max_examples=150)
@given(graphs(), st.integers(1, 5))
def test_cliques_match_brute_force(adj, size):
    expected = brute_cliques(adj, size)
    assert list(cliques.iter_cliques(adj, size)) == expected
    assert cliques.count_cliques(adj, size) == len(expected)


@settings(max_examples=100)
@given(graphs(), st.integers(1, 4))
def test_clique_sums(adj, size):
    weights = [(i, -i, 2 * i - 3) for i in range(len(adj))]
    packed = [cliques.pack(w) for w in weights]
    got = {cliques.unpack(x, 3) for x in cliques.clique_sums(adj, size, packed)}
    want = {tuple(map(sum, zip(*(weights[i] for i in c)))) for c in brute_cliques(adj, size)}
    assert got == want


@given(st.lists(st.integers(-100, 100), min_size=1, max_size=10))
def test_pack_round_trip(vec):
    assert cliques.unpack(cliques.pack(vec), len(vec)) == tuple(vec)


def test_parallel_matches_serial():
    # a 5-cycle plus chords; small but exercises the process pool
    adj = [0] * 12
    for i in range(12):
        for j in (i + 1, i + 3, i + 5):
            j %= 12
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    for size in (2, 3, 4):
        assert cliques.count_cliques(adj, size, threads=2) == cliques.count_cliques(adj, size, threads=1)
    packed = [cliques.pack((i, 1)) for i in range(12)]
    assert cliques.clique_sums(adj, 3, packed, threads=2) == cliques.clique_sums(adj, 3, packed, threads=1)


def test_bits_and_popcount():
    assert list(cliques.bits(0b101001)) == [0, 3, 5]
    assert cliques.popcount(0b101001) == 3
