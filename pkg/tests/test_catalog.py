from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gosset import DomainError, InvariantError, canonical, pairing
from gosset import catalog as cat
from gosset import cliques
from gosset.picard import exceptional, hyperplane, make, reflect, simple_roots
from gosset.verify import CATALOG_COUNTS


@pytest.mark.parametrize("kind", sorted(CATALOG_COUNTS))
@pytest.mark.parametrize("r", range(3, 9))
def test_catalog_counts_and_definitions(kind, r):
    C = cat.enumerate_kind(kind, r)
    assert len(C) == CATALOG_COUNTS[kind][r]
    k = cat.KIND_NAMES[kind]
    assert all(D.square == k.square and pairing(D, canonical(r)) == k.k_degree for D in C)
    assert list(C.classes) == sorted(set(C.classes))


@pytest.mark.parametrize("kind", sorted(CATALOG_COUNTS))
@pytest.mark.parametrize("r", range(3, 8))
def test_orbit_matches_coefficient_scan(kind, r):
    k = cat.KIND_NAMES[kind]
    assert sorted(cat.scan_classes(r, k.square, k.k_degree)) == list(cat.enumerate_kind(kind, r).classes)


def test_r8_scan_oracle_for_lines_and_exceptional_systems():
    assert sorted(cat.scan_classes(8, -1, -1)) == list(cat.enumerate_lines(8).classes)
    assert sorted(cat.scan_classes(8, 1, -3)) == list(cat.enumerate_exceptional_systems(8).classes)


@pytest.mark.parametrize("kind", sorted(CATALOG_COUNTS))
@pytest.mark.parametrize("r", range(3, 9))
def test_weyl_closure(kind, r):
    C = cat.enumerate_kind(kind, r)
    for d in simple_roots(r):
        assert {reflect(d, D) for D in C} == set(C.classes)


def test_unknown_kind():
    with pytest.raises(DomainError):
        cat.enumerate_kind("planes", 6)


def test_neighborhood_profile_and_bertini_symmetry():
    L = cat.enumerate_lines(8)
    B = [L.index_of(cat.bertini(l)) for l in L]
    for i in range(240):
        n = [cat.neighborhood(L, i, k) for k in range(4)]
        assert [cliques.popcount(x) for x in n] == [56, 126, 56, 1]
        assert sum(1 << B[j] for j in cliques.bits(n[0])) == n[2]
        assert sum(1 << B[j] for j in cliques.bits(n[1])) == n[1]


def test_transforms_are_involutions():
    for l in cat.enumerate_lines(7):
        g = cat.gieser(l)
        assert g in cat.enumerate_lines(7) and cat.gieser(g) == l and pairing(l, g) == 2
    for l in cat.enumerate_lines(8):
        b = cat.bertini(l)
        assert cat.bertini(b) == l and pairing(l, b) == 3
    with pytest.raises(DomainError):
        cat.gieser(exceptional(8, 1))


def test_gieser_at():
    L = cat.enumerate_lines(8)
    l = L[0]
    for j in cliques.bits(L.adjacency(0)[0]):
        img = cat.gieser_at(l, L[j])
        assert img in L and pairing(img, l) == 0
        assert cat.gieser_at(l, img) == L[j]
    with pytest.raises(DomainError):
        cat.gieser_at(l, l)


def test_theorem_k8():
    assert cliques.count_cliques(cat.enumerate_lines(8).adjacency(2), 2) == 6720
    assert cat.theorem_k8_failures() == []


def test_classify_exceptional_system_examples():
    h = hyperplane(8)
    tag = cat.classify_exceptional_system(h)
    assert isinstance(tag, cat.SkewOrbit)
    assert tag.skew8 == sum((exceptional(8, i) for i in range(2, 9)), exceptional(8, 1))
    d = make(8, 0, e7=1, e8=-1)
    tag = cat.classify_exceptional_system(-3 * canonical(8) + 2 * d)
    assert isinstance(tag, cat.RootOrbit) and tag.root == d


def test_exceptional_systems_split_240_17280():
    tags = [cat.classify_exceptional_system(D) for D in cat.enumerate_exceptional_systems(8)]
    assert sum(isinstance(t, cat.RootOrbit) for t in tags) == 240
    assert sum(isinstance(t, cat.SkewOrbit) for t in tags) == 17280


@pytest.mark.parametrize("a,count", [(1, 240), (2, 6720), (3, 60480), (7, 207360), (8, 17280)])
def test_skew_lines_witness_unique(a, count):
    sk = cat.skew_a_lines(8, a)
    assert len(sk) == count and sk.witness_unique


@pytest.mark.parametrize("r", range(3, 8))
def test_skew_lines_small_ranks_match_table(r):
    from gosset.polytope import SUBPOLYTOPE_TABLE
    row = SUBPOLYTOPE_TABLE[r]
    for a in range(1, len(row) - 1):
        assert len(cat.skew_a_lines(r, a)) == row[a]


def test_split_skew_recovers_witness():
    L = cat.enumerate_lines(8)
    sk = cat.skew_a_lines(8, 3)
    for total, witness in sk.entries[::5000]:
        assert cat.split_skew(total) == witness
    for total, witness in cat.skew_a_lines(8, 2).entries[::500]:
        assert cat.split_skew2(total) == witness
    with pytest.raises(InvariantError):
        cat.split_skew2(L[0] + L[0])


@pytest.mark.parametrize("r", range(4, 9))
def test_blow_down_maps_vertex_figure_onto_smaller_lines(r):
    L = cat.enumerate_lines(r)
    Lm = set(cat.enumerate_lines(r - 1).classes)
    for i in range(0, len(L), max(1, len(L) // 30)):
        bd = cat.blow_down_basis(L[i])
        assert bd.apply(L[i]) == exceptional(r, r)
        image = [bd.restrict(L[j]) for j in cliques.bits(L.adjacency(0)[i])]
        assert len(set(image)) == len(image) and set(image) == Lm
        js = list(cliques.bits(L.adjacency(0)[i]))[:6]
        for a in js:
            for b in js:
                assert pairing(bd.restrict(L[a]), bd.restrict(L[b])) == pairing(L[a], L[b])


def test_ruling_vertices():
    f = make(6, 1, e1=-1)
    L = cat.enumerate_lines(6)
    pairs = cat.ruling_vertices(f)
    assert len(pairs) == 5
    e2, rest = exceptional(6, 2), make(6, 1, e1=-1, e2=-1)
    assert tuple(sorted((L.index_of(e2), L.index_of(rest)))) in pairs
    for r, n in ((7, 6), (8, 7)):
        for g in cat.enumerate_rulings(r).classes[:50]:
            ps = cat.ruling_vertices(g)
            assert len(ps) == n
            Lr = cat.enumerate_lines(r)
            assert all(pairing(Lr[a], Lr[b]) == 1 and Lr[a] + Lr[b] == g for a, b in ps)


def test_catalog_cache_round_trip(tmp_path):
    C = cat.enumerate_rulings(7)
    p = tmp_path / "rulings.jsonl"
    cat.write_catalog(p, C)
    header = json.loads(p.read_text().splitlines()[0])
    assert header == {"count": 126, "kind": "Ruling", "r": 7}
    assert cat.load_catalog(p).classes == C.classes
    lines = p.read_text().splitlines()
    p.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(InvariantError):
        cat.load_catalog(p)
    bad = json.loads(lines[1])
    bad["coeffs"][0] += 1
    p.write_text("\n".join([lines[0], json.dumps(bad)] + lines[2:]) + "\n")
    with pytest.raises((InvariantError, DomainError)):
        cat.load_catalog(p)


@settings(max_examples=60)
@given(st.integers(0, 239), st.integers(0, 239))
def test_gram_matches_pairing(i, j):
    L = cat.enumerate_lines(8)
    assert int(L.gram[i, j]) == pairing(L[i], L[j])
