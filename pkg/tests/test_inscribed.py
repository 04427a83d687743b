from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from gosset import DomainError, canonical, pairing
from gosset import inscribed as I
from gosset import cliques
from gosset.catalog import bertini, enumerate_lines, enumerate_rulings, gieser_at, skew_a_lines, split_skew
from gosset.picard import exceptional, make, sum_classes

L8 = enumerate_lines(8)
K = canonical(8)


def simplex(*classes):
    return I.make_simplex(8, [L8.index_of(c) for c in classes], 1)


UNCORNERED = [make(8, 1, e1=-1, e2=-1), make(8, 1, e3=-1, e4=-1), make(8, 1, e5=-1, e6=-1), make(8, 1, e7=-1, e8=-1)]
CORNERED = [
    exceptional(8, 1),
    make(8, 1, e1=-1, e2=-1),
    make(8, 2, e1=-1, e3=-1, e4=-1, e5=-1, e6=-1),
    make(8, 3, e1=-1, e2=-1, e3=-1, e4=-1, e5=-1, e6=-1, e7=-2),
]


@pytest.mark.parametrize("r,n,b,ok", [(8, 7, 1, True), (8, 8, 1, False), (6, 2, 1, True), (6, 3, 1, False),
                                      (7, 3, 1, True), (5, 2, 1, False), (8, 1, 3, True), (7, 1, 3, False),
                                      (8, 2, 2, True), (8, 3, 2, False)])
def test_feasibility(r, n, b, ok):
    assert I.is_feasible(r, n, b) == ok
    if not ok:
        with pytest.raises(DomainError):
            list(I.enumerate_inscribed(r, n, b))


def test_center_grading_on_every_small_instance():
    for n in (1, 2, 3):
        for s in itertools.islice(I.enumerate_inscribed(8, n, 1), 0, None, 97):
            m = n + 1
            assert pairing(s.center, K) == -m and s.center.square == m * m - 2 * m


def test_shifted_lines_are_orthogonal_roots():
    s = I.sample_simplexes(8, 7, 1, 1)[0]
    shifted = [l + K for l in s.lines]
    assert all(pairing(x, x) == -2 and pairing(x, K) == 0 for x in shifted)
    assert all(pairing(a, b) == 0 for a, b in itertools.combinations(shifted, 2))


@pytest.mark.parametrize("r,n,b,expected", [(8, 1, 3, 120), (7, 1, 2, 28), (8, 2, 2, 2240)])
def test_simplex_counts(r, n, b, expected):
    assert I.count_inscribed(r, n, b) == expected == len(list(I.enumerate_inscribed(r, n, b)))


@pytest.mark.parametrize("key,expected", sorted(I.CENTER_TABLE_LOW.items()))
def test_low_rank_center_table(key, expected):
    r, n = key
    assert len(I.centers(r, n, 1)) == expected


@pytest.mark.parametrize("key,expected", sorted(I.CENTER_TABLE_HIGHER.items()))
def test_higher_degree_center_table(key, expected):
    assert len(I.centers(*key)) == expected


@pytest.mark.parametrize("n,expected", [(1, 2160), (2, 6720), (3, 17520), (4, 30240), (5, 60480), (7, 2160)])
def test_r8_center_counts(n, expected):
    assert len(I.centers(8, n, 1)) == expected


def test_a6_centers_inject_into_skew_seven_lines():
    # the published table lists 207360 here; exhaustive enumeration finds fewer
    cs = I.centers(8, 6, 1)
    images = {I.a6_skew7(D) for D in cs}
    assert len(images) == len(cs) == 69120
    # the images are exactly the skew 7-lines lying in no skew 8-line: 207360 - 8 * 17280
    adj0 = L8.adjacency(0)
    for x in sorted(images)[::97]:
        common = (1 << 240) - 1
        for v in split_skew(x):
            common &= adj0[v]
        assert common == 0
    assert 207360 - 8 * 17280 == 69120


def test_uncornered_example():
    s = simplex(*UNCORNERED)
    tag = I.classify(s)
    assert isinstance(tag, I.Uncornered)
    assert tag.companion == sum_classes((exceptional(8, i) for i in range(1, 9)), 8)
    assert I.root_of_center(s.center) is None


def test_cornered_example():
    s = simplex(*CORNERED)
    tag = I.classify(s)
    d = K + exceptional(8, 8)
    assert isinstance(tag, I.Cornered) and tag.root == d
    assert s.center + 4 * K == 2 * d
    line = L8[I.cornering_line(s)]
    assert line == K + s.center.divide(2)
    assert all(pairing(line, l) == 0 for l in s.lines)


def test_center_half_integral_iff_cornered():
    for s in I.sample_simplexes(8, 3, 1, 300, seed=1):
        assert s.center.divisible_by(2) == isinstance(I.classify(s), I.Cornered)


def test_cornering_line_formula_on_1000_cornered():
    for s in I.sample_cornered_A3(1000, seed=42):
        l = I.cornering_line(s)
        assert L8[l] == K + s.center.divide(2)
        assert I.cornering_mask(8, s.vertices) == 1 << l


def test_swap_breaks_cornering():
    adj1 = L8.adjacency(1)
    done = 0
    for s in I.sample_cornered_A3(100, seed=3):
        common = (1 << 240) - 1
        for v in s.vertices:
            common &= adj1[v]
        for l5 in itertools.islice(cliques.bits(common), 2):
            tags = I.swap_breaks_cornering(s.vertices, l5)
            assert all(isinstance(t, I.Uncornered) for t in tags)
            assert I.would_be_cornering_pairing(s.vertices, l5, 0) == Fraction(-1, 2)
            done += 1
    assert done > 50


def test_every_a4_and_higher_is_uncornered():
    for n in (4, 5, 6, 7):
        for s in I.sample_simplexes(8, n, 1, 30, seed=n):
            assert isinstance(I.classify(s), I.Uncornered)


def test_skew_edges_round_trip():
    s = simplex(*UNCORNERED)
    se = I.skew_edges_of_uncornered(s)
    assert se.center == 3 * s.center + 4 * K
    assert I.uncornered_from_skew_edges(se.seven_simplex, se.edges) == s
    assert (se.center - 4 * K).divisible_by(3)
    fams = I.skew_edge_families(se.seven_simplex)
    assert len(fams) == 105 == len(I.perfect_matchings(range(8)))
    assert len({f.vertices for f in fams}) == 105
    with pytest.raises(DomainError):
        I.skew_edges_of_uncornered(simplex(*CORNERED))


def test_skew_edges_round_trip_sampled():
    n = 0
    for s in I.sample_simplexes(8, 3, 1, 400, seed=42):
        if isinstance(I.classify(s), I.Uncornered):
            se = I.skew_edges_of_uncornered(s)
            assert I.uncornered_from_skew_edges(se.seven_simplex, se.edges) == s
            n += 1
    assert n >= 200


def test_a4_decomposition_examples():
    for s in I.sample_simplexes(8, 4, 1, 200, seed=42):
        dec = I.check_A4(s)
        assert dec.line in s.vertices
        assert pairing(L8[dec.corner_line], L8[dec.line]) == 1
    with pytest.raises(DomainError):
        I.decompose_A4_center(simplex(*CORNERED).center)


def test_a4_extension_and_gieser_dual():
    s = simplex(*UNCORNERED)
    ext = I.extend_uncornered_A3_to_A4(s)
    assert bertini(L8[ext.added]) == L8[ext.alternative]
    assert ext.cornered_face in I.cornered_faces(8, ext.simplex.vertices)
    la, lb = I.face_skew_pair(8, s.vertices[:3])
    assert pairing(gieser_at(L8[la], L8[lb]), L8[s.vertices[3]]) == 1
    c = simplex(*CORNERED)
    dual = I.gieser_dual(c)
    assert I.gieser_dual(dual) == c
    l = L8[I.cornering_line(c)]
    assert {L8[v] + gieser_at(l, L8[v]) for v in c.vertices} == {l - K}
    assert {L8.index_of(gieser_at(l, L8[v])) for v in c.vertices} == set(dual.vertices)


def test_a5_centers_biject_with_skew_three_lines():
    shifted = {D + 3 * K for D in I.centers(8, 5, 1)}
    assert shifted == set(skew_a_lines(8, 3).sums)


def test_a5_structure_sampled():
    for s in I.sample_simplexes(8, 5, 1, 200, seed=42):
        st = I.a5_structure(s)
        assert len(st.faces) == 3
        assert sum_classes((L8[i] for i in st.corner_lines), 8) == s.center + 3 * K


def test_fano_structure_sampled():
    for s in I.sample_simplexes(8, 6, 1, 100, seed=42):
        f = I.fano_structure(s)
        assert len(f.blocks) == 7
        assert sum_classes((L8[i] for i in f.corner_lines), 8) == 2 * s.center + 7 * K
        ok, bad = I.is_steiner_237(f.lines, f.blocks)
        assert ok, bad
        ext = I.extend_fano_to_A7(s, f.blocks[0])
        assert ext.line not in s.vertices and ext.simplex.n == 7
        assert isinstance(I.classify(I.make_simplex(8, ext.uncornered_face, 1)), I.Uncornered)


def test_fano_labels_match_canonical_blocks():
    one_based = [tuple(k + 1 for k in b) for b in I.FANO_BLOCKS]
    assert one_based == [(5, 6, 7), (3, 4, 7), (1, 2, 7), (2, 4, 6), (1, 3, 6), (2, 3, 5), (1, 4, 5)]
    for face, block in zip(I.FANO_FACES, I.FANO_BLOCKS):
        assert set(face) | set(block) == set(range(7))


def test_a7_centers_are_rulings():
    cs = I.centers(8, 7, 1)
    fs = {I.decompose_A7_center(D)[0] for D in cs}
    assert fs == set(enumerate_rulings(8).classes)


def test_a7_structure_sampled():
    for s in I.sample_simplexes(8, 7, 1, 200, seed=42):
        st = I.a7_structure(s)
        assert len(st.face_pairs) == 7 and len(st.line_pairs) == 7


@pytest.mark.parametrize("key", sorted(I.CENTER_TABLE_HIGHER))
def test_higher_degree_reductions(key):
    rep = I.higher_degree_reductions(*key)
    assert rep.passed, rep.checks


def test_sampler_is_deterministic():
    a = I.sample_simplexes(8, 5, 1, 20, seed=7)
    b = I.sample_simplexes(8, 5, 1, 20, seed=7)
    assert a == b and a != I.sample_simplexes(8, 5, 1, 20, seed=8)
