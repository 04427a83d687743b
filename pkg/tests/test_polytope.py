from __future__ import annotations

import pytest

from gosset import DomainError
from gosset import polytope as P
from gosset.catalog import enumerate_lines


@pytest.mark.parametrize("r", range(4, 8))
def test_subpolytope_table_small_ranks(r):
    report = P.verify_subpolytope_table(r)
    assert report.passed, report.failures()


def test_table_csv_schema():
    text = P.verify_subpolytope_table(5).to_csv().splitlines()
    assert text[0] == "r,polytope,expected,computed,pass"
    assert text[1] == "5,beta4,10,10,true"


def test_table_rejects_rank_3():
    with pytest.raises(DomainError):
        P.verify_subpolytope_table(3)


@pytest.mark.parametrize("r,v,edges", [(8, 0, 6720), (8, 1, 15120), (8, 2, 6720), (8, 3, 120), (7, 0, 756), (6, 0, 216)])
def test_degree_graph_edges(r, v, edges):
    g = P.line_graph(r, v)
    assert g.is_symmetric()
    assert g.edge_count == edges
    assert len(set(g.degrees())) == 1


def test_bad_edge_degree():
    with pytest.raises(DomainError):
        P.build_degree_graph(enumerate_lines(8), 4)


@pytest.mark.parametrize("r,m", [(6, 2), (7, 3), (8, 2)])
def test_vertex_transitivity(r, m):
    counts = P.per_vertex_counts(P.line_graph(r, 0), m)
    assert len(set(counts)) == 1
    assert sum(counts) == (m + 1) * P.count_simplexes(P.line_graph(r, 0), m)


def test_no_nine_clique_in_degree1_graph():
    g = P.line_graph(8, 1)
    assert P.count_simplexes(g, 7) > 0
    assert P.count_simplexes(g, 8) == 0


def test_iter_simplexes_is_canonical():
    g = P.line_graph(6, 0)
    out = list(P.iter_simplexes(g, 2))
    assert len(out) == 720 and out == sorted(out) and all(list(s) == sorted(s) for s in out)


@pytest.mark.parametrize("r", (5, 6, 7))
def test_every_ridge_lies_in_two_facets(r):
    hist = P.facet_incidence(r)
    assert all(a + b == 2 for a, b in hist)
    assert sum(hist.values()) == P.SUBPOLYTOPE_TABLE[r][r - 1]


def test_crosspolytopes_and_edge_lengths():
    L = enumerate_lines(8)
    cps = list(P.enumerate_crosspolytopes(8))
    assert len(cps) == 2160 and all(len(c.vertices) == 14 for c in cps[:100])
    assert {P.edge_length_squared(L[0], L[j]) for j in range(1, 240)} == {2, 4, 6, 8}
