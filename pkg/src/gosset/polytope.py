"""The Gosset polytope (r-4)_21 as graphs on the line catalog, and counts of
its regular subpolytopes.

Vertices are lines. Two lines spanning an edge of the polytope are disjoint
(pairing 0); more generally a "v-degree edge" joins lines with pairing v.
Regular simplexes are cliques of the 0-graph and the crosspolytope facets
come from rulings.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from . import cliques
from .catalog import ClassCatalog, enumerate_lines, enumerate_rulings, ruling_vertices
from .errors import DomainError
from .picard import DivisorClass, check_rank, pairing


@dataclass(frozen=True, eq=False)
class DegreeGraph:
    r: int
    degree: int
    adjacency: tuple[int, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adjacency]

    def is_symmetric(self) -> bool:
        for i, a in enumerate(self.adjacency):
            if a >> i & 1:
                return False
            for j in cliques.bits(a):
                if not self.adjacency[j] >> i & 1:
                    return False
        return True


@lru_cache(maxsize=None)
def build_degree_graph(lines: ClassCatalog, v: int) -> DegreeGraph:
    """Edge between lines i, j exactly when their pairing is v."""
    if v not in (0, 1, 2, 3):
        raise DomainError(f"edge degree must be in 0..3, got {v}")
    return DegreeGraph(lines.r, v, lines.adjacency(v))


def line_graph(r: int, v: int = 0) -> DegreeGraph:
    return build_degree_graph(enumerate_lines(check_rank(r)), v)


def count_simplexes(graph: DegreeGraph, m: int, threads: int = 1) -> int:
    """Number of m-simplexes, i.e. (m+1)-cliques."""
    if m < 0:
        raise DomainError(f"simplex dimension must be non-negative, got {m}")
    return cliques.count_cliques(graph.adjacency, m + 1, threads)


def iter_simplexes(graph: DegreeGraph, m: int) -> Iterator[tuple[int, ...]]:
    """Each (m+1)-clique once, as an increasing index tuple, lexicographically."""
    if m < 0:
        raise DomainError(f"simplex dimension must be non-negative, got {m}")
    return cliques.iter_cliques(graph.adjacency, m + 1)


def per_vertex_counts(graph: DegreeGraph, m: int) -> list[int]:
    """For each vertex, the number of m-simplexes containing it."""
    adj = graph.adjacency
    out = []
    for v, nbrs in enumerate(adj):
        sub = [a & nbrs if (nbrs >> i) & 1 else 0 for i, a in enumerate(adj)]
        out.append(cliques.count_cliques(sub, m) if m > 0 else 1)
    return out


@dataclass(frozen=True)
class Crosspolytope:
    ruling: DivisorClass
    pairs: tuple[tuple[int, int], ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(i for p in self.pairs for i in p))


def enumerate_crosspolytopes(r: int) -> Iterator[Crosspolytope]:
    for f in enumerate_rulings(check_rank(r)):
        yield Crosspolytope(f, ruling_vertices(f))


def edge_length_squared(l1: DivisorClass, l2: DivisorClass) -> int:
    """-(l1 - l2)^2, which is 2 + 2*(l1.l2) for lines."""
    d = l1 - l2
    return -pairing(d, d)


# -- the subpolytope table ----------------------------------------------------

# rows: (beta_{r-1}, vertices, alpha_1, ..., alpha_{r-1}); -1_21 (r=3) included
SUBPOLYTOPE_TABLE: dict[int, tuple[int, ...]] = {
    3: (3, 6, 9, 2),
    4: (5, 10, 30, 30, 5),
    5: (10, 16, 80, 160, 120, 16),
    6: (27, 27, 216, 720, 1080, 648, 72),
    7: (126, 56, 756, 4032, 10080, 12096, 6048, 576),
    8: (2160, 240, 6720, 60480, 241920, 483840, 483840, 207360, 17280),
}


@dataclass(frozen=True)
class ReportRow:
    r: int
    polytope: str
    expected: int
    computed: int

    @property
    def passed(self) -> bool:
        return self.expected == self.computed


@dataclass
class SubpolytopeReport:
    rows: list[ReportRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def failures(self) -> list[ReportRow]:
        return [row for row in self.rows if not row.passed]

    def counts(self) -> dict[str, int]:
        return {row.polytope: row.computed for row in self.rows}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "polytope", "expected", "computed", "pass"])
        for row in self.rows:
            w.writerow([row.r, row.polytope, row.expected, row.computed, str(row.passed).lower()])
        return buf.getvalue()


def verify_subpolytope_table(r: int, threads: int = 1) -> SubpolytopeReport:
    """Recount every listed cell of the table for rank r."""
    check_rank(r)
    if r < 4:
        raise DomainError("the table check covers 0_21 through 4_21 (r = 4..8)")
    expected = SUBPOLYTOPE_TABLE[r]
    graph = line_graph(r, 0)
    report = SubpolytopeReport()
    n_cross = sum(1 for _ in enumerate_crosspolytopes(r))
    report.rows.append(ReportRow(r, f"beta{r - 1}", expected[0], n_cross))
    report.rows.append(ReportRow(r, "vertex", expected[1], len(graph)))
    for m in range(1, len(expected) - 1):
        report.rows.append(ReportRow(r, f"alpha{m}", expected[m + 1], count_simplexes(graph, m, threads)))
    return report


def facet_incidence(r: int) -> dict[tuple[int, int], int]:
    """For each (r-2)-simplex, how many (r-1)-simplexes and crosspolytopes contain it.

    Returns a histogram {(simplex facets, crosspolytope facets): count}.
    """
    graph = line_graph(r, 0)
    ridges = list(iter_simplexes(graph, r - 2))
    masks = {sum(1 << i for i in s): s for s in ridges}
    in_simplex = dict.fromkeys(masks, 0)
    in_cross = dict.fromkeys(masks, 0)
    for facet in iter_simplexes(graph, r - 1):
        for drop in facet:
            key = sum(1 << i for i in facet if i != drop)
            in_simplex[key] += 1
    for cp in enumerate_crosspolytopes(r):
        # an (r-2)-simplex inside the crosspolytope picks one vertex per pair
        for choice in range(1 << len(cp.pairs)):
            key = sum(1 << p[(choice >> k) & 1] for k, p in enumerate(cp.pairs))
            in_cross[key] += 1
    hist: dict[tuple[int, int], int] = {}
    for key in masks:
        pair = (in_simplex[key], in_cross[key])
        hist[pair] = hist.get(pair, 0) + 1
    return hist
