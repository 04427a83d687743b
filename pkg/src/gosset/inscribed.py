"""Inscribed simplexes A_n^r(b): sets of n+1 lines with constant pairwise
intersection b, their centers (vertex sums), and the cornered/uncornered
structure theory on S_8.

A simplex is *cornered* when some line l is disjoint from every vertex, i.e.
the simplex sits in the vertex figure N_0(l).
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import cliques
from .catalog import (
    bertini,
    blow_down_basis,
    enumerate_lines,
    enumerate_rulings,
    gieser,
    gieser_at,
    ruling_vertices,
    split_skew,
    split_skew2,
)
from .errors import DomainError, InvariantError
from .picard import DivisorClass, canonical, check_rank, is_root, pairing, sum_classes

log = logging.getLogger(__name__)

# smallest rank admitting a degree-1 n-simplex
MIN_RANK_DEGREE1 = {1: 3, 2: 6, 3: 7, 4: 8, 5: 8, 6: 8, 7: 8}
# (b, r, n) triples with b >= 2
HIGHER_DEGREE = {(2, 7, 1), (2, 8, 1), (2, 8, 2), (3, 8, 1)}


def is_feasible(r: int, n: int, b: int) -> bool:
    if b == 1:
        return n in MIN_RANK_DEGREE1 and r >= MIN_RANK_DEGREE1[n]
    return (b, r, n) in HIGHER_DEGREE


def check_feasible(r: int, n: int, b: int) -> None:
    check_rank(r)
    if not is_feasible(r, n, b):
        raise DomainError(
            f"no inscribed {b}-degree {n}-simplex on S_{r}: degree 1 needs r>=6 for n=2, "
            "r>=7 for n=3 and r=8 for 4<=n<=7; degree 2 exists only for (r,n) in "
            "{(7,1),(8,1),(8,2)} and degree 3 only for (8,1)"
        )


# -- the simplex type ---------------------------------------------------------

@dataclass(frozen=True)
class InscribedSimplex:
    r: int
    degree: int
    vertices: tuple[int, ...]
    center: DivisorClass

    @property
    def n(self) -> int:
        return len(self.vertices) - 1

    @property
    def lines(self) -> list[DivisorClass]:
        L = enumerate_lines(self.r)
        return [L[i] for i in self.vertices]

    def to_json(self, tag: Cornered | Uncornered | None = None) -> dict:
        out: dict = {
            "vertices": list(self.vertices),
            "degree": self.degree,
            "center": self.center.to_json(),
        }
        if isinstance(tag, Cornered):
            out["tag"] = "cornered"
            out["corner_line"] = tag.line
        elif isinstance(tag, Uncornered):
            out["tag"] = "uncornered"
            if tag.companion is not None:
                out["companion"] = tag.companion.to_json()
        return out


def make_simplex(r: int, vertices: Iterable[int], degree: int | None = None) -> InscribedSimplex:
    """Validate a vertex set and compute its center."""
    L = enumerate_lines(check_rank(r))
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs) or len(vs) < 2:
        raise DomainError(f"need at least two distinct vertices, got {vs}")
    if any(not 0 <= i < len(L) for i in vs):
        raise DomainError(f"vertex index out of range for S_{r}")
    b = pairing(L[vs[0]], L[vs[1]]) if degree is None else degree
    for i, j in itertools.combinations(vs, 2):
        if pairing(L[i], L[j]) != b:
            raise DomainError(f"lines {i} and {j} meet in {pairing(L[i], L[j])}, not {b}")
    center = sum_classes((L[i] for i in vs), r)
    s = InscribedSimplex(r, b, vs, center)
    _check_center_grading(s)
    return s


def _check_center_grading(s: InscribedSimplex) -> None:
    m = s.n + 1
    K = canonical(s.r)
    if pairing(s.center, K) != -m:
        raise InvariantError(f"center of {s.vertices} has K-degree {pairing(s.center, K)}, expected {-m}")
    # D^2 = m(-1) + m(m-1) b
    if s.center.square != m * (m - 1) * s.degree - m:
        raise InvariantError(f"center of {s.vertices} has square {s.center.square}")


@lru_cache(maxsize=None)
def degree_adjacency(r: int, b: int) -> tuple[int, ...]:
    return enumerate_lines(r).adjacency(b)


def iter_vertex_sets(r: int, n: int, b: int) -> Iterator[tuple[int, ...]]:
    check_feasible(r, n, b)
    return cliques.iter_cliques(degree_adjacency(r, b), n + 1)


def enumerate_inscribed(r: int, n: int, b: int) -> Iterator[InscribedSimplex]:
    """Every A_n^r(b)-polytope once, in lexicographic vertex order."""
    L = enumerate_lines(r)
    packed = [cliques.pack(c.coeffs) for c in L]
    for vs in iter_vertex_sets(r, n, b):
        center = DivisorClass.trusted(r, cliques.unpack(sum(packed[i] for i in vs), r + 1))
        yield InscribedSimplex(r, b, vs, center)


def count_inscribed(r: int, n: int, b: int, threads: int = 1) -> int:
    check_feasible(r, n, b)
    return cliques.count_cliques(degree_adjacency(r, b), n + 1, threads)


def centers(r: int, n: int, b: int, threads: int = 1) -> set[DivisorClass]:
    """Distinct vertex sums over all A_n^r(b)-polytopes."""
    check_feasible(r, n, b)
    L = enumerate_lines(r)
    packed = [cliques.pack(c.coeffs) for c in L]
    log.info("centers r=%d n=%d b=%d: enumerating", r, n, b)
    sums = cliques.clique_sums(degree_adjacency(r, b), n + 1, packed, threads)
    out = {DivisorClass.trusted(r, cliques.unpack(x, r + 1)) for x in sums}
    log.info("centers r=%d n=%d b=%d: %d distinct", r, n, b, len(out))
    return out


def center_representatives(r: int, n: int, b: int) -> dict[DivisorClass, tuple[int, ...]]:
    """First simplex (lexicographically) for each center."""
    L = enumerate_lines(r)
    packed = [cliques.pack(c.coeffs) for c in L]
    reps: dict[int, tuple[int, ...]] = {}
    for vs in iter_vertex_sets(r, n, b):
        reps.setdefault(sum(packed[i] for i in vs), vs)
    return {DivisorClass.trusted(r, cliques.unpack(k, r + 1)): v for k, v in reps.items()}


# -- seeded sampling ------------------------------------------------------------

def _grow(adj: Sequence[int], size: int, rng: random.Random, allowed: int) -> tuple[int, ...] | None:
    cand = allowed
    chosen: list[int] = []
    while len(chosen) < size and cand:
        options = list(cliques.bits(cand))
        w = options[rng.randrange(len(options))]
        chosen.append(w)
        cand &= adj[w]
    return tuple(sorted(chosen)) if len(chosen) == size else None


def sample_simplexes(r: int, n: int, b: int, count: int, seed: int = 42) -> list[InscribedSimplex]:
    """Distinct A_n^r(b)-polytopes grown vertex by vertex from a seeded RNG.

    The output depends only on (r, n, b, count, seed). Not uniform over all
    simplexes, which the theorem checks do not need.
    """
    check_feasible(r, n, b)
    adj = degree_adjacency(r, b)
    if n <= 3:
        count = min(count, count_inscribed(r, n, b))
    rng = random.Random(seed)
    full = (1 << len(adj)) - 1
    return _collect(count, lambda: _grow(adj, n + 1, rng, full), r, b)


def sample_cornered_A3(count: int, seed: int = 42) -> list[InscribedSimplex]:
    """Distinct cornered A_3^8(1)-polytopes: a random line, then a simplex in its vertex figure."""
    adj = degree_adjacency(8, 1)
    adj0 = enumerate_lines(8).adjacency(0)
    rng = random.Random(seed)
    return _collect(count, lambda: _grow(adj, 4, rng, adj0[rng.randrange(240)]), 8, 1)


def _collect(count: int, draw: Callable[[], tuple[int, ...] | None], r: int, b: int) -> list[InscribedSimplex]:
    seen: set[tuple[int, ...]] = set()
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * (count + 10):
            raise InvariantError(f"sampler stalled after {len(out)} simplexes")
        key = draw()
        if key is None or key in seen:
            continue
        seen.add(key)
        out.append(make_simplex(r, key, b))
    return out


# -- cornered / uncornered -------------------------------------------------------

@dataclass(frozen=True)
class Cornered:
    """``line`` is the lowest-index cornering line; ``lines`` lists all of them."""

    line: int
    lines: tuple[int, ...]
    root: DivisorClass | None = None


@dataclass(frozen=True)
class Uncornered:
    companion: DivisorClass | None = None


def cornering_mask(r: int, vertices: Iterable[int]) -> int:
    adj0 = enumerate_lines(r).adjacency(0)
    mask = (1 << len(adj0)) - 1
    for v in vertices:
        mask &= adj0[v]
    return mask


def is_cornered_set(r: int, vertices: Iterable[int]) -> bool:
    return cornering_mask(r, vertices) != 0


def root_of_center(center: DivisorClass) -> DivisorClass | None:
    """d with center + 4K = 2d when d is a root, else None."""
    shifted = center + 4 * canonical(center.r)
    if not shifted.divisible_by(2):
        return None
    d = shifted.divide(2)
    return d if is_root(d) else None


def _is_a3_degree1_r8(s: InscribedSimplex) -> bool:
    return s.r == 8 and s.n == 3 and s.degree == 1


def classify(s: InscribedSimplex) -> Cornered | Uncornered:
    """Search-based classification; on A_3^8(1) also checked against the center."""
    mask = cornering_mask(s.r, s.vertices)
    if not _is_a3_degree1_r8(s):
        if mask:
            found = tuple(cliques.bits(mask))
            return Cornered(found[0], found)
        return Uncornered()
    d = root_of_center(s.center)
    if mask:
        found = tuple(cliques.bits(mask))
        if d is None:
            raise InvariantError(f"{s.vertices} is cornered but its center gives no root")
        if len(found) != 1:
            raise InvariantError(f"cornered A_3^8(1) {s.vertices} has {len(found)} cornering lines")
        return Cornered(found[0], found, d)
    if d is not None:
        raise InvariantError(f"{s.vertices} is uncornered but center + 4K = 2d for a root d")
    companion = 3 * s.center + 4 * canonical(8)
    split_skew(companion)  # raises unless a unique disjoint 8-line witness exists
    return Uncornered(companion)


def cornering_line(s: InscribedSimplex) -> int:
    """The unique cornering line of a cornered A_3^8(1), as K + center/2."""
    if not _is_a3_degree1_r8(s):
        raise DomainError("cornering_line applies to A_3^8(1)-polytopes")
    if not s.center.divisible_by(2):
        raise DomainError(f"{s.vertices} is not cornered (center/2 is not integral)")
    L = enumerate_lines(8)
    l = canonical(8) + s.center.divide(2)
    tag = classify(s)
    if not isinstance(tag, Cornered):
        raise DomainError(f"{s.vertices} is not cornered")
    if L.index.get(l) != tag.line:
        raise InvariantError(f"formula line {l} differs from the searched cornering line {L[tag.line]}")
    return tag.line


def would_be_cornering_pairing(four: Sequence[int], l5: int, drop: int) -> Fraction:
    """l.l' for l = K + (sum four)/2 and l' the same with four[drop] replaced by l5."""
    L = enumerate_lines(8)
    K = canonical(8)
    a = 2 * K + sum_classes((L[i] for i in four), 8)
    swapped = [L[i] for k, i in enumerate(four) if k != drop] + [L[l5]]
    b = 2 * K + sum_classes(swapped, 8)
    return Fraction(pairing(a, b), 4)


def swap_breaks_cornering(four: Sequence[int], l5: int) -> list[Cornered | Uncornered]:
    """Tags of the four A_3 obtained by swapping l5 into a cornered A_3^8(1).

    Each must be uncornered; an InvariantError is raised otherwise.
    """
    make_simplex(8, tuple(four) + (l5,), 1)
    base = make_simplex(8, four, 1)
    if not isinstance(classify(base), Cornered):
        raise DomainError(f"{tuple(four)} is not cornered")
    tags = []
    for drop in range(4):
        vs = [v for k, v in enumerate(four) if k != drop] + [l5]
        tag = classify(make_simplex(8, vs, 1))
        if isinstance(tag, Cornered):
            raise InvariantError(f"swapping {l5} into {tuple(four)} kept it cornered")
        if would_be_cornering_pairing(four, l5, drop) != Fraction(-1, 2):
            raise InvariantError("would-be cornering lines do not pair to -1/2")
        tags.append(tag)
    return tags


# -- skew edges of uncornered A_3^8(1) ---------------------------------------------

@dataclass(frozen=True)
class SkewEdges:
    """edges[i] is the disjoint pair splitting (sum of vertices other than i) + K."""

    simplex: InscribedSimplex
    edges: tuple[tuple[int, int], ...]
    seven_simplex: tuple[int, ...]
    center: DivisorClass


def face_skew_pair(r: int, face: Sequence[int]) -> tuple[int, int]:
    """The disjoint pair (la, lb), la < lb, with la + lb = sum(face) + K."""
    L = enumerate_lines(r)
    S = sum_classes((L[i] for i in face), r) + canonical(r)
    return split_skew2(S)


def skew_edges_of_uncornered(s: InscribedSimplex) -> SkewEdges:
    if not _is_a3_degree1_r8(s):
        raise DomainError("skew edges are defined for A_3^8(1)-polytopes")
    tag = classify(s)
    if isinstance(tag, Cornered):
        raise DomainError(f"{s.vertices} is cornered")
    edges = tuple(face_skew_pair(8, [v for v in s.vertices if v != omit]) for omit in s.vertices)
    eight = sorted(i for e in edges for i in e)
    if len(set(eight)) != 8:
        raise InvariantError(f"skew edges of {s.vertices} repeat a line")
    L = enumerate_lines(8)
    for i, j in itertools.combinations(eight, 2):
        if pairing(L[i], L[j]) != 0:
            raise InvariantError(f"skew-edge lines {i}, {j} are not disjoint")
    D1 = sum_classes((L[i] for i in eight), 8)
    if D1 != 3 * s.center + 4 * canonical(8) or D1 != tag.companion:
        raise InvariantError("seven-simplex center differs from 3D + 4K")
    return SkewEdges(s, edges, tuple(eight), D1)


def uncornered_from_skew_edges(seven: Sequence[int], edges: Sequence[tuple[int, int]]) -> InscribedSimplex:
    """Rebuild the uncornered A_3^8(1) with vertices (D1 - K)/3 - a_i."""
    L = enumerate_lines(8)
    seven = tuple(sorted(seven))
    if len(seven) != 8 or len(set(seven)) != 8:
        raise DomainError("a 7-simplex has eight distinct vertices")
    for i, j in itertools.combinations(seven, 2):
        if pairing(L[i], L[j]) != 0:
            raise DomainError(f"lines {i}, {j} of the 7-simplex are not disjoint")
    flat = sorted(i for e in edges for i in e)
    if len(edges) != 4 or tuple(flat) != seven:
        raise DomainError("the four edges must pair up the eight vertices")
    K = canonical(8)
    D1 = sum_classes((L[i] for i in seven), 8)
    third = (D1 - K).divide(3)
    verts = []
    for a, b in edges:
        l = third - L[a] - L[b]
        if l not in L:
            raise InvariantError(f"(D1 - K)/3 - a_i = {l} is not a line")
        verts.append(L.index[l])
    s = make_simplex(8, verts, 1)
    if s.center != (D1 - 4 * K).divide(3):
        raise InvariantError("rebuilt center differs from (D1 - 4K)/3")
    if isinstance(classify(s), Cornered):
        raise InvariantError(f"rebuilt simplex {s.vertices} is cornered")
    return s


def perfect_matchings(items: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    """All ways to split an even-size sequence into unordered pairs."""
    items = list(items)
    if not items:
        return [()]
    first, rest = items[0], items[1:]
    out = []
    for k, partner in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for m in perfect_matchings(remaining):
            out.append(((first, partner),) + m)
    return out


def skew_edge_families(seven: Sequence[int]) -> list[InscribedSimplex]:
    """One uncornered A_3^8(1) per 4-skew-edge family of a 7-simplex."""
    return [uncornered_from_skew_edges(seven, m) for m in perfect_matchings(sorted(seven))]


# -- A_4 ------------------------------------------------------------------------------

def cornered_faces(r: int, vertices: Sequence[int]) -> list[tuple[int, ...]]:
    """All cornered 4-vertex subsets, lexicographically."""
    return [f for f in itertools.combinations(sorted(vertices), 4) if is_cornered_set(r, f)]


@dataclass(frozen=True)
class A4Decomposition:
    center: DivisorClass
    line: int  # l_D
    cornered_center: DivisorClass  # A_D
    corner_line: int  # cornering line of A_D

    @property
    def pair(self) -> tuple[int, int]:
        return (self.corner_line, self.line)


@lru_cache(maxsize=None)
def _line_matrix() -> np.ndarray:
    return enumerate_lines(8).vectors


_SIGN = np.array([1] + [-1] * 8, dtype=np.int64)


def decompose_A4_center(D: DivisorClass) -> A4Decomposition:
    """Unique split D = A_D + l_D with A_D the center of a cornered A_3^8(1)."""
    if D.r != 8 or pairing(D, canonical(8)) != -5 or D.square != 15:
        raise DomainError(f"{D} is not an A_4^8(1) center")
    K = np.array(canonical(8).coeffs, dtype=np.int64)
    V = _line_matrix()
    A = np.array(D.coeffs, dtype=np.int64) - V  # candidate A_D per line
    shifted = A + 4 * K
    even = np.all(shifted % 2 == 0, axis=1)
    d = shifted // 2
    sq = ((d * d) * _SIGN).sum(axis=1)
    kd = ((d * K) * _SIGN).sum(axis=1)
    ok = np.flatnonzero(even & (sq == -2) & (kd == 0))
    if len(ok) != 1:
        raise InvariantError(f"{D} splits as cornered center + line in {len(ok)} ways")
    i = int(ok[0])
    L = enumerate_lines(8)
    A_D = D - L[i]
    corner = L.index_of(canonical(8) + A_D.divide(2))
    if pairing(L[corner], L[i]) != 1:
        raise InvariantError(f"cornering line of A_D meets l_D in {pairing(L[corner], L[i])}")
    return A4Decomposition(D, i, A_D, corner)


@dataclass(frozen=True)
class A4Extension:
    simplex: InscribedSimplex
    added: int
    alternative: int  # the Bertini partner of ``added``, which also extends
    cornered_face: tuple[int, ...]


def extend_uncornered_A3_to_A4(s: InscribedSimplex) -> A4Extension:
    """Adjoin G_{la}(lb) for the skew pair of the face {l1, l2, l3}."""
    if not _is_a3_degree1_r8(s) or isinstance(classify(s), Cornered):
        raise DomainError("extension needs an uncornered A_3^8(1)")
    L = enumerate_lines(8)
    face = s.vertices[:3]
    la, lb = face_skew_pair(8, face)
    added = L.index_of(gieser_at(L[la], L[lb]))
    alternative = L.index_of(gieser_at(L[lb], L[la]))
    if bertini(L[added]) != L[alternative]:
        raise InvariantError("the two Gieser choices are not Bertini partners")
    ext = make_simplex(8, s.vertices + (added,), 1)
    make_simplex(8, s.vertices + (alternative,), 1)
    faces = cornered_faces(8, ext.vertices)
    expected = tuple(sorted(face + (added,)))
    if faces != [expected]:
        raise InvariantError(f"A_4 {ext.vertices} has cornered faces {faces}, expected [{expected}]")
    if cornering_mask(8, expected) != 1 << la:
        raise InvariantError("the completed face is not cornered by l_a")
    return A4Extension(ext, added, alternative, expected)


def gieser_dual(s: InscribedSimplex) -> InscribedSimplex:
    """{G_l(l_i)} for the cornering line l of a cornered A_3^8(1)."""
    l = cornering_line(s)
    L = enumerate_lines(8)
    images = [L.index_of(gieser_at(L[l], L[v])) for v in s.vertices]
    dual = make_simplex(8, images, 1)
    tag = classify(dual)
    if not isinstance(tag, Cornered) or tag.line != l:
        raise InvariantError(f"Gieser dual of {s.vertices} is not cornered by the same line")
    return dual


def check_A4(s: InscribedSimplex) -> A4Decomposition:
    """Per-instance A_4^8(1) checks: one cornered face, and it is D - l_D."""
    faces = cornered_faces(8, s.vertices)
    if len(faces) != 1:
        raise InvariantError(f"A_4 {s.vertices} has {len(faces)} cornered faces")
    dec = decompose_A4_center(s.center)
    rest = tuple(v for v in s.vertices if v != dec.line)
    if dec.line not in s.vertices or rest != faces[0]:
        raise InvariantError(f"A_4 {s.vertices} does not contain l_D = {dec.line} outside its cornered face")
    if isinstance(classify(s), Cornered):
        raise InvariantError(f"A_4 {s.vertices} is cornered")
    return dec


# -- A_5 ------------------------------------------------------------------------------

@dataclass(frozen=True)
class A5Structure:
    labels: tuple[int, ...]  # l1..l6
    faces: tuple[tuple[int, ...], ...]  # {1234}, {1256}, {3456}
    corner_lines: tuple[int, ...]
    skew3: tuple[int, ...]


A5_FACES = ((0, 1, 2, 3), (0, 1, 4, 5), (2, 3, 4, 5))


def decompose_A5_center(D: DivisorClass) -> tuple[int, ...]:
    """Witness (la, lb, lc) of the skew 3-line D + 3K."""
    if D.r != 8 or pairing(D, canonical(8)) != -6 or D.square != 24:
        raise DomainError(f"{D} is not an A_5^8(1) center")
    return split_skew(D + 3 * canonical(8))


def a5_structure(s: InscribedSimplex) -> A5Structure:
    if s.r != 8 or s.n != 5 or s.degree != 1:
        raise DomainError("expected an A_5^8(1)-polytope")
    faces = cornered_faces(8, s.vertices)
    if len(faces) != 3:
        raise InvariantError(f"A_5 {s.vertices} has {len(faces)} cornered faces")
    comps = [tuple(v for v in s.vertices if v not in f) for f in faces]
    if len({v for c in comps for v in c}) != 6:
        raise InvariantError("complements of the cornered faces do not partition the vertices")
    # faces {1234},{1256},{3456} have complements {56},{34},{12}
    labels = comps[2] + comps[1] + comps[0]
    labelled = tuple(tuple(sorted(labels[k] for k in f)) for f in A5_FACES)
    if sorted(labelled) != sorted(faces):
        raise InvariantError("labeling does not realize the three cornered faces")
    L = enumerate_lines(8)
    corner = tuple(sorted(cornering_line(make_simplex(8, f, 1)) for f in labelled))
    skew3 = decompose_A5_center(s.center)
    if corner != skew3:
        raise InvariantError(f"cornering lines {corner} differ from the skew 3-line witness {skew3}")
    if sum_classes((L[i] for i in corner), 8) != s.center + 3 * canonical(8):
        raise InvariantError("cornering lines do not sum to D + 3K")
    return A5Structure(labels, labelled, corner, skew3)


# -- A_6 and the Fano plane -----------------------------------------------------------

# 0-based versions of the labeled cornered faces and their complementary blocks
FANO_FACES = ((0, 1, 2, 3), (0, 1, 4, 5), (2, 3, 4, 5), (0, 2, 4, 6), (1, 3, 4, 6), (0, 3, 5, 6), (1, 2, 5, 6))
FANO_BLOCKS = ((4, 5, 6), (2, 3, 6), (0, 1, 6), (1, 3, 5), (0, 2, 5), (1, 2, 4), (0, 3, 4))


@dataclass(frozen=True)
class FanoStructure:
    lines: tuple[int, ...]  # l1..l7 in label order
    blocks: tuple[tuple[int, ...], ...]  # line indices, in FANO_BLOCKS order
    faces: tuple[tuple[int, ...], ...]
    corner_lines: tuple[int, ...]  # cornering line of faces[i]
    permutation: tuple[int, ...]  # lines[k] = sorted vertices[permutation[k]]


def is_steiner_237(points: Sequence[int], blocks: Sequence[Sequence[int]]) -> tuple[bool, tuple[int, int] | None]:
    """Every pair of points lies in exactly one block; returns a failing pair."""
    counts = {p: 0 for p in itertools.combinations(sorted(points), 2)}
    for blk in blocks:
        for p in itertools.combinations(sorted(blk), 2):
            if p not in counts:
                return False, p
            counts[p] += 1
    for p, c in counts.items():
        if c != 1:
            return False, p
    return True, None


def fano_structure(s: InscribedSimplex) -> FanoStructure:
    if s.r != 8 or s.n != 6 or s.degree != 1:
        raise DomainError("expected an A_6^8(1)-polytope")
    faces = cornered_faces(8, s.vertices)
    if len(faces) != 7:
        raise InvariantError(f"A_6 {s.vertices} has {len(faces)} cornered faces")
    face_sets = {frozenset(f) for f in faces}
    vs = s.vertices
    perm = None
    for p in itertools.permutations(range(7)):
        if all(frozenset(vs[p[k]] for k in f) in face_sets for f in FANO_FACES):
            perm = p
            break
    if perm is None:
        raise InvariantError(f"cornered faces of {vs} do not match the Fano pattern")
    lines = tuple(vs[k] for k in perm)
    blocks = tuple(tuple(lines[k] for k in b) for b in FANO_BLOCKS)
    ok, bad = is_steiner_237(lines, blocks)
    if not ok:
        raise InvariantError(f"Fano blocks of {vs} fail S(2,3,7) at {bad}")
    labelled_faces = tuple(tuple(sorted(lines[k] for k in f)) for f in FANO_FACES)
    corner = tuple(cornering_line(make_simplex(8, f, 1)) for f in labelled_faces)
    L = enumerate_lines(8)
    if len(set(corner)) != 7 or any(pairing(L[i], L[j]) != 0 for i, j in itertools.combinations(corner, 2)):
        raise InvariantError("cornering lines of the seven faces are not pairwise disjoint")
    if sum_classes((L[i] for i in corner), 8) != 2 * s.center + 7 * canonical(8):
        raise InvariantError("cornering lines do not sum to 2D + 7K")
    return FanoStructure(lines, blocks, labelled_faces, corner, perm)


def a6_skew7(D: DivisorClass) -> DivisorClass:
    """2D + 7K for an A_6^8(1) center."""
    return 2 * D + 7 * canonical(8)


@dataclass(frozen=True)
class A7Extension:
    line: int  # l_8
    simplex: InscribedSimplex
    cornered_face: tuple[int, ...]
    uncornered_face: tuple[int, ...]  # {l, li, lj, lk}
    alternative: int


def extend_fano_to_A7(s: InscribedSimplex, block: Sequence[int]) -> A7Extension:
    """Complete a Fano block of an A_6^8(1) to a cornered A_3 and the A_6 to an A_7.

    The block's skew pair (la, lb), la < lb, offers two candidates G_la(lb) and
    G_lb(la); both work, and we return the first.
    """
    fano = fano_structure(s)
    blk = tuple(sorted(block))
    if blk not in {tuple(sorted(b)) for b in fano.blocks}:
        raise DomainError(f"{blk} is not a Fano block of {s.vertices}")
    L = enumerate_lines(8)
    comp = tuple(v for v in s.vertices if v not in blk)
    l = cornering_line(make_simplex(8, comp, 1))
    la, lb = face_skew_pair(8, blk)
    cands = [L.index_of(gieser_at(L[la], L[lb])), L.index_of(gieser_at(L[lb], L[la]))]
    for c in cands:
        if c in s.vertices:
            raise InvariantError(f"candidate l_8 = {c} already lies in the A_6")
        make_simplex(8, s.vertices + (c,), 1)
        if not is_cornered_set(8, blk + (c,)):
            raise InvariantError(f"block {blk} + {c} is not cornered")
    l8 = cands[0]
    ext = make_simplex(8, s.vertices + (l8,), 1)
    unc = make_simplex(8, blk + (l,), 1)
    if isinstance(classify(unc), Cornered):
        raise InvariantError(f"{unc.vertices} should be uncornered")
    return A7Extension(l8, ext, tuple(sorted(blk + (l8,))), unc.vertices, cands[1])


# -- A_7 and rulings --------------------------------------------------------------------

def decompose_A7_center(D: DivisorClass) -> tuple[DivisorClass, tuple[tuple[int, int], ...]]:
    """The ruling f = D/2 + 2K and its seven bipolar pairs."""
    if D.r != 8 or pairing(D, canonical(8)) != -8 or D.square != 48:
        raise DomainError(f"{D} is not an A_7^8(1) center")
    f = D.divide(2) + 2 * canonical(8)
    if f not in enumerate_rulings(8):
        raise InvariantError(f"D/2 + 2K = {f} is not a ruling")
    return f, ruling_vertices(f)


@dataclass(frozen=True)
class A7Structure:
    ruling: DivisorClass
    face_pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    line_pairs: tuple[tuple[int, int], ...]


def a7_structure(s: InscribedSimplex) -> A7Structure:
    if s.r != 8 or s.n != 7 or s.degree != 1:
        raise DomainError("expected an A_7^8(1)-polytope")
    f, bipolar = decompose_A7_center(s.center)
    faces = cornered_faces(8, s.vertices)
    face_set = set(faces)
    pairs = []
    for face in faces:
        comp = tuple(v for v in s.vertices if v not in face)
        if comp not in face_set:
            raise InvariantError(f"complement of cornered face {face} is uncornered")
        if face < comp:
            pairs.append((face, comp))
    if len(pairs) != 7:
        raise InvariantError(f"A_7 {s.vertices} has {len(pairs)} complementary cornered pairs")
    L = enumerate_lines(8)
    line_pairs = []
    for a, b in pairs:
        la = cornering_line(make_simplex(8, a, 1))
        lb = cornering_line(make_simplex(8, b, 1))
        if pairing(L[la], L[lb]) != 1 or L[la] + L[lb] != f:
            raise InvariantError(f"cornering lines {la}, {lb} do not form a bipolar pair of {f}")
        line_pairs.append((min(la, lb), max(la, lb)))
    if sorted(line_pairs) != sorted(bipolar):
        raise InvariantError("cornering line pairs differ from the ruling's bipolar pairs")
    return A7Structure(f, tuple(pairs), tuple(sorted(line_pairs)))


# -- higher degree ---------------------------------------------------------------------

@dataclass
class HigherDegreeReport:
    r: int
    n: int
    b: int
    simplexes: int
    centers: int
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def higher_degree_reductions(r: int, n: int, b: int) -> HigherDegreeReport:
    check_feasible(r, n, b)
    if b < 2:
        raise DomainError("higher-degree reductions need b >= 2")
    L = enumerate_lines(r)
    K = canonical(r)
    simplexes = list(enumerate_inscribed(r, n, b))
    cs = {s.center for s in simplexes}
    checks: dict[str, bool] = {}
    if (r, n, b) == (7, 1, 2):
        checks["pairs are (l, G(l))"] = all(L[s.vertices[1]] == gieser(L[s.vertices[0]]) for s in simplexes)
        checks["common center -K"] = cs == {-K}
    elif (r, n, b) == (8, 1, 2):
        L7 = enumerate_lines(7)
        sa2s7 = {frozenset((i, L7.index_of(gieser(l)))) for i, l in enumerate(L7)}
        by_center: dict[DivisorClass, list[InscribedSimplex]] = {}
        for s in simplexes:
            by_center.setdefault(s.center, []).append(s)
        ok_line = ok_n0 = ok_conf = True
        for D, group in by_center.items():
            lD = D + K
            if lD not in L:
                ok_line = False
                continue
            i = L.index[lD]
            n0 = L.adjacency(0)[i]
            if not all(n0 >> v & 1 for s in group for v in s.vertices):
                ok_n0 = False
            bd = blow_down_basis(lD)
            image = {frozenset(L7.index_of(bd.restrict(L[v])) for v in s.vertices) for s in group}
            ok_conf &= image == sa2s7
        checks["center + K is a line"] = ok_line
        checks["vertices lie in N_0(center + K)"] = ok_n0
        checks["blow-down gives the 28 pairs (l, G(l)) on S_7"] = ok_conf
    elif (r, n, b) == (8, 2, 2):
        checks["common center -3K"] = cs == {-3 * K}
    elif (r, n, b) == (8, 1, 3):
        checks["pairs are (l, B(l))"] = all(L[s.vertices[1]] == bertini(L[s.vertices[0]]) for s in simplexes)
        checks["common center -2K"] = cs == {-2 * K}
    return HigherDegreeReport(r, n, b, len(simplexes), len(cs), checks)


# -- center tables -------------------------------------------------------------------

CENTER_TABLE_R8 = {1: 2160, 2: 6720, 3: 17520, 4: 30240, 5: 60480, 6: 207360, 7: 2160}
CENTER_TABLE_LOW = {
    (3, 1): 3, (4, 1): 5, (5, 1): 10, (6, 1): 27, (7, 1): 126,
    (6, 2): 1, (7, 2): 56,
    (7, 3): 1,
}
CENTER_TABLE_HIGHER = {(7, 1, 2): 1, (8, 1, 2): 240, (8, 2, 2): 1, (8, 1, 3): 1}


def center_table_rows(
    threads: int = 1, progress: Callable[[str], None] | None = None
) -> list[tuple[str, int, int]]:
    """(cell name, expected, computed) for all three center tables."""
    rows = []
    for (r, n), exp in sorted(CENTER_TABLE_LOW.items()):
        rows.append((f"A{n}^{r}(1)", exp, len(centers(r, n, 1, threads))))
    for (r, n, b), exp in sorted(CENTER_TABLE_HIGHER.items()):
        rows.append((f"A{n}^{r}({b})", exp, len(centers(r, n, b, threads))))
    for n, exp in sorted(CENTER_TABLE_R8.items()):
        got = len(centers(8, n, 1, threads))
        if progress:
            progress(f"A{n}^8(1): {got} centers (expected {exp})")
        rows.append((f"A{n}^8(1)", exp, got))
    return rows
