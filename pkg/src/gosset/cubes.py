"""Inscribed crosspolytopes and hypercubes built from lines.

In a cube whose edges are polytope edges, two vertices at Hamming distance
k are lines with pairing k - 1 (squared length 2k), so the embedding is
recovered from a vertex and its neighbours alone.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import cliques
from .catalog import bertini, enumerate_lines, enumerate_rulings, gieser, gieser_at, ruling_vertices
from .errors import DomainError, InvariantError
from .inscribed import (
    Cornered,
    InscribedSimplex,
    classify,
    cornering_line,
    face_skew_pair,
    is_cornered_set,
    make_simplex,
    root_of_center,
)
from .picard import DivisorClass, canonical, check_rank, is_root, pairing, sum_classes


@dataclass(frozen=True)
class InscribedCrosspolytope:
    pairs: tuple[tuple[int, int], ...]  # antipodal (l, partner)
    center: DivisorClass  # common sum of each antipodal pair

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(i for p in self.pairs for i in p))

    def facets(self) -> list[tuple[int, ...]]:
        """One vertex from each antipodal pair, every way."""
        return [tuple(sorted(c)) for c in itertools.product(*self.pairs)]


def _check_crosspolytope(pairs: Sequence[tuple[int, int]]) -> DivisorClass:
    L = enumerate_lines(8)
    flat = [i for p in pairs for i in p]
    if len(set(flat)) != len(flat):
        raise InvariantError("crosspolytope vertices repeat")
    centers = {L[a] + L[b] for a, b in pairs}
    if len(centers) != 1:
        raise InvariantError("antipodal pairs do not share a center")
    for k, (a, b) in enumerate(pairs):
        if pairing(L[a], L[b]) != 3:
            raise InvariantError(f"antipodal lines {a}, {b} meet in {pairing(L[a], L[b])}, not 3")
        for a2, b2 in pairs[k + 1:]:
            for x, y in ((a, a2), (a, b2), (b, a2), (b, b2)):
                if pairing(L[x], L[y]) != 1:
                    raise InvariantError(f"non-antipodal lines {x}, {y} meet in {pairing(L[x], L[y])}")
    return centers.pop()


def inscribed_crosspolytope(s: InscribedSimplex) -> InscribedCrosspolytope:
    """{l_i, B(l_i)} for an A_{m-1}^8(1); all such share the center -2K."""
    if s.r != 8 or s.degree != 1 or not 2 <= s.n + 1 <= 8:
        raise DomainError("need an A_{m-1}^8(1)-polytope with 2 <= m <= 8")
    L = enumerate_lines(8)
    pairs = tuple((v, L.index_of(bertini(L[v]))) for v in s.vertices)
    center = _check_crosspolytope(pairs)
    if center != -2 * canonical(8):
        raise InvariantError(f"crosspolytope center {center} is not -2K")
    return InscribedCrosspolytope(pairs, center)


# -- hypercubes --------------------------------------------------------------------

@dataclass(frozen=True)
class Hypercube:
    r: int
    dimension: int
    vertices: tuple[int, ...]  # vertices[x] has cube coordinates given by the bits of x
    center: DivisorClass


def cube_labels(r: int, vertices: Sequence[int]) -> dict[int, int] | None:
    """Label lines by {0,1}^m so that pairing = Hamming distance - 1, or None."""
    L = enumerate_lines(r)
    vs = list(vertices)
    n = len(vs)
    m = n.bit_length() - 1
    if n < 2 or 1 << m != n or len(set(vs)) != n:
        return None
    v0 = vs[0]
    nbrs = [u for u in vs if pairing(L[u], L[v0]) == 0]
    if len(nbrs) != m:
        return None
    labels = {}
    for u in vs:
        base = pairing(L[u], L[v0])
        labels[u] = sum(1 << k for k, w in enumerate(nbrs) if pairing(L[u], L[w]) < base)
    if len(set(labels.values())) != n:
        return None
    for u, w in itertools.combinations(vs, 2):
        if pairing(L[u], L[w]) != (labels[u] ^ labels[w]).bit_count() - 1:
            return None
    return labels


def is_hypercube(r: int, vertices: Sequence[int]) -> bool:
    return cube_labels(r, vertices) is not None


def make_hypercube(r: int, vertices: Sequence[int]) -> Hypercube:
    labels = cube_labels(r, vertices)
    if labels is None:
        raise InvariantError(f"{sorted(vertices)} is not an m-cube of polytope edges")
    order = sorted(labels, key=labels.get)
    L = enumerate_lines(r)
    full = len(order) - 1
    centers = {L[order[x]] + L[order[full ^ x]] for x in range(len(order))}
    if len(centers) != 1:
        raise InvariantError("cube diagonals do not share a center")
    cube = Hypercube(r, full.bit_length(), tuple(order), centers.pop())
    for x in range(len(order)):
        # the vertex figure inside the cube is a degree-1 simplex
        fig = [order[x ^ (1 << k)] for k in range(cube.dimension)]
        if cube.dimension >= 2:
            make_simplex(r, fig, 1)
    return cube


def build_2cube(r: int) -> Hypercube:
    """A square from two bipolar pairs of the first ruling's crosspolytope."""
    f = enumerate_rulings(check_rank(r))[0]
    (a, fa), (b, fb) = ruling_vertices(f)[:2]
    return make_hypercube(r, [a, b, fa, fb])


def build_3cube(r: int, seed: InscribedSimplex) -> Hypercube:
    """3-cube from an A_2^r(1), r in {7, 8}."""
    if r not in (7, 8):
        raise DomainError("3-cubes are built on S_7 and S_8 only")
    if seed.r != r or seed.n != 2 or seed.degree != 1:
        raise DomainError("seed must be an A_2^r(1)-polytope on the same surface")
    L = enumerate_lines(r)
    K = canonical(r)
    l1, l2, l3 = seed.lines
    if r == 7:
        lD = seed.center + K
        base = [l1, l2, l3, lD]
        images = [gieser(x) for x in base]
        expected_center = -K
    else:
        la, lb = face_skew_pair(8, seed.vertices)
        lD = L[la]
        lp = l1 + l2 + l3 + K - lD
        base = [l1, l2, l3, lp]
        images = [gieser_at(lD, x) for x in base]
        expected_center = lD - K
    verts = [L.index_of(x) for x in base + images]
    cube = make_hypercube(r, verts)
    if cube.center != expected_center:
        raise InvariantError(f"3-cube center {cube.center} differs from {expected_center}")
    if r == 8:
        n0 = L.adjacency(0)[L.index_of(lD)]
        if any(not n0 >> v & 1 for v in verts):
            raise InvariantError("3-cube on S_8 leaves the vertex figure of l_D")
    return cube


@dataclass(frozen=True)
class FourCube:
    cube: Hypercube
    crosspolytope: InscribedCrosspolytope
    mixed_faces: tuple[tuple[int, ...], ...]
    mixed_roots: tuple[DivisorClass, ...]


def build_4cube(s: InscribedSimplex) -> FourCube:
    """{l, B(l), l_i, B(l_i), (l_i + l_j + B(l_k) + B(l_m))/2 + K} for a cornered A_3^8(1)."""
    if s.r != 8 or s.n != 3 or s.degree != 1 or not isinstance(classify(s), Cornered):
        raise DomainError("4-cubes are built from cornered A_3^8(1)-polytopes")
    L = enumerate_lines(8)
    K = canonical(8)
    l = L[cornering_line(s)]
    d = root_of_center(s.center)
    ls = s.lines
    Bs = [bertini(x) for x in ls]
    verts = [l, bertini(l)] + ls + Bs
    faces = []
    roots = []
    for i, j in itertools.combinations(range(4), 2):
        k, m = (t for t in range(4) if t not in (i, j))
        face_classes = [ls[i], ls[j], Bs[k], Bs[m]]
        face = tuple(sorted(L.index_of(x) for x in face_classes))
        if not is_cornered_set(8, face):
            raise InvariantError(f"mixed face {face} is not cornered")
        mixed = sum_classes(face_classes, 8)
        verts.append(mixed.divide(2) + K)
        root = ls[i] + ls[j] - d + 2 * K
        if not is_root(root) or 2 * root != mixed + 4 * K:
            raise InvariantError(f"mixed face {face} does not carry the root l_i + l_j - d + 2K")
        faces.append(face)
        roots.append(root)
    cube = make_hypercube(8, [L.index_of(x) for x in verts])
    if cube.center != -2 * K:
        raise InvariantError(f"4-cube center {cube.center} is not -2K")
    cross = inscribed_crosspolytope(s)
    if not set(cross.vertices) <= set(cube.vertices):
        raise InvariantError("the crosspolytope {l_i, B(l_i)} is not inside the 4-cube")
    return FourCube(cube, cross, tuple(faces), tuple(roots))


@dataclass(frozen=True)
class CubeObstruction:
    crosspolytope: InscribedCrosspolytope
    facets_uncornered: int
    half_center_integral: bool


def check_4cube_obstruction(s: InscribedSimplex) -> CubeObstruction:
    """The crosspolytope of Gieser partners over the skew pairs of an uncornered A_3^8(1).

    Every facet is uncornered, so no facet is the vertex figure of a 4-cube vertex.
    """
    if s.r != 8 or s.n != 3 or s.degree != 1 or isinstance(classify(s), Cornered):
        raise DomainError("the obstruction applies to uncornered A_3^8(1)-polytopes")
    L = enumerate_lines(8)
    pairs = []
    for omit in s.vertices:
        la, lb = face_skew_pair(8, [v for v in s.vertices if v != omit])
        pairs.append((L.index_of(gieser_at(L[la], L[lb])), L.index_of(gieser_at(L[lb], L[la]))))
    center = _check_crosspolytope(pairs)
    cross = InscribedCrosspolytope(tuple(pairs), center)
    unc = 0
    for facet in cross.facets():
        tag = classify(make_simplex(8, facet, 1))
        if isinstance(tag, Cornered):
            raise InvariantError(f"facet {facet} of the obstruction crosspolytope is cornered")
        unc += 1
    return CubeObstruction(cross, unc, s.center.divisible_by(2))


def max_cube_dimension(r: int) -> int:
    """Largest m with an m-cube: one more than the largest pairing of two lines."""
    L = enumerate_lines(check_rank(r))
    best = max(pairing(a, b) for a, b in itertools.combinations(L.classes, 2))
    return best + 1


def find_cube(r: int, seed: int = 0) -> Hypercube:
    """An explicit cube of the maximal dimension on S_r."""
    m = max_cube_dimension(r)
    if m == 2:
        return build_2cube(r)
    if m == 3:
        first = next(iter(cliques.iter_cliques(enumerate_lines(7).adjacency(1), 3)))
        return build_3cube(7, make_simplex(7, first, 1))
    for vs in cliques.iter_cliques(enumerate_lines(8).adjacency(1), 4):
        if is_cornered_set(8, vs):
            return build_4cube(make_simplex(8, vs, 1)).cube
    raise InvariantError("no cornered A_3^8(1) found")
