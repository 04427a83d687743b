"""k-Steiner systems on line sets: families of k-sets of lines, pairwise
meeting in a constant c, such that each admissible (k-1)-subset (pairwise
meeting in c) lies in exactly one block.

For k = 2 the admissible subsets are single lines and carry no pairwise
condition.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

from . import cliques
from .catalog import ClassCatalog, enumerate_lines, enumerate_roots
from .errors import DomainError
from .picard import DivisorClass, canonical, pairing, reflect_vec, simple_roots, sum_classes, zero

# name -> (r, k, c, multiple m of K with block sum = m*K)
STEINER_SPECS = {
    "SA2S7": (7, 2, 2, -1),
    "SA2S8": (8, 2, 3, -2),
    "SB3S6": (6, 3, 1, -1),
    "SB3S8": (8, 3, 2, -3),
    "SC4S7": (7, 4, 1, -2),
}


@dataclass(frozen=True, eq=False)
class SteinerSystem:
    name: str
    r: int
    k: int
    c: int
    blocks: tuple[tuple[int, ...], ...]
    catalog: ClassCatalog = field(repr=False)
    block_sum: DivisorClass | None = None

    @property
    def determinant_rule(self) -> int:
        """Pairwise intersection required of determining (k-1)-subsets."""
        return self.c

    @property
    def ground(self) -> range:
        return range(len(self.catalog))

    def to_json(self) -> dict:
        return {"name": self.name, "k": self.k, "c": self.c, "blocks": [list(b) for b in self.blocks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_steiner(name: str) -> SteinerSystem:
    """Blocks are all k-cliques of the pairing-c graph on the lines."""
    if name not in STEINER_SPECS:
        raise DomainError(f"unknown Steiner system {name!r}; choose from {sorted(STEINER_SPECS)}")
    r, k, c, mult = STEINER_SPECS[name]
    lines = enumerate_lines(r)
    blocks = tuple(cliques.iter_cliques(lines.adjacency(c), k))
    return SteinerSystem(name, r, k, c, blocks, lines, mult * canonical(r))


def root_steiner() -> SteinerSystem:
    """Triples of roots of S_8 pairwise meeting in 1; each sums to zero."""
    roots = enumerate_roots(8)
    blocks = tuple(cliques.iter_cliques(roots.adjacency(1), 3))
    return SteinerSystem("roots3S8", 8, 3, 1, blocks, roots, zero(8))


@dataclass
class DesignReport:
    name: str
    blocks: int
    determining_subsets: int
    passed: bool
    counterexample: str | None = None


def verify_design(sys: SteinerSystem) -> DesignReport:
    """Exhaustive check of block degree, block sums and unique determination."""
    G = sys.catalog
    for blk in sys.blocks:
        if len(set(blk)) != sys.k:
            return DesignReport(sys.name, len(sys.blocks), 0, False, f"block {blk} has repeated points")
        for i, j in itertools.combinations(blk, 2):
            if pairing(G[i], G[j]) != sys.c:
                return DesignReport(sys.name, len(sys.blocks), 0, False, f"block {blk}: {i}.{j} != {sys.c}")
        if sys.block_sum is not None and sum_classes((G[i] for i in blk), sys.r) != sys.block_sum:
            return DesignReport(sys.name, len(sys.blocks), 0, False, f"block {blk} does not sum to {sys.block_sum}")
    cover: dict[tuple[int, ...], int] = {}
    for blk in sys.blocks:
        for sub in itertools.combinations(sorted(blk), sys.k - 1):
            cover[sub] = cover.get(sub, 0) + 1
    # determining subsets: (k-1)-cliques of the pairing-c graph (any single point if k = 2)
    determining = 0
    for sub in cliques.iter_cliques(G.adjacency(sys.c), sys.k - 1) if sys.k > 2 else ((i,) for i in sys.ground):
        determining += 1
        hits = cover.get(sub, 0)
        if hits != 1:
            return DesignReport(sys.name, len(sys.blocks), determining, False, f"subset {sub} lies in {hits} blocks")
    return DesignReport(sys.name, len(sys.blocks), determining, True)


def brute_force_triplets(r: int = 6) -> list[tuple[int, int, int]]:
    """Triples of lines pairwise meeting in 1, by scanning all triples (oracle)."""
    L = enumerate_lines(r)
    out = []
    for a, b, c in itertools.combinations(range(len(L)), 3):
        if pairing(L[a], L[b]) == pairing(L[a], L[c]) == pairing(L[b], L[c]) == 1:
            out.append((a, b, c))
    return out


def classical_block_count(n: int) -> int:
    """Blocks of a Steiner triple system S(2,3,n): n(n-1)/6."""
    return n * (n - 1) // 6


def is_weyl_invariant(sys: SteinerSystem) -> bool:
    """Every simple reflection maps blocks to blocks."""
    G = sys.catalog
    block_set = {frozenset(b) for b in sys.blocks}
    for d in simple_roots(sys.r):
        image = []
        for i in range(len(G)):
            image.append(G.index[DivisorClass.trusted(sys.r, reflect_vec(d.coeffs, G[i].coeffs))])
        for blk in sys.blocks:
            if frozenset(image[i] for i in blk) not in block_set:
                return False
    return True


def verify_fano_steiner(points: Sequence[int], blocks: Sequence[Sequence[int]]) -> DesignReport:
    """S(2,3,7): seven points, 7*6/6 blocks, each pair of points in exactly one block."""
    pts = sorted(points)
    name = "fano"
    if len(pts) != 7 or len(set(pts)) != 7:
        return DesignReport(name, len(blocks), 0, False, "need seven distinct points")
    if any(len(set(b)) != 3 or not set(b) <= set(pts) for b in blocks):
        return DesignReport(name, len(blocks), 0, False, "blocks must be 3-subsets of the points")
    counts = {p: 0 for p in itertools.combinations(pts, 2)}
    for b in blocks:
        for p in itertools.combinations(sorted(b), 2):
            counts[p] += 1
    for p, c in counts.items():
        if c != 1:
            return DesignReport(name, len(blocks), len(counts), False, f"pair {p} lies in {c} blocks")
    if len(blocks) != classical_block_count(7):
        return DesignReport(name, len(blocks), len(counts), False, f"{len(blocks)} blocks, expected 7")
    return DesignReport(name, len(blocks), len(counts), True)
