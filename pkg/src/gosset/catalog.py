"""Catalogs of special divisor classes: lines, roots, rulings, exceptional
systems and skew a-lines, plus the transforms that act on lines.

Catalogs are built as Weyl orbits (breadth-first closure under the simple
reflections) and sorted lexicographically on coefficients, so line index i
means the same class in every run.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import cliques
from .errors import DomainError, InvariantError
from .picard import (
    DivisorClass,
    canonical,
    check_rank,
    exceptional,
    hyperplane,
    is_root,
    make,
    pairing,
    pairing_vec,
    reflect_vec,
    simple_roots,
)


@dataclass(frozen=True)
class ClassKind:
    """A family of classes cut out by D^2 = square and D.K = k_degree."""

    tag: str
    square: int
    k_degree: int
    a: int | None = None

    @property
    def name(self) -> str:
        return f"skew{self.a}" if self.tag == "SkewLines" else self.tag

    def admits(self, D: DivisorClass) -> bool:
        return pairing(D, D) == self.square and pairing(D, canonical(D.r)) == self.k_degree


LINE = ClassKind("Line", -1, -1)
ROOT = ClassKind("Root", -2, 0)
RULING = ClassKind("Ruling", 0, -2)
EXCEPTIONAL_SYSTEM = ClassKind("ExceptionalSystem", 1, -3)


def skew_kind(a: int) -> ClassKind:
    return ClassKind("SkewLines", -a, -a, a)


KIND_NAMES = {
    "lines": LINE,
    "roots": ROOT,
    "rulings": RULING,
    "exceptional": EXCEPTIONAL_SYSTEM,
}

GRAM_LIMIT = 4000  # dense gram matrices are only built for catalogs this small


@dataclass(frozen=True, eq=False)
class ClassCatalog:
    kind: ClassKind
    r: int
    classes: tuple[DivisorClass, ...]
    index: dict[DivisorClass, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[DivisorClass]:
        return iter(self.classes)

    def __getitem__(self, i: int) -> DivisorClass:
        return self.classes[i]

    def __contains__(self, D: object) -> bool:
        return D in self.index

    def index_of(self, D: DivisorClass) -> int:
        try:
            return self.index[D]
        except KeyError:
            raise DomainError(f"{D} is not in the {self.kind.name} catalog of S_{self.r}") from None

    @cached_property
    def vectors(self) -> np.ndarray:
        return np.array([c.coeffs for c in self.classes], dtype=np.int64).reshape(len(self), self.r + 1)

    @cached_property
    def gram(self) -> np.ndarray:
        if len(self) > GRAM_LIMIT:
            raise DomainError(f"refusing to build a {len(self)}x{len(self)} gram matrix")
        v = self.vectors
        signed = v.copy()
        signed[:, 1:] *= -1
        return v @ signed.T

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self)) - 1

    @lru_cache(maxsize=None)
    def adjacency(self, value: int) -> tuple[int, ...]:
        """Bitset per class marking partners j != i with pairing == value."""
        g = self.gram == value
        np.fill_diagonal(g, False)
        return tuple(_row_to_int(row) for row in g)

    def members(self, mask: int) -> list[DivisorClass]:
        return [self.classes[i] for i in cliques.bits(mask)]


def _row_to_int(row: np.ndarray) -> int:
    packed = np.packbits(row[::-1].astype(np.uint8))
    return int.from_bytes(packed.tobytes(), "big") >> (len(packed) * 8 - len(row))


def weyl_orbit(r: int, seeds: Iterable[DivisorClass]) -> list[DivisorClass]:
    """Closure of the seeds under the simple reflections, sorted."""
    roots = [d.coeffs for d in simple_roots(r)]
    seen = {s.coeffs for s in seeds}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for d in roots:
                w = reflect_vec(d, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return [DivisorClass(r, v) for v in sorted(seen)]


def _catalog(kind: ClassKind, r: int, classes: Sequence[DivisorClass]) -> ClassCatalog:
    classes = tuple(sorted(classes))
    for D in classes:
        if not kind.admits(D):
            raise InvariantError(f"{D} violates the defining equations of {kind.name}")
    return ClassCatalog(kind, r, classes, {c: i for i, c in enumerate(classes)})


ORACLE_MAX_RANK = 6  # the coefficient scan re-derives every catalog up to this rank


def _built(kind: ClassKind, r: int, orbit: Sequence[DivisorClass]) -> ClassCatalog:
    C = _catalog(kind, r, orbit)
    if r <= ORACLE_MAX_RANK and list(C.classes) != scan_classes(r, kind.square, kind.k_degree):
        raise InvariantError(f"Weyl orbit and coefficient scan disagree for {kind.name} on S_{r}")
    return C


@lru_cache(maxsize=None)
def enumerate_lines(r: int) -> ClassCatalog:
    check_rank(r)
    return _built(LINE, r, weyl_orbit(r, [exceptional(r, r)]))


@lru_cache(maxsize=None)
def enumerate_roots(r: int) -> ClassCatalog:
    check_rank(r)
    # every root is conjugate to a simple one; on S_3 the system A2+A1 is reducible
    return _built(ROOT, r, weyl_orbit(r, simple_roots(r)))


@lru_cache(maxsize=None)
def enumerate_rulings(r: int) -> ClassCatalog:
    check_rank(r)
    return _built(RULING, r, weyl_orbit(r, [make(r, 1, e1=-1)]))


@lru_cache(maxsize=None)
def enumerate_exceptional_systems(r: int) -> ClassCatalog:
    check_rank(r)
    seeds = [hyperplane(r)]
    if r == 8:
        # two Weyl orbits on S_8; the second is -3K + 2d for roots d
        seeds.append(-3 * canonical(8) + 2 * simple_roots(8)[0])
    return _built(EXCEPTIONAL_SYSTEM, r, weyl_orbit(r, seeds))


def enumerate_kind(kind: str, r: int) -> ClassCatalog:
    builders = {
        "lines": enumerate_lines,
        "roots": enumerate_roots,
        "rulings": enumerate_rulings,
        "exceptional": enumerate_exceptional_systems,
    }
    if kind not in builders:
        raise DomainError(f"unknown catalog kind {kind!r}; choose from {sorted(builders)}")
    return builders[kind](r)


# -- independent oracle -----------------------------------------------------

def coefficient_bounds(r: int, square: int, k_degree: int) -> tuple[int, int]:
    """Range of the h-coefficient forced by D^2 = square, D.K = k_degree.

    With D = (a0, a1..ar): sum a_i = -k_degree - 3 a0 and
    sum a_i^2 = a0^2 - square, and Cauchy-Schwarz gives
    (9 - r) a0^2 + 6 k a0 + k^2 + r*square <= 0.
    """
    A, B, C = 9 - r, 6 * k_degree, k_degree ** 2 + r * square
    disc = B * B - 4 * A * C
    if disc < 0:
        return (1, 0)
    root = math.isqrt(disc)
    lo = math.floor((-B - root - 1) / (2 * A)) - 1
    hi = math.ceil((-B + root + 1) / (2 * A)) + 1
    return lo, hi


def scan_classes(r: int, square: int, k_degree: int) -> list[DivisorClass]:
    """All classes with the given invariants by bounded exhaustive search.

    Independent of the Weyl-orbit code: it enumerates coefficient vectors
    directly, constrained only by the two defining equations.
    """
    check_rank(r)
    lo, hi = coefficient_bounds(r, square, k_degree)
    found = []
    for a0 in range(lo, hi + 1):
        total = -k_degree - 3 * a0
        sq = a0 * a0 - square
        if sq < 0:
            continue
        bound = math.isqrt(sq)
        for tail in _tuples_with(r, total, sq, bound):
            found.append(DivisorClass(r, (a0,) + tail))
    found.sort()
    return found


def _tuples_with(n: int, total: int, sq: int, bound: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        if total == 0 and sq == 0:
            yield ()
        return
    for a in range(-bound, bound + 1):
        rest_sq = sq - a * a
        if rest_sq < 0:
            continue
        rest_total = total - a
        # Cauchy-Schwarz on the remaining n-1 entries
        if rest_total * rest_total > (n - 1) * rest_sq:
            continue
        for tail in _tuples_with(n - 1, rest_total, rest_sq, bound):
            yield (a,) + tail


# -- exceptional systems on S_8 ----------------------------------------------

@dataclass(frozen=True)
class RootOrbit:
    root: DivisorClass


@dataclass(frozen=True)
class SkewOrbit:
    skew8: DivisorClass
    witness: tuple[int, ...]


def classify_exceptional_system(D: DivisorClass) -> RootOrbit | SkewOrbit:
    """Place an exceptional system of S_8 in the root orbit or the skew-8-line orbit."""
    if D.r != 8 or not EXCEPTIONAL_SYSTEM.admits(D):
        raise DomainError(f"{D} is not an exceptional system on S_8")
    K = canonical(8)
    shifted = D + 3 * K
    root_branch = None
    if shifted.divisible_by(2):
        d = shifted.divide(2)
        if is_root(d):
            root_branch = RootOrbit(d)
    D1 = 3 * D + K
    witness = find_skew_witnesses(D1, 8)
    if root_branch is not None and witness:
        raise InvariantError(f"{D} lies in both orbits")
    if root_branch is not None:
        return root_branch
    if len(witness) != 1:
        raise InvariantError(f"{D} lies in neither orbit (witnesses: {len(witness)})")
    return SkewOrbit(D1, witness[0])


# -- skew a-lines ---------------------------------------------------------------

@dataclass(frozen=True)
class SkewLineCatalog:
    r: int
    a: int
    entries: tuple[tuple[DivisorClass, tuple[int, ...]], ...]

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def sums(self) -> frozenset[DivisorClass]:
        return frozenset(s for s, _ in self.entries)

    @property
    def witness_unique(self) -> bool:
        return len(self.sums) == len(self.entries)


@lru_cache(maxsize=None)
def skew_a_lines(r: int, a: int) -> SkewLineCatalog:
    """One entry (sum, witness clique) per set of a pairwise disjoint lines."""
    check_rank(r)
    if not 1 <= a <= r:
        raise DomainError(f"skew a-lines need 1 <= a <= r, got a={a}, r={r}")
    lines = enumerate_lines(r)
    adj = lines.adjacency(0)
    vecs = [c.coeffs for c in lines.classes]
    entries = []
    packed = [cliques.pack(v) for v in vecs]
    for clique in cliques.iter_cliques(adj, a):
        total = cliques.unpack(sum(packed[i] for i in clique), r + 1)
        entries.append((DivisorClass.trusted(r, total), clique))
    entries.sort()
    return SkewLineCatalog(r, a, tuple(entries))


def find_skew_witnesses(D: DivisorClass, r: int | None = None) -> list[tuple[int, ...]]:
    """All sets of pairwise disjoint lines summing to D (as sorted index tuples)."""
    r = D.r if r is None else r
    kind_a = -pairing(D, canonical(r))
    if kind_a < 1 or kind_a > r or pairing(D, D) != -kind_a:
        return []
    lines = enumerate_lines(r)
    # every member l of a witness has l.D = l^2 = -1
    cand = 0
    for i, l in enumerate(lines.classes):
        if pairing_vec(l.coeffs, D.coeffs) == -1:
            cand |= 1 << i
    adj = lines.adjacency(0)
    restricted = [a & cand for a in adj]
    out = []
    for first in cliques.bits(cand):
        for clique in cliques.iter_cliques_from(restricted, kind_a, first):
            if sum((lines[i] for i in clique[1:]), lines[clique[0]]) == D:
                out.append(clique)
    return out


def split_skew(D: DivisorClass) -> tuple[int, ...]:
    """The unique disjoint-line witness of a skew a-line."""
    found = find_skew_witnesses(D)
    if len(found) != 1:
        raise InvariantError(f"{D} has {len(found)} disjoint-line witnesses, expected exactly 1")
    return found[0]


def split_skew2(S: DivisorClass) -> tuple[int, int]:
    """Recover the pair (l, S - l) of disjoint lines from a skew 2-line S."""
    lines = enumerate_lines(S.r)
    pairs = set()
    for i, l in enumerate(lines.classes):
        rest = S - l
        j = lines.index.get(rest)
        if j is not None and pairing(l, rest) == 0:
            pairs.add((min(i, j), max(i, j)))
    if len(pairs) != 1:
        raise InvariantError(f"{S} splits into {len(pairs)} disjoint pairs, expected exactly 1")
    return pairs.pop()


# -- neighborhoods and transforms ------------------------------------------------

def neighborhood(catalog: ClassCatalog, l: int, k: int) -> int:
    """Bitset of lines meeting line ``l`` with intersection number k (N_k)."""
    if not 0 <= l < len(catalog):
        raise DomainError(f"line index {l} out of range")
    if k == -1:
        return 1 << l
    return catalog.adjacency(k)[l]


def _require_line(l: DivisorClass, r: int | None = None) -> None:
    if (r is not None and l.r != r) or not LINE.admits(l):
        where = f"S_{r}" if r is not None else f"S_{l.r}"
        raise DomainError(f"{l} is not a line on {where}")


def gieser(l: DivisorClass) -> DivisorClass:
    """G(l) = -(K + l) on S_7."""
    _require_line(l, 7)
    return -(canonical(7) + l)


def bertini(l: DivisorClass) -> DivisorClass:
    """B(l) = -(2K + l) on S_8."""
    _require_line(l, 8)
    return -(2 * canonical(8) + l)


def gieser_at(l: DivisorClass, lp: DivisorClass) -> DivisorClass:
    """Gieser transform of lp inside the vertex figure of l on S_8: -(K - l) - lp."""
    _require_line(l, 8)
    _require_line(lp, 8)
    if pairing(l, lp) != 0:
        raise DomainError(f"{l} and {lp} are not disjoint")
    return l - canonical(8) - lp


# -- blow-down --------------------------------------------------------------

@dataclass(frozen=True)
class BlowDown:
    """A Weyl word taking a line l to e_r, and the induced map N_0(l) -> L_{r-1}.

    ``word`` lists simple-root indices in application order (index 0 is d_0).
    """

    r: int
    line: DivisorClass
    word: tuple[int, ...]

    def apply(self, D: DivisorClass) -> DivisorClass:
        roots = simple_roots(self.r)
        v = D.coeffs
        for k in self.word:
            v = reflect_vec(roots[k].coeffs, v)
        return DivisorClass(self.r, v)

    def restrict(self, D: DivisorClass) -> DivisorClass:
        """Image in Pic S_{r-1} of a class orthogonal to the line."""
        w = self.apply(D)
        if w.coeffs[-1] != 0:
            raise DomainError(f"{D} is not orthogonal to {self.line}")
        return DivisorClass(self.r - 1, w.coeffs[:-1])


def blow_down_basis(l: DivisorClass) -> BlowDown:
    """Weyl descent from l to e_r.

    e_r pairs non-negatively with every simple root, and it is the only line
    that does, so reflecting in any simple root with negative pairing strictly
    approaches it; the Weyl group is finite for r <= 8, so this terminates.
    """
    _require_line(l)
    r = l.r
    if r < 4:
        raise DomainError("blow-down needs r >= 4")
    roots = [d.coeffs for d in simple_roots(r)]
    word: list[int] = []
    v = l.coeffs
    target = exceptional(r, r).coeffs
    for _ in range(10_000):
        if v == target:
            return BlowDown(r, l, tuple(word))
        step = next((k for k, d in enumerate(roots) if pairing_vec(v, d) < 0), None)
        if step is None:
            break
        v = reflect_vec(roots[step], v)
        word.append(step)
    raise InvariantError(f"Weyl descent failed to reach e_{r} from {l}")


# -- rulings ----------------------------------------------------------------------

def ruling_vertices(f: DivisorClass) -> tuple[tuple[int, int], ...]:
    """The r-1 bipolar pairs (l, f - l) of the crosspolytope attached to a ruling."""
    if not RULING.admits(f):
        raise DomainError(f"{f} is not a ruling")
    lines = enumerate_lines(f.r)
    pairs = []
    for i, l in enumerate(lines.classes):
        if pairing(f, l) != 0:
            continue
        j = lines.index.get(f - l)
        if j is None:
            raise InvariantError(f"{l} meets {f} trivially but {f} - {l} is not a line")
        if i < j:
            pairs.append((i, j))
    if len(pairs) != f.r - 1:
        raise InvariantError(f"ruling {f} has {len(pairs)} bipolar pairs, expected {f.r - 1}")
    return tuple(pairs)


def theorem_k8_failures() -> list[tuple[int, int]]:
    """Pairs l2.l3 = 2 on S_8 for which K + l2 + l3 is not a line disjoint from both."""
    L = enumerate_lines(8)
    K = canonical(8)
    bad = []
    for i, j in cliques.iter_cliques(L.adjacency(2), 2):
        l = K + L[i] + L[j]
        if l not in L or pairing(l, L[i]) != 0 or pairing(l, L[j]) != 0:
            bad.append((i, j))
    return bad


# -- cache files ------------------------------------------------------------------

def write_catalog(path: Path, catalog: ClassCatalog) -> None:
    lines = [json.dumps({"kind": catalog.kind.name, "r": catalog.r, "count": len(catalog)}, sort_keys=True)]
    lines += [json.dumps(c.to_json(), sort_keys=True) for c in catalog.classes]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_catalog(path: Path) -> ClassCatalog:
    raw = path.read_text(encoding="utf-8").splitlines()
    if not raw:
        raise InvariantError(f"{path} is empty")
    header = json.loads(raw[0])
    kind = {k.name: k for k in KIND_NAMES.values()}.get(header["kind"])
    if kind is None:
        raise DomainError(f"unknown kind {header['kind']!r} in {path}")
    classes = [DivisorClass.from_json(line) for line in raw[1:] if line.strip()]
    if len(classes) != header["count"]:
        raise InvariantError(f"{path}: header says {header['count']} classes, found {len(classes)}")
    if any(c.r != header["r"] for c in classes):
        raise InvariantError(f"{path}: rank mismatch")
    return _catalog(kind, header["r"], classes)
