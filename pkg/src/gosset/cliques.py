"""Fixed-size clique enumeration over bitset adjacency.

A graph on n vertices is a list ``adj`` of Python ints; bit j of ``adj[i]``
is set iff i and j are adjacent. Cliques are produced as increasing index
tuples, each exactly once, by only extending with vertices larger than the
last one chosen. Work is partitioned by the first (smallest) vertex so
partitions can run in separate processes and be merged in index order.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterator, Sequence, TypeVar

T = TypeVar("T")


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def above(i: int) -> int:
    """Mask of indices strictly greater than i (infinite upward, clipped by adj)."""
    return ~((1 << (i + 1)) - 1)


def iter_cliques_from(adj: Sequence[int], size: int, first: int) -> Iterator[tuple[int, ...]]:
    """All cliques of ``size`` vertices whose smallest vertex is ``first``."""
    if size == 1:
        yield (first,)
        return

    def grow(clique: tuple[int, ...], cand: int) -> Iterator[tuple[int, ...]]:
        if len(clique) == size - 1:
            for j in bits(cand):
                yield clique + (j,)
            return
        need = size - len(clique)
        while cand:
            if cand.bit_count() < need:
                return
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            yield from grow(clique + (j,), cand & adj[j])

    yield from grow((first,), adj[first] & above(first))


def iter_cliques(adj: Sequence[int], size: int) -> Iterator[tuple[int, ...]]:
    """Every clique of the given size, in lexicographic order."""
    for i in range(len(adj)):
        yield from iter_cliques_from(adj, size, i)


def count_cliques_from(adj: Sequence[int], size: int, first: int) -> int:
    """Count cliques with smallest vertex ``first`` without materializing them."""
    if size == 1:
        return 1

    def grow(depth: int, cand: int) -> int:
        # depth = vertices already chosen
        if depth == size - 1:
            return cand.bit_count()
        total = 0
        need = size - depth
        while cand:
            if cand.bit_count() < need:
                break
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            total += grow(depth + 1, cand & adj[j])
        return total

    return grow(1, adj[first] & above(first))


def count_cliques(adj: Sequence[int], size: int, threads: int = 1) -> int:
    if size == 0:
        return 1
    parts = run_partitions(_count_part, adj, range(len(adj)), threads, size)
    return sum(parts)


def clique_sums_from(adj: Sequence[int], size: int, first: int, packed: Sequence[int]) -> set[int]:
    """Distinct sums of ``packed[v]`` over cliques starting at ``first``.

    ``packed`` holds integer encodings whose addition is compatible with the
    addition of the underlying vectors (see ``pack``), so a clique's center
    is accumulated with plain integer additions.
    """
    out: set[int] = set()
    if size == 1:
        out.add(packed[first])
        return out

    def grow(depth: int, cand: int, acc: int) -> None:
        if depth == size - 1:
            for j in bits(cand):
                out.add(acc + packed[j])
            return
        need = size - depth
        while cand:
            if cand.bit_count() < need:
                return
            low = cand & -cand
            j = low.bit_length() - 1
            cand ^= low
            grow(depth + 1, cand & adj[j], acc + packed[j])

    grow(1, adj[first] & above(first), packed[first])
    return out


# -- packed vectors ---------------------------------------------------------

FIELD_BITS = 8
_FIELD_MASK = (1 << FIELD_BITS) - 1
_HALF = 1 << (FIELD_BITS - 1)


def pack(vec: Sequence[int]) -> int:
    """Encode a short signed vector as one int; pack(u) + pack(v) == pack(u + v).

    Decoding is unambiguous while every coordinate of a sum stays in
    [-128, 127]; sums of at most 8 lines have coordinates bounded by 48.
    """
    return sum(c << (FIELD_BITS * i) for i, c in enumerate(vec))


def unpack(x: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        c = x & _FIELD_MASK
        if c >= _HALF:
            c -= 1 << FIELD_BITS
        out.append(c)
        x = (x - c) >> FIELD_BITS
    if x != 0:
        raise OverflowError("packed value does not fit the requested length")
    return tuple(out)


# -- partitioned execution --------------------------------------------------

_WORKER_ADJ: Sequence[int] = ()
_WORKER_EXTRA: object = None


def _init_worker(adj: Sequence[int], extra: object) -> None:
    global _WORKER_ADJ, _WORKER_EXTRA
    _WORKER_ADJ = adj
    _WORKER_EXTRA = extra


def _count_part(first: int, size: int) -> int:
    return count_cliques_from(_WORKER_ADJ, size, first)


def _sums_part(first: int, size: int) -> set[int]:
    return clique_sums_from(_WORKER_ADJ, size, first, _WORKER_EXTRA)  # type: ignore[arg-type]


def resolve_threads(threads: int) -> int:
    if threads <= 0:
        return os.cpu_count() or 1
    return threads


def run_partitions(
    func: Callable[[int, int], T],
    adj: Sequence[int],
    firsts: Sequence[int],
    threads: int,
    size: int,
    extra: object = None,
) -> list[T]:
    """Evaluate ``func(first, size)`` per partition; results in ``firsts`` order."""
    threads = resolve_threads(threads)
    if threads == 1 or len(firsts) < 2:
        _init_worker(adj, extra)
        return [func(i, size) for i in firsts]
    with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=(list(adj), extra)) as pool:
        return list(pool.map(func, firsts, [size] * len(firsts), chunksize=max(1, len(firsts) // (4 * threads))))


def clique_sums(adj: Sequence[int], size: int, packed: Sequence[int], threads: int = 1) -> set[int]:
    parts = run_partitions(_sums_part, adj, range(len(adj)), threads, size, list(packed))
    out: set[int] = set()
    for p in parts:
        out |= p
    return out
