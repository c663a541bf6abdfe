"""Brute-force ground truth: crossing/nesting tests and exhaustive enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import TooLarge
from .tableau import PartialMatching

PARTIAL = "partial"
MATCHING = "matching"
STRUCTURE = "structure"
SELECTORS = (PARTIAL, MATCHING, STRUCTURE)

MAX_ENUMERATE = 16


@dataclass(frozen=True)
class DiagramClass:
    selector: str
    k: int

    def __post_init__(self):
        if self.selector not in SELECTORS:
            raise ValueError(f"unknown selector {self.selector!r}")
        if self.k < 2:
            raise ValueError("k must be at least 2")

    def contains(self, m: PartialMatching) -> bool:
        if has_k_crossing(m, self.k):
            return False
        if self.selector == MATCHING and not m.is_matching():
            return False
        if self.selector == STRUCTURE and m.has_one_arc():
            return False
        return True


def _has_chain(arcs, k, extends) -> bool:
    # every k-subset in increasing start order is reached unless a prefix already fails
    def grow(chain, start):
        if len(chain) == k:
            return True
        for t in range(start, len(arcs)):
            if extends(chain, arcs[t]) and grow(chain + [arcs[t]], t + 1):
                return True
        return False

    return grow([], 0)


def has_k_crossing(m: PartialMatching, k: int) -> bool:
    """True iff some arcs satisfy ``i1 < ... < ik < j1 < ... < jk``."""
    def extends(chain, arc):
        if not chain:
            return True
        i, j = arc
        return chain[-1][0] < i < chain[0][1] and j > chain[-1][1]

    return _has_chain(m.arcs, k, extends)


def has_k_nesting(m: PartialMatching, k: int) -> bool:
    """True iff some arcs satisfy ``i1 < ... < ik < jk < ... < j1``."""
    def extends(chain, arc):
        if not chain:
            return True
        i, j = arc
        return chain[-1][0] < i and j < chain[-1][1]

    return _has_chain(m.arcs, k, extends)


def all_partial_matchings(n: int) -> Iterator[PartialMatching]:
    """Every partial matching on ``1..n``: lowest open vertex isolated first, then
    joined to each later free vertex in increasing order."""
    def rec(free: list[int], arcs: list[tuple[int, int]]):
        if not free:
            yield PartialMatching(n, tuple(arcs))
            return
        v, rest = free[0], free[1:]
        yield from rec(rest, arcs)
        for t, w in enumerate(rest):
            yield from rec(rest[:t] + rest[t + 1:], arcs + [(v, w)])

    yield from rec(list(range(1, n + 1)), [])


def enumerate_class(n: int, cls: DiagramClass) -> list[PartialMatching]:
    if n > MAX_ENUMERATE:
        raise TooLarge(f"refusing to enumerate n={n} > {MAX_ENUMERATE}")
    return [m for m in all_partial_matchings(n) if cls.contains(m)]

