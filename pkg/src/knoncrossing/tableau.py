"""RSK row insertion, its reverse, and the bijection between star-tableaux
(shape walks from empty to empty) and k-noncrossing partial matchings.

Tableaux use the usual increasing convention: entries increase along rows
and down columns.  A tableau is a tuple of rows, each a tuple of ints.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DuplicateEntry, InvalidRemoval, InvalidStep, RowBoundExceeded
from .shapes import EMPTY, Shape, Step, apply_step, format_step

YoungTableau = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class StarTableau:
    """A walk of shapes with at most ``k - 1`` rows, encoded by its steps."""

    k: int
    steps: tuple[Step, ...]

    @property
    def n(self) -> int:
        return len(self.steps)

    def shapes(self) -> list[Shape]:
        """The shape sequence ``lambda^0 .. lambda^n``; raises InvalidStep if illegal."""
        shape = EMPTY
        out = [shape]
        for st in self.steps:
            shape = apply_step(shape, st, self.k)
            out.append(shape)
        return out

    def validate(self) -> None:
        if self.shapes()[-1] != EMPTY:
            raise InvalidStep("star-tableau does not return to the empty shape")

    def is_oscillating(self) -> bool:
        return 0 not in self.steps

    def __str__(self) -> str:
        return " ".join(format_step(s) for s in self.steps)


@dataclass(frozen=True)
class PartialMatching:
    """Vertex set ``1..n`` with pairwise disjoint arcs ``(i, j)``, ``i < j``.

    Arcs are kept sorted by their first endpoint, so equal matchings compare equal.
    """

    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arcs = tuple(sorted((min(a), max(a)) for a in self.arcs))
        seen = set()
        for i, j in arcs:
            if not (1 <= i < j <= self.n):
                raise ValueError(f"arc ({i},{j}) outside 1..{self.n}")
            if i in seen or j in seen:
                raise ValueError(f"vertex reused in arc ({i},{j})")
            seen.update((i, j))
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "PartialMatching":
        return cls(n, tuple(arcs))

    def partner(self) -> list[int]:
        """``partner[v]`` is the other end of the arc at ``v``, or 0 if ``v`` is isolated."""
        p = [0] * (self.n + 1)
        for i, j in self.arcs:
            p[i], p[j] = j, i
        return p

    def isolated(self) -> list[int]:
        p = self.partner()
        return [v for v in range(1, self.n + 1) if p[v] == 0]

    def is_matching(self) -> bool:
        return 2 * len(self.arcs) == self.n

    def has_one_arc(self) -> bool:
        return any(j == i + 1 for i, j in self.arcs)

    def key(self) -> str:
        return " ".join(f"{i}-{j}" for i, j in self.arcs)


def _insert(rows: list[list[int]], j: int) -> int:
    """Row-insert ``j`` into ``rows`` in place; return the (0-based) row that grew."""
    r = 0
    while r < len(rows):
        row = rows[r]
        pos = bisect_right(row, j)
        if pos == len(row):
            row.append(j)
            return r
        row[pos], j = j, row[pos]
        r += 1
    rows.append([j])
    return r


def _extract(rows: list[list[int]], r: int) -> int:
    """Reverse row insertion from the last square of row ``r`` (0-based), in place."""
    x = rows[r].pop()
    if not rows[r]:
        rows.pop()
    for q in range(r - 1, -1, -1):
        row = rows[q]
        pos = bisect_left(row, x) - 1
        row[pos], x = x, row[pos]
    return x


def _thaw(t: YoungTableau) -> list[list[int]]:
    return [list(row) for row in t]


def _freeze(rows: list[list[int]]) -> YoungTableau:
    return tuple(tuple(row) for row in rows)


def rsk_insert(t: YoungTableau, j: int) -> YoungTableau:
    if any(j in row for row in t):
        raise DuplicateEntry(f"{j} already in tableau")
    rows = _thaw(t)
    _insert(rows, j)
    return _freeze(rows)


def extract(t: YoungTableau, r: int) -> tuple[YoungTableau, int]:
    """Remove the last square of row ``r`` (1-based) by reverse bumping.

    Returns the smaller tableau and the entry ejected from the first row; inserting
    that entry into the result gives back ``t``.
    """
    if not (1 <= r <= len(t)):
        raise InvalidRemoval(f"row {r} is empty")
    if r < len(t) and len(t[r - 1]) == len(t[r]):
        raise InvalidRemoval(f"last square of row {r} is not a corner")
    rows = _thaw(t)
    j = _extract(rows, r - 1)
    return _freeze(rows), j


def steps_to_arcs(steps: Sequence[Step]) -> list[tuple[int, int]]:
    """Arcs of the partial matching encoded by a (valid) star-tableau step sequence."""
    rows: list[list[int]] = []
    arcs = []
    for i, st in enumerate(steps, 1):
        if st > 0:
            r = st - 1
            if r == len(rows):
                rows.append([i])
            else:
                rows[r].append(i)
        elif st < 0:
            arcs.append((_extract(rows, -st - 1), i))
    return arcs


def tableau_to_matching(t: StarTableau) -> PartialMatching:
    return PartialMatching(t.n, tuple(steps_to_arcs(t.steps)))


def matching_to_tableau(m: PartialMatching, k: int) -> StarTableau:
    """Star-tableau of ``m``; raises RowBoundExceeded if ``m`` has a k-crossing.

    Vertices are read from ``n`` down to 1.  The tableau held after reading vertex
    ``j`` is the one the forward direction holds after step ``j - 1``, so each
    step of the result is the inverse of the move made while reading.
    """
    partner = m.partner()
    rows: list[list[int]] = []
    steps = []
    for j in range(m.n, 0, -1):
        p = partner[j]
        if p == 0:
            steps.append(0)
        elif p < j:
            r = _insert(rows, p)
            if r + 1 > k - 1:
                raise RowBoundExceeded(f"matching needs {r + 1} rows, bound is {k - 1}")
            steps.append(-(r + 1))
        else:
            # j is the largest entry, so it sits at the end of some row
            for r, row in enumerate(rows):
                if row[-1] == j:
                    row.pop()
                    if not row:
                        rows.pop(r)
                    break
            else:  # pragma: no cover - partner table is consistent
                raise AssertionError(f"{j} not found in tableau")
            steps.append(r + 1)
    steps.reverse()
    return StarTableau(k, tuple(steps))
