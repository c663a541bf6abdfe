"""Ferrers shapes with at most ``k - 1`` rows and the moves between them.

A shape is a plain tuple of weakly decreasing positive row lengths, e.g.
``(2, 1)``; the empty shape is ``()``.  A step is a signed integer:
``0`` does nothing, ``+r`` adds a square at the end of row ``r`` and ``-r``
removes the last square of row ``r`` (rows are numbered from 1).
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from functools import lru_cache
from typing import Iterator

from .errors import InvalidStep, ParseError

Shape = tuple[int, ...]
Step = int

NOTHING: Step = 0
EMPTY: Shape = ()


def add(row: int) -> Step:
    return row


def remove(row: int) -> Step:
    return -row


def format_step(step: Step) -> str:
    if step == 0:
        return "Nothing"
    return f"Add({step})" if step > 0 else f"Remove({-step})"


def format_shape(shape: Shape) -> str:
    return "[" + ",".join(map(str, shape)) + "]"


def parse_shape(text: str) -> Shape:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"shape must be bracketed, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return EMPTY
    try:
        rows = tuple(int(x) for x in body.split(","))
    except ValueError:
        raise ParseError(f"bad shape {text!r}") from None
    if not is_valid_shape(rows):
        raise ParseError(f"{text!r} is not a Ferrers shape")
    return rows


def is_valid_shape(shape: Shape, k: int | None = None) -> bool:
    if any(r <= 0 for r in shape):
        return False
    if any(a < b for a, b in zip(shape, shape[1:])):
        return False
    return k is None or len(shape) <= k - 1


def size(shape: Shape) -> int:
    return sum(shape)


def apply_step(shape: Shape, step: Step, k: int) -> Shape:
    """Return ``shape`` after ``step``; raise InvalidStep if the move is illegal."""
    if step == 0:
        return shape
    row = abs(step)
    if row > k - 1:
        raise InvalidStep(f"{format_step(step)} exceeds the {k - 1}-row bound")
    rows = list(shape) + [0] * (row - len(shape))
    if step > 0:
        rows[row - 1] += 1
        if row > 1 and rows[row - 1] > rows[row - 2]:
            raise InvalidStep(f"{format_step(step)} on {format_shape(shape)}")
    else:
        if rows[row - 1] == 0:
            raise InvalidStep(f"{format_step(step)} on {format_shape(shape)}: row is empty")
        rows[row - 1] -= 1
        if row < len(rows) and rows[row - 1] < rows[row]:
            raise InvalidStep(f"{format_step(step)} on {format_shape(shape)}")
    while rows and rows[-1] == 0:
        rows.pop()
    return tuple(rows)


def _legal_steps(k: int, allow_nothing: bool) -> Iterator[Step]:
    if allow_nothing:
        yield NOTHING
    yield from range(1, k)
    yield from range(-1, -k, -1)


def successors(shape: Shape, k: int, allow_nothing: bool = True) -> list[tuple[Step, Shape]]:
    """All legal ``(step, result)`` pairs from ``shape`` in canonical order.

    The order is Nothing (if allowed), Add(1)..Add(k-1), Remove(1)..Remove(k-1).
    Sampling walks successors in this order, so changing it changes seeded output.
    """
    out = []
    n_rows = len(shape)
    for step in _legal_steps(k, allow_nothing):
        row = abs(step)
        if step > 0:
            # new square at the end of row `row`
            if row > n_rows + 1:
                continue
            if row > 1 and (shape[row - 1] if row <= n_rows else 0) + 1 > shape[row - 2]:
                continue
        elif step < 0:
            if row > n_rows:
                continue
            if row < n_rows and shape[row - 1] - 1 < shape[row]:
                continue
        out.append((step, apply_step(shape, step, k)))
    return out


def weyl_point(shape: Shape, k: int) -> tuple[int, ...]:
    """Lattice point of ``shape`` in the dominant Weyl chamber: ``(k-1+x1, ..., 1+x_{k-1})``."""
    padded = list(shape) + [0] * (k - 1 - len(shape))
    return tuple(k - 1 - s + padded[s] for s in range(k - 1))


def from_weyl_point(point: tuple[int, ...], k: int) -> Shape:
    rows = [c - (k - 1 - s) for s, c in enumerate(point)]
    while rows and rows[-1] == 0:
        rows.pop()
    return tuple(rows)


class ShapeSpace:
    """Dense indexing of all shapes with at most ``k - 1`` rows and ``max_size`` squares.

    Shapes are numbered in breadth-first order from the empty shape, so they
    come sorted by size and the shapes with at most ``c`` squares always form
    the prefix ``range(self.prefix(c))``.  Consequently the index of a shape
    does not depend on ``max_size``.
    """

    def __init__(self, k: int, max_size: int):
        if k < 2:
            raise ValueError("k must be at least 2")
        self.k = k
        self.max_size = max_size
        self.shapes: list[Shape] = []
        self.index: dict[Shape, int] = {}
        queue = deque([EMPTY])
        self.index[EMPTY] = 0
        while queue:
            shape = queue.popleft()
            self.shapes.append(shape)
            if sum(shape) == max_size:
                continue
            for step, nxt in successors(shape, k, allow_nothing=False):
                if step > 0 and nxt not in self.index:
                    self.index[nxt] = len(self.index)
                    queue.append(nxt)
        self.sizes = [sum(s) for s in self.shapes]
        # sizes are nondecreasing along the index
        self._prefix = [bisect_right(self.sizes, c) for c in range(max_size + 1)]

        # successor indices, restricted to shapes inside the space
        self.moves: list[list[tuple[Step, int]]] = []
        for shape in self.shapes:
            row = []
            for step, nxt in successors(shape, k, allow_nothing=True):
                j = self.index.get(nxt)
                if j is not None:
                    row.append((step, j))
            self.moves.append(row)

    def __len__(self) -> int:
        return len(self.shapes)

    def prefix(self, c: int) -> int:
        """Number of shapes with at most ``c`` squares."""
        if c < 0:
            return 0
        return self._prefix[min(c, self.max_size)]


@lru_cache(maxsize=16)
def shape_space(k: int, max_size: int) -> ShapeSpace:
    return ShapeSpace(k, max_size)


def shape_index(shape: Shape, k: int, n: int) -> int:
    """Dense index of ``shape`` among shapes with at most ``n`` squares."""
    return shape_space(k, n).index[shape]
