"""Exact count tables over shapes, plus closed forms used to cross-check them.

Three classes of walks from a shape back to the empty shape are counted:

* ``OSCILLATING``: every step adds or removes a square,
* ``STAR``: "do nothing" steps are allowed as well,
* ``NO_ONE_ARC``: star walks with no Add(1) immediately followed by Remove(1).
  These carry a memory flag, ``FORBID`` meaning the previous step was Add(1).

Entry ``(empty, n)`` of the three tables is the number of k-noncrossing perfect
matchings, partial matchings and RNA structures on ``n`` vertices.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations
from typing import Iterator

from .errors import OutOfRange, TruncationTooSmall
from .shapes import EMPTY, Shape, ShapeSpace, shape_space, weyl_point

OSCILLATING = "oscillating"
STAR = "star"
NO_ONE_ARC = "no_one_arc"
CLASSES = (OSCILLATING, STAR, NO_ONE_ARC)

FREE = 0
FORBID = 1


class PascalTable:
    """All binomial coefficients ``B(a, b)`` for ``0 <= b <= a <= size``."""

    def __init__(self, size: int):
        self.size = size
        rows = [[1]]
        for a in range(1, size + 1):
            prev = rows[-1]
            rows.append([1] + [prev[b - 1] + prev[b] for b in range(1, a)] + [1])
        self.rows = rows

    def __call__(self, a: int, b: int) -> int:
        # out-of-range lower index reads as 0
        if a < 0 or b < 0 or b > a:
            return 0
        if a > self.size:
            return math.comb(a, b)
        return self.rows[a][b]


class CountTable:
    """Count table of one class for walks of total length ``n``.

    Layer ``m`` holds the counts for ``m`` remaining steps, for every shape a
    length-``n`` walk from the empty shape can be in at that point, i.e. shapes
    with at most ``min(m, n - m)`` squares.  These form a prefix of the shape
    index, so each layer is a plain list.
    """

    def __init__(self, k: int, n: int, cls: str, space: ShapeSpace,
                 layers: list[list[int]], forbid_layers: list[list[int]] | None = None):
        self.k = k
        self.n = n
        self.cls = cls
        self.space = space
        self.layers = layers
        self.forbid_layers = forbid_layers

    def __repr__(self) -> str:
        return f"CountTable(k={self.k}, n={self.n}, cls={self.cls!r})"

    @property
    def total(self) -> int:
        return self.layers[self.n][0]

    def n_entries(self) -> int:
        count = sum(map(len, self.layers))
        if self.forbid_layers is not None:
            count += sum(map(len, self.forbid_layers))
        return count

    def entry(self, shape: Shape, m: int, flag: int = FREE) -> int:
        if not 0 <= m <= self.n:
            raise OutOfRange(f"remaining length {m} outside 0..{self.n}")
        s = sum(shape)
        if s > m or len(shape) > self.k - 1:
            return 0
        if s > self.n - m:
            raise OutOfRange(f"shape of size {s} not covered at m={m} (n={self.n})")
        return self.at(self.space.index[shape], m, flag)

    def at(self, idx: int, m: int, flag: int = FREE) -> int:
        """Entry by shape index; indices past the stored prefix read as 0."""
        if flag == FORBID:
            if self.forbid_layers is None:
                raise ValueError(f"{self.cls} table has no memory flag")
            layer = self.forbid_layers[m]
        else:
            layer = self.layers[m]
        return layer[idx] if idx < len(layer) else 0


def _caps(n: int) -> list[int]:
    return [min(m, n - m) for m in range(n + 1)]


def _transfer_layers(k: int, n: int, cls: str, space: ShapeSpace
                     ) -> Iterator[tuple[int, list[int], list[int] | None]]:
    """Yield ``(m, free_layer, forbid_layer)`` for ``m = 0..n``."""
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    caps = _caps(n)
    moves = space.moves
    if cls == STAR:
        succ = [[j for _, j in mv] for mv in moves]
    elif cls == OSCILLATING:
        succ = [[j for s, j in mv if s != 0] for mv in moves]
    else:
        free_succ = [[j for s, j in mv if s != 1] for mv in moves]
        forbid_succ = [[j for s, j in mv if s not in (1, -1)] for mv in moves]
        add_one = [next(j for s, j in mv if s == 1) if any(s == 1 for s, _ in mv) else -1
                   for mv in moves]

    prev = [1]
    prev_forbid = [1] if cls == NO_ONE_ARC else None
    yield 0, prev, prev_forbid
    for m in range(1, n + 1):
        size = space.prefix(caps[m])
        reach = space.prefix(caps[m] + 1)
        # pad the previous layer so every successor index is addressable
        prev = prev + [0] * (reach - len(prev))
        get = prev.__getitem__
        if cls != NO_ONE_ARC:
            cur = [sum(map(get, succ[i])) for i in range(size)]
            yield m, cur, None
            prev = cur
            continue
        prev_forbid = prev_forbid + [0] * (reach - len(prev_forbid))
        cur = []
        cur_forbid = []
        for i in range(size):
            ai = add_one[i]
            a = prev_forbid[ai] if ai >= 0 else 0
            cur.append(sum(map(get, free_succ[i])) + a)
            cur_forbid.append(sum(map(get, forbid_succ[i])) + a)
        yield m, cur, cur_forbid
        prev, prev_forbid = cur, cur_forbid


def build_tables(k: int, n: int, cls: str) -> CountTable:
    """Fill the count table of ``cls`` by the one-step transfer recursion."""
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    space = shape_space(k, n // 2 + 1)
    layers = []
    forbid = [] if cls == NO_ONE_ARC else None
    for _, cur, cur_forbid in _transfer_layers(k, n, cls, space):
        layers.append(cur)
        if forbid is not None:
            forbid.append(cur_forbid)
    return CountTable(k, n, cls, space, layers, forbid)


def count_sequence(k: int, n: int, cls: str) -> list[int]:
    """Class counts on ``0..n`` vertices, keeping only one layer in memory.

    Entry ``m`` of the length-``n`` table at the empty shape is the count on
    ``m`` vertices, since it is only truncated to shapes of size ``<= n - m``.
    """
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    space = shape_space(k, n // 2 + 1)
    return [cur[0] for _, cur, _ in _transfer_layers(k, n, cls, space)]


def count(k: int, n: int, cls: str) -> int:
    return count_sequence(k, n, cls)[-1]


def _parity_terms(m: int, shape: Shape) -> range:
    # only walks whose number of nonempty steps has the parity of |shape| survive
    return range((m - sum(shape)) % 2, m + 1, 2)


def star_from_oscillating(shape: Shape, m: int, osc: CountTable, pas: PascalTable) -> int:
    """Star count as a binomial convolution over the positions of "nothing" steps."""
    return sum(pas(m, j) * osc.entry(shape, m - j) for j in _parity_terms(m, shape))


def W_inclusion_exclusion(shape: Shape, m: int, star: CountTable, pas: PascalTable) -> int:
    """Walks avoiding Add(1)-Remove(1) by inclusion-exclusion over inserted pairs."""
    return sum((-1) ** b * pas(m - b, b) * star.entry(shape, m - 2 * b)
               for b in range(m // 2 + 1))


def count_structures(k: int, n: int) -> int:
    """k-noncrossing partial matchings on ``n`` vertices without arcs ``(i, i+1)``."""
    star = count_sequence(k, n, STAR)
    pas = PascalTable(n)
    return sum((-1) ** b * pas(n - b, b) * star[n - 2 * b] for b in range(n // 2 + 1))


def ballot_F(n: int, h: int, pas: PascalTable) -> int:
    """Up/down paths of length ``n`` from height 0 to ``h`` that never go below 0."""
    if n < 0 or h < 0 or h > n or (n - h) % 2:
        return 0
    d = (n - h) // 2
    return pas(n, d) - pas(n, d - 1)


def lgv_t(n: int, h1: int, h2: int, pas: PascalTable) -> int:
    """Pairs of non-intersecting ballot paths, shifted apart by 2, as a 2x2 determinant."""
    return (ballot_F(n + 2, h1 + 2, pas) * ballot_F(n, h2, pas)
            - ballot_F(n + 2, h2, pas) * ballot_F(n, h1 + 2, pas))


def closed3_oscillating(shape: Shape, m: int, pas: PascalTable) -> int:
    x1, x2 = (tuple(shape) + (0, 0))[:2]
    if len(shape) > 2:
        return 0
    return lgv_t(m, x1 + x2, x1 - x2, pas)


def closed3_star(shape: Shape, m: int, pas: PascalTable) -> int:
    """Star count for ``k = 3`` from the two-path determinant."""
    if len(shape) > 2:
        return 0
    x1, x2 = (tuple(shape) + (0, 0))[:2]
    h1, h2 = x1 + x2, x1 - x2
    return sum(pas(m, j) * lgv_t(m - j, h1, h2, pas) for j in _parity_terms(m, shape))


# --- Bessel determinant -----------------------------------------------------

def _bessel_series(r: int, degree: int) -> list[Fraction]:
    """Coefficients of ``I_r(2x) = sum_j x^(2j+r) / (j! (r+j)!)`` up to ``x^degree``."""
    r = abs(r)
    coeffs = [Fraction(0)] * (degree + 1)
    j = 0
    while 2 * j + r <= degree:
        coeffs[2 * j + r] = Fraction(1, math.factorial(j) * math.factorial(r + j))
        j += 1
    return coeffs


def _series_mul(a: list[Fraction], b: list[Fraction], degree: int) -> list[Fraction]:
    out = [Fraction(0)] * (degree + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(degree + 1 - i):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def _perm_sign(p: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def egf_determinant_check(k: int, n: int, shape: Shape = EMPTY,
                          degree: int | None = None) -> int:
    """Oscillating count ``(shape, n)`` read off the Bessel-determinant EGF.

    Builds ``det[I_{a_i-b_j}(2x) - I_{a_i+b_j}(2x)]`` as an exact power series
    truncated at ``degree`` (default ``n + 2``), with ``a`` the Weyl point of the
    empty shape and ``b`` that of ``shape``, and returns ``n! [x^n]``.
    """
    if degree is None:
        degree = n + 2
    if n > degree:
        raise TruncationTooSmall(f"coefficient {n} requested from a degree-{degree} series")
    a = weyl_point(EMPTY, k)
    b = weyl_point(shape, k)
    d = k - 1
    matrix = []
    for i in range(d):
        row = []
        for j in range(d):
            lo = _bessel_series(a[i] - b[j], degree)
            hi = _bessel_series(a[i] + b[j], degree)
            row.append([x - y for x, y in zip(lo, hi)])
        matrix.append(row)
    det = [Fraction(0)] * (degree + 1)
    one = [Fraction(1)] + [Fraction(0)] * degree
    for p in permutations(range(d)):
        term = one
        for i in range(d):
            term = _series_mul(term, matrix[i][p[i]], degree)
        sign = _perm_sign(p)
        det = [x + sign * y for x, y in zip(det, term)]
    value = det[n] * math.factorial(n)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral coefficient {value}")
    return int(value)
