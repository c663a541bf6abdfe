"""Exact uniform sampling of partial matchings, perfect matchings and structures.

A sample is a walk over shapes from the empty shape back to the empty shape.
At each step the next shape is drawn with probability proportional to the
number of ways to finish the walk from it, read from a count table; the
product of these probabilities telescopes to ``1 / total``.  The walk is then
turned into a matching by the tableau bijection.
"""

from __future__ import annotations

import random
from collections import Counter
import weakref
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .counting import FORBID, FREE, NO_ONE_ARC, OSCILLATING, STAR, CountTable
from .errors import AllZeroWeights, EmptyClass, ZeroBound
from .tableau import PartialMatching, StarTableau, steps_to_arcs

WORD_BITS = 64
_SEED_MASK = (1 << 64) - 1
# walkers over tables with more entries than this recompute weights every step
CACHE_LIMIT = 100_000


class RandomSource:
    """Seeded stream of uniform 64-bit words (Mersenne Twister underneath)."""

    def __init__(self, seed: int = 0):
        self.seed = seed & _SEED_MASK
        self._rng = random.Random(self.seed)

    def words(self, count: int) -> int:
        """``count`` consecutive words packed into one integer."""
        return self._rng.getrandbits(WORD_BITS * count)

    def word(self) -> int:
        return self.words(1)


def uniform_below(src: RandomSource, bound: int) -> int:
    """Uniform integer in ``[0, bound)`` by rejection on whole words."""
    if bound < 1:
        raise ZeroBound(f"bound must be positive, got {bound}")
    if bound == 1:
        return 0
    n_words = -(-bound.bit_length() // WORD_BITS)
    space = 1 << (WORD_BITS * n_words)
    limit = space - space % bound
    while True:
        x = src.words(n_words)
        if x < limit:
            return x % bound


def weighted_choice(src: RandomSource, weights: Sequence[int]) -> int:
    total = sum(weights)
    if total <= 0:
        raise AllZeroWeights("no positive weight to choose from")
    r = uniform_below(src, total)
    for i, w in enumerate(weights):
        if r < w:
            return i
        r -= w
    raise AssertionError("unreachable")  # pragma: no cover


@dataclass
class SampledPath:
    """Walk of a sample plus the exact probability ``numerator/denominator`` of each step."""

    tableau: StarTableau
    weights: list[tuple[int, int]] = field(default_factory=list)


def trace_probability(path: SampledPath) -> tuple[int, int]:
    p = Fraction(1)
    for num, den in path.weights:
        p *= Fraction(num, den)
    return p.numerator, p.denominator


class _Choice:
    __slots__ = ("total", "cum", "moves")

    def __init__(self, total, cum, moves):
        self.total = total
        self.cum = cum
        self.moves = moves


class Walker:
    """Draws walks weighted by one count table.

    Which objects come out depends on the table class: partial matchings from
    a ``STAR`` table, perfect matchings from ``OSCILLATING`` and structures from
    ``NO_ONE_ARC``.  With ``cache`` set, the successor weights of every visited
    state are kept, so repeated sampling from a small table costs a lookup and
    one bounded draw per step.
    """

    def __init__(self, table: CountTable, cache: bool = True):
        self.table = table
        self.cls = table.cls
        self._cache: dict[tuple[int, int, int], _Choice] | None = {} if cache else None

    def _choices(self, m: int, idx: int, flag: int) -> _Choice:
        key = (m, idx, flag)
        if self._cache is not None:
            choice = self._cache.get(key)
            if choice is not None:
                return choice
        table = self.table
        total = table.at(idx, m, flag)
        cum, moves = [], []
        acc = 0
        for step, j in table.space.moves[idx]:
            if self.cls == OSCILLATING and step == 0:
                continue
            if self.cls == NO_ONE_ARC:
                if flag == FORBID and step == -1:
                    continue
                nflag = FORBID if step == 1 else FREE
                w = table.at(j, m - 1, nflag)
            else:
                nflag = FREE
                w = table.at(j, m - 1)
            if w:
                acc += w
                cum.append(acc)
                moves.append((step, j, nflag, w))
        if acc != total:
            raise AssertionError(f"weights at (m={m}, idx={idx}, flag={flag}) sum to {acc}, "
                                 f"table says {total}")
        choice = _Choice(total, cum, moves)
        if self._cache is not None:
            self._cache[key] = choice
        return choice

    def walk(self, src: RandomSource, record: bool = True) -> tuple[list[int], list[tuple[int, int]]]:
        table = self.table
        if table.total == 0:
            raise EmptyClass(f"no {self.cls} objects of size {table.n} for k={table.k}")
        idx, flag = 0, FREE
        steps: list[int] = []
        weights: list[tuple[int, int]] = []
        for m in range(table.n, 0, -1):
            choice = self._choices(m, idx, flag)
            pos = bisect_right(choice.cum, uniform_below(src, choice.total))
            step, idx, flag, w = choice.moves[pos]
            steps.append(step)
            if record:
                weights.append((w, choice.total))
        return steps, weights

    def sample(self, src: RandomSource, record: bool = True) -> tuple[PartialMatching, SampledPath]:
        steps, weights = self.walk(src, record)
        tab = StarTableau(self.table.k, tuple(steps))
        matching = PartialMatching(self.table.n, tuple(steps_to_arcs(steps)))
        return matching, SampledPath(tab, weights)


_walkers: "weakref.WeakKeyDictionary[CountTable, Walker]" = weakref.WeakKeyDictionary()


def walker_for(table: CountTable) -> Walker:
    w = _walkers.get(table)
    if w is None:
        w = _walkers[table] = Walker(table, cache=table.n_entries() <= CACHE_LIMIT)
    return w


def _check(table: CountTable, k: int, n: int, cls: str) -> None:
    if table.cls != cls:
        raise ValueError(f"expected a {cls} table, got {table.cls}")
    if (table.k, table.n) != (k, n):
        raise ValueError(f"table built for k={table.k}, n={table.n}, not k={k}, n={n}")


def sample_partial_matching(k: int, n: int, star: CountTable, src: RandomSource
                            ) -> tuple[PartialMatching, SampledPath]:
    _check(star, k, n, STAR)
    return walker_for(star).sample(src)


def sample_perfect_matching(k: int, n: int, osc: CountTable, src: RandomSource
                            ) -> tuple[PartialMatching, SampledPath]:
    _check(osc, k, n, OSCILLATING)
    return walker_for(osc).sample(src)


def sample_structure(k: int, n: int, noonearc: CountTable, src: RandomSource
                     ) -> tuple[PartialMatching, SampledPath]:
    _check(noonearc, k, n, NO_ONE_ARC)
    return walker_for(noonearc).sample(src)


# --- batches ----------------------------------------------------------------

_worker_table: CountTable | None = None


def _init_worker(table: CountTable) -> None:
    global _worker_table
    _worker_table = table


def iter_samples(table: CountTable, count: int, seed: int) -> Iterator[PartialMatching]:
    walker = walker_for(table)
    src = RandomSource(seed)
    for _ in range(count):
        yield walker.sample(src, record=False)[0]


def _chunk_list(seed: int, count: int) -> list[PartialMatching]:
    assert _worker_table is not None
    return list(iter_samples(_worker_table, count, seed))


def _chunk_tally(seed: int, count: int) -> Counter:
    assert _worker_table is not None
    return Counter(m.key() for m in iter_samples(_worker_table, count, seed))


def chunk_sizes(count: int, jobs: int) -> list[int]:
    base, extra = divmod(count, jobs)
    return [base + (w < extra) for w in range(jobs)]


def _run_chunks(table: CountTable, count: int, seed: int, jobs: int, fn) -> list:
    sizes = chunk_sizes(count, jobs)
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                             initargs=(table,)) as pool:
        futures = [pool.submit(fn, seed + w, c) for w, c in enumerate(sizes)]
        return [f.result() for f in futures]


def sample_many(table: CountTable, count: int, seed: int, jobs: int = 1) -> list[PartialMatching]:
    """``count`` samples in ordinal order.

    Worker ``w`` draws a contiguous block of ordinals from ``RandomSource(seed + w)``,
    so output is reproducible for a fixed ``jobs``; ``jobs=1`` is one stream.
    """
    if table.total == 0:
        raise EmptyClass(f"no {table.cls} objects of size {table.n} for k={table.k}")
    if jobs <= 1 or count < 2:
        return list(iter_samples(table, count, seed))
    out: list[PartialMatching] = []
    for part in _run_chunks(table, count, seed, jobs, _chunk_list):
        out.extend(part)
    return out


def tally(table: CountTable, count: int, seed: int, jobs: int = 1) -> Counter:
    """Multiplicity of each sampled object (keyed by its arc list), same seeding as sample_many."""
    if table.total == 0:
        raise EmptyClass(f"no {table.cls} objects of size {table.n} for k={table.k}")
    if jobs <= 1 or count < 2:
        return Counter(m.key() for m in iter_samples(table, count, seed))
    total: Counter = Counter()
    for part in _run_chunks(table, count, seed, jobs, _chunk_tally):
        total.update(part)
    return total
