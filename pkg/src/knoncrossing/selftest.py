"""Cross-check suites run by ``knoncrossing selftest``.

Each suite returns ``(ok, detail)``.  Suites compare independent routes to
the same numbers: transfer-recursion tables, brute-force enumeration, the
two-row closed forms, the Bessel determinant and the sampler's own
telescoping probabilities.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Callable

from . import counting as C
from .cache import CacheError, load_table
from .oracle import MATCHING, PARTIAL, STRUCTURE, DiagramClass, enumerate_class
from .sampler import RandomSource, walker_for, trace_probability
from .tableau import StarTableau, matching_to_tableau, tableau_to_matching

TABLE_OF = {PARTIAL: C.STAR, MATCHING: C.OSCILLATING, STRUCTURE: C.NO_ONE_ARC}

Result = tuple[bool, str]


def dp_vs_oracle(max_n: int = 10) -> Result:
    checked = 0
    for k in (2, 3, 4):
        for sel, cls in TABLE_OF.items():
            seq = C.count_sequence(k, max_n, cls)
            for n in range(max_n + 1):
                brute = len(enumerate_class(n, DiagramClass(sel, k)))
                if brute != seq[n]:
                    return False, f"k={k} {sel} n={n}: table {seq[n]} vs enumeration {brute}"
                checked += 1
    return True, f"{checked} counts agree"


def closed_forms(max_m: int = 30) -> Result:
    pas = C.PascalTable(2 * max_m + 4)
    osc = C.build_tables(3, 2 * max_m, C.OSCILLATING)
    star = C.build_tables(3, 2 * max_m, C.STAR)
    checked = 0
    for shape in osc.space.shapes:
        for m in range(sum(shape), max_m + 1):
            if C.closed3_oscillating(shape, m, pas) != osc.entry(shape, m):
                return False, f"oscillating {shape} m={m}"
            if C.closed3_star(shape, m, pas) != star.entry(shape, m):
                return False, f"star {shape} m={m}"
            checked += 1
    return True, f"{checked} (shape, m) pairs agree"


def star_convolution(max_m: int = 20) -> Result:
    pas = C.PascalTable(2 * max_m)
    for k in (3, 4):
        osc = C.build_tables(k, 2 * max_m, C.OSCILLATING)
        star = C.build_tables(k, 2 * max_m, C.STAR)
        for shape in star.space.shapes:
            for m in range(sum(shape), max_m + 1):
                if C.star_from_oscillating(shape, m, osc, pas) != star.entry(shape, m):
                    return False, f"k={k} {shape} m={m}"
    return True, "star = binomial convolution of oscillating"


def one_arc_inclusion_exclusion(max_m: int = 20) -> Result:
    pas = C.PascalTable(2 * max_m)
    for k in (3, 4):
        star = C.build_tables(k, 2 * max_m, C.STAR)
        good = C.build_tables(k, 2 * max_m, C.NO_ONE_ARC)
        for shape in star.space.shapes:
            for m in range(sum(shape), max_m + 1):
                if C.W_inclusion_exclusion(shape, m, star, pas) != good.entry(shape, m):
                    return False, f"k={k} {shape} m={m}"
        for n in range(max_m + 1):
            if C.count_structures(k, n) != good.entry((), n):
                return False, f"structure count k={k} n={n}"
    return True, "inclusion-exclusion matches the memory-flag table"


def egf(max_n: int = 12) -> Result:
    for k in (3, 4):
        seq = C.count_sequence(k, max_n, C.OSCILLATING)
        for n in range(max_n + 1):
            got = C.egf_determinant_check(k, n)
            if got != seq[n]:
                return False, f"k={k} n={n}: determinant {got} vs table {seq[n]}"
    return True, "Bessel determinant coefficients match"


def bijection(max_n: int = 8) -> Result:
    count = 0
    for k in (2, 3, 4):
        for n in range(max_n + 1):
            for m in enumerate_class(n, DiagramClass(PARTIAL, k)):
                t = matching_to_tableau(m, k)
                t.validate()
                if tableau_to_matching(t) != m:
                    return False, f"round trip failed for {m.key()} (k={k})"
                count += 1
    return True, f"{count} matchings round-trip"


def trace(samples: int = 200) -> Result:
    for cls in (C.STAR, C.NO_ONE_ARC, C.OSCILLATING):
        table = C.build_tables(3, 12, cls)
        walker = walker_for(table)
        src = RandomSource(2024)
        for _ in range(samples):
            m, path = walker.sample(src)
            if trace_probability(path) != (1, table.total):
                return False, f"{cls}: path probability is not 1/{table.total}"
            if tableau_to_matching(StarTableau(3, path.tableau.steps)) != m:
                return False, f"{cls}: sample disagrees with its own path"
    return True, f"{3 * samples} paths have probability exactly 1/count"


def cache_check(directory: str | os.PathLike) -> Result:
    files = sorted(Path(directory).glob("*.tbl"))
    for f in files:
        try:
            table = load_table(f)
        except CacheError as exc:
            return False, str(exc)
        fresh = C.build_tables(table.k, table.n, table.cls)
        if table.layers != fresh.layers or table.forbid_layers != fresh.forbid_layers:
            return False, f"{f.name}: count mismatch against a fresh build"
    return True, f"{len(files)} cached tables verified"


SUITES: dict[str, Callable[[], Result]] = {
    "dp-vs-oracle": dp_vs_oracle,
    "closed-forms-k3": closed_forms,
    "star-from-oscillating": star_convolution,
    "lemma7-inclusion-exclusion": one_arc_inclusion_exclusion,
    "egf-determinant": egf,
    "bijection-roundtrip": bijection,
    "trace-probability": trace,
}


def run(cache: str | os.PathLike | None = None) -> list[tuple[str, bool, str]]:
    suites = dict(SUITES)
    if cache is not None:
        suites["cache"] = lambda: cache_check(cache)
    results = []
    for name, fn in suites.items():
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing suite is a failed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results
