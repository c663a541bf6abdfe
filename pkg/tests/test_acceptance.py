"""Acceptance gate: one test per criterion, each recorded as a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` and look at the "acceptance
criteria" section at the end of the report.
"""

import random
import resource
import subprocess
import sys
import time
from statistics import mean

from conftest import record

from knoncrossing import counting as C
from knoncrossing.oracle import MATCHING, PARTIAL, STRUCTURE, DiagramClass, enumerate_class, has_k_crossing
from knoncrossing.report import histogram_from_counts
from knoncrossing.sampler import RandomSource, Walker, tally, trace_probability, walker_for
from knoncrossing.shapes import successors
from knoncrossing.tableau import StarTableau, matching_to_tableau, tableau_to_matching

TABLE_OF = {PARTIAL: C.STAR, MATCHING: C.OSCILLATING, STRUCTURE: C.NO_ONE_ARC}


def _cli(*argv):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "knoncrossing", *argv],
                          capture_output=True, text=True, check=False)
    return proc.returncode, proc.stdout.strip(), time.perf_counter() - t0


def test_criterion_01_exact_counts_from_cli():
    rc1, out1, t1 = _cli("count", "--k", "3", "--n", "12", "--class", "partial")
    rc2, out2, t2 = _cli("count", "--k", "3", "--n", "12", "--class", "structure")
    ok = rc1 == rc2 == 0 and out1 == "99991" and out2 == "38635" and t1 < 1 and t2 < 1
    detail = f"partial={out1} in {t1:.2f}s, structure={out2} in {t2:.2f}s"
    assert record(1, "exact counts 99991 / 38635 via CLI, < 1 s each", ok, detail), detail


def test_criterion_02_tables_match_enumeration():
    t0 = time.perf_counter()
    checked, bad = 0, []
    for k in (2, 3, 4):
        for sel, cls in TABLE_OF.items():
            seq = C.count_sequence(k, 10, cls)
            for n in range(11):
                brute = len(enumerate_class(n, DiagramClass(sel, k)))
                checked += 1
                if brute != seq[n]:
                    bad.append((k, sel, n, seq[n], brute))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    detail = f"{checked} equalities, {len(bad)} mismatches, {elapsed:.1f}s"
    assert record(2, "table counts equal brute-force enumeration, k<=4, n<=10", ok, detail), bad


def test_criterion_03_two_row_closed_forms():
    max_m = 30
    pas = C.PascalTable(2 * max_m + 4)
    osc = C.build_tables(3, 2 * max_m, C.OSCILLATING)
    star = C.build_tables(3, 2 * max_m, C.STAR)
    row = C.build_tables(2, 2 * max_m, C.OSCILLATING)
    checked, bad = 0, []
    for shape in osc.space.shapes:
        for m in range(max_m + 1):
            if sum(shape) > m:
                continue
            x1, x2 = (shape + (0, 0))[:2]
            via_lgv = C.lgv_t(m, x1 + x2, x1 - x2, pas)
            if via_lgv != osc.entry(shape, m) or C.closed3_oscillating(shape, m, pas) != via_lgv:
                bad.append(("oscillating", shape, m))
            if C.closed3_star(shape, m, pas) != star.entry(shape, m):
                bad.append(("star", shape, m))
            checked += 1
    for h in range(max_m + 1):
        for m in range(h, max_m + 1):
            if C.ballot_F(m, h, pas) != row.entry((h,) if h else (), m):
                bad.append(("ballot", h, m))
    ok = not bad and checked > 0
    detail = f"{checked} (shape, m) pairs, {len(bad)} mismatches"
    assert record(3, "k=3 closed forms equal the tables, m<=30", ok, detail), bad[:5]


def test_criterion_04_inclusion_exclusion():
    max_m = 20
    pas = C.PascalTable(2 * max_m)
    checked, bad = 0, []
    for k in (3, 4):
        star = C.build_tables(k, 2 * max_m, C.STAR)
        good = C.build_tables(k, 2 * max_m, C.NO_ONE_ARC)
        for shape in star.space.shapes:
            for m in range(sum(shape), max_m + 1):
                checked += 1
                if C.W_inclusion_exclusion(shape, m, star, pas) != good.entry(shape, m):
                    bad.append((k, shape, m))
        for n in range(max_m + 1):
            w = C.W_inclusion_exclusion((), n, star, pas)
            if C.count_structures(k, n) != w:
                bad.append((k, "structures", n))
    ok = not bad
    detail = f"{checked} entries plus structure counts, {len(bad)} mismatches"
    assert record(4, "one-arc inclusion-exclusion equals the memory-flag table", ok, detail), bad[:5]


def test_criterion_05_bessel_determinant():
    bad = []
    for k in (3, 4):
        seq = C.count_sequence(k, 12, C.OSCILLATING)
        for n in range(13):
            got = C.egf_determinant_check(k, n)
            if got != seq[n]:
                bad.append((k, n, got, seq[n]))
    ok = not bad
    detail = f"26 coefficients, {len(bad)} mismatches"
    assert record(5, "Bessel determinant coefficients equal oscillating counts", ok, detail), bad


def test_criterion_06_exact_path_probability():
    results = {}
    for sel, expect in ((PARTIAL, 99991), (STRUCTURE, 38635)):
        table = C.build_tables(3, 12, TABLE_OF[sel])
        walker = walker_for(table)
        src = RandomSource(6)
        probs = {trace_probability(walker.sample(src)[1]) for _ in range(1000)}
        results[sel] = probs == {(1, expect)}
    ok = all(results.values())
    assert record(6, "1000 paths per class have probability exactly 1/count", ok,
                  ", ".join(f"{s}={'ok' if v else 'bad'}" for s, v in results.items())), results


def test_criterion_07_chi_square_uniformity():
    t0 = time.perf_counter()
    lines, ok = [], True
    for sel in (PARTIAL, STRUCTURE):
        table = C.build_tables(3, 8, TABLE_OF[sel])
        m = table.total
        inside = 0
        for seed in range(1, 6):
            rep = histogram_from_counts(tally(table, 200 * m, seed), m)
            inside += rep.within_band()
        lines.append(f"{sel} m={m}: {inside}/5 seeds in band")
        ok &= inside >= 4
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    detail = "; ".join(lines) + f"; {elapsed:.1f}s"
    assert record(7, "chi-square in [0.001, 0.999] band for >=4/5 seeds, < 60 s", ok, detail), detail


def _all_star_tableaux(n, k):
    def rec(shape, left, steps):
        if sum(shape) > left:
            return
        if left == 0:
            yield tuple(steps)
            return
        for step, nxt in successors(shape, k):
            yield from rec(nxt, left - 1, steps + [step])

    yield from rec((), n, [])


def test_criterion_08_bijection_round_trip():
    exhaustive, bad = 0, 0
    for k in (2, 3):
        for n in range(9):
            for steps in _all_star_tableaux(n, k):
                t = StarTableau(k, steps)
                exhaustive += 1
                bad += matching_to_tableau(tableau_to_matching(t), k) != t
    table = C.build_tables(3, 100, C.STAR)
    walker = walker_for(table)
    src = RandomSource(8)
    random_paths = 10**5
    for _ in range(random_paths):
        steps, _ = walker.walk(src, record=False)
        t = StarTableau(3, tuple(steps))
        bad += matching_to_tableau(tableau_to_matching(t), 3) != t
    ok = bad == 0
    detail = f"{exhaustive} exhaustive + {random_paths} random tableaux, {bad} failures"
    assert record(8, "tableau -> matching -> tableau is the identity", ok, detail), detail


def test_criterion_09_sampler_validity():
    problems = {}
    for sel, cls in TABLE_OF.items():
        table = C.build_tables(3, 50, cls)
        walker = walker_for(table)
        src = RandomSource(9)
        bad = 0
        for _ in range(10**4):
            m, _ = walker.sample(src, record=False)
            bad += has_k_crossing(m, 3)
            if sel == STRUCTURE:
                bad += m.has_one_arc()
            if sel == MATCHING:
                bad += bool(m.isolated())
        problems[sel] = bad
    ok = not any(problems.values())
    detail = ", ".join(f"{s}: {v} violations" for s, v in problems.items())
    assert record(9, "10^4 samples per class at n=50 are all in class", ok, detail), problems


def _mean_sample_times(small, large, reps, seed):
    """Mean time per sample for two tables, timed alternately so load drift hits both."""
    walkers = [Walker(small, cache=False), Walker(large, cache=False)]  # no weight caching
    sources = [RandomSource(seed), RandomSource(seed + 1)]
    for w, src in zip(walkers, sources):
        for _ in range(20):
            w.sample(src, record=False)
    times = ([], [])
    for _ in range(reps):
        for i in (0, 1):
            t0 = time.perf_counter()
            walkers[i].sample(sources[i], record=False)
            times[i].append(time.perf_counter() - t0)
    return mean(times[0]), mean(times[1])


def test_criterion_10_performance():
    n, k = 500, 3
    t0 = time.perf_counter()
    big = {cls: C.build_tables(k, n, cls) for cls in (C.STAR, C.NO_ONE_ARC)}
    prep = time.perf_counter() - t0
    entries = max(t.n_entries() for t in big.values())
    half = C.build_tables(k, n // 2, C.STAR)
    t250, t500 = _mean_sample_times(half, big[C.STAR], 1000, seed=10)
    ratio = t500 / t250
    rss_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 2**20
    ok = prep < 60 and 1.6 <= ratio <= 2.6 and entries <= n**k
    detail = (f"preprocessing {prep:.1f}s, sample time ratio {ratio:.2f}, "
              f"{entries} entries <= n^k={n**k}, peak RSS {rss_gb:.2f} GB")
    assert record(10, "n=500 preprocessing < 60 s, linear sampling, O(n^k) tables", ok, detail), detail


def test_random_seed_helpers_are_independent():
    # the acceptance runs above must not depend on the global random module
    state = random.getstate()
    RandomSource(1).word()
    assert random.getstate() == state
