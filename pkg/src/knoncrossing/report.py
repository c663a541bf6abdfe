"""Multiplicity histograms for checking that a sampler is uniform.

Draw ``N`` objects from a class of ``m`` objects and count how many classes
were seen exactly ``l`` times.  Under uniform sampling that count is about
``m * Binomial(N, 1/m).pmf(l)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

from scipy.stats import binom, chi2

from .errors import TooManyClasses

MAX_CLASSES = 10**6


@dataclass
class HistogramReport:
    classes: int
    samples: int
    multiplicities: dict[int, int]
    chi_square: float
    reference: dict[int, float]

    @property
    def dof(self) -> int:
        return self.classes - 1

    def p_value(self) -> float:
        return float(chi2.sf(self.chi_square, self.dof))

    def quantile_band(self, lo: float = 0.001, hi: float = 0.999) -> tuple[float, float]:
        return float(chi2.ppf(lo, self.dof)), float(chi2.ppf(hi, self.dof))

    def within_band(self, lo: float = 0.001, hi: float = 0.999) -> bool:
        a, b = self.quantile_band(lo, hi)
        return a <= self.chi_square <= b

    def write_tsv(self, out: TextIO, header: str = "") -> None:
        a, b = self.quantile_band()
        if header:
            out.write(f"# {header}\n")
        out.write(f"# classes={self.classes} samples={self.samples}\n")
        out.write(f"# chi_square={self.chi_square:.6f} dof={self.dof} "
                  f"p_value={self.p_value():.6g} band_0.001={a:.6f} band_0.999={b:.6f} "
                  f"within_band={'yes' if self.within_band() else 'no'}\n")
        out.write("multiplicity\tobserved_classes\tbinomial_expected\n")
        for ell in sorted(self.reference):
            out.write(f"{ell}\t{self.multiplicities.get(ell, 0)}\t{self.reference[ell]:.6f}\n")


def histogram(keys: Iterable[str], classes: int) -> HistogramReport:
    """Tabulate sample ``keys`` (one canonical string per sampled object)."""
    return histogram_from_counts(Counter(keys), classes)


def histogram_from_counts(per_class: Mapping[str, int], classes: int) -> HistogramReport:
    if classes > MAX_CLASSES:
        raise TooManyClasses(f"{classes} classes exceeds the limit of {MAX_CLASSES}")
    if len(per_class) > classes:
        raise ValueError(f"saw {len(per_class)} distinct objects but the class has {classes}")
    n_samples = sum(per_class.values())
    if n_samples == 0:
        raise ValueError("no samples to tabulate")
    mult = Counter(per_class.values())
    mult[0] = classes - len(per_class)
    if mult[0] == 0:
        del mult[0]

    expected = n_samples / classes
    stat = sum((c - expected) ** 2 for c in per_class.values())
    stat += (classes - len(per_class)) * expected ** 2
    stat /= expected

    # tabulate the bulk of the binomial plus every observed multiplicity
    mean = n_samples / classes
    spread = 8 * (mean + 1) ** 0.5
    lo = max(0, min(min(mult), int(mean - spread)))
    hi = max(max(mult), int(mean + spread) + 1)
    ells = list(range(lo, hi + 1))
    ref = dict(zip(ells, (classes * binom.pmf(ells, n_samples, 1 / classes)).tolist()))
    return HistogramReport(classes, n_samples, dict(sorted(mult.items())), float(stat), ref)
