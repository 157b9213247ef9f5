"""Benford probabilities and the sample statistics measured against them."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .digits import DigitCounts, DigitSystem


@dataclass(frozen=True)
class BenfordProbs:
    """The logarithmic digit law for one digit scheme."""

    system: DigitSystem
    b: np.ndarray  # length k, log10(1 + 1/d) per label


@dataclass(frozen=True)
class Proportions:
    """Observed digit proportions for a sample of size n."""

    p: np.ndarray
    n: int


def benford_probs(system: DigitSystem) -> BenfordProbs:
    """Digit probabilities log10(1 + 1/d) for every label of `system`."""
    b = np.array([math.log10(1.0 + 1.0 / d) for d in system.digit_labels])
    return BenfordProbs(system=system, b=b)


def proportions(counts: DigitCounts) -> Proportions:
    if counts.n < 1:
        raise ValueError("cannot form proportions from an empty sample")
    p = np.asarray(counts.counts, dtype=float) / counts.n
    return Proportions(p=p, n=counts.n)


def _check_match(p: Proportions, b: BenfordProbs) -> None:
    if len(p.p) != len(b.b):
        raise ValueError(f"dimension mismatch: {len(p.p)} proportions vs {len(b.b)} probabilities")


def mad(p: Proportions, b: BenfordProbs) -> float:
    """Mean absolute deviation between observed proportions and the law."""
    _check_match(p, b)
    return float(np.mean(np.abs(p.p - b.b)))


def psi(p: Proportions, b: BenfordProbs, n: int) -> float:
    """Pearson-form quadratic distance n * sum((p_i - b_i)^2 / b_i)."""
    _check_match(p, b)
    if n < 1:
        raise ValueError("sample size must be at least 1")
    return float(n * np.sum((p.p - b.b) ** 2 / b.b))


def chi_square_stat(counts: DigitCounts, b: BenfordProbs) -> float:
    """Pearson's goodness-of-fit statistic; identical to psi on the sample."""
    return psi(proportions(counts), b, counts.n)
