"""Benchmark statistics: sample summaries, baseline comparison, regression."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class SummaryStats:
    max_ms: float
    min_ms: float
    mean_ms: float
    stddev_ms: float
    cv_percent: float
    sample_count: int


def summarize(samples: Sequence[float]) -> SummaryStats:
    """Max/min/mean, sample standard deviation (n-1 divisor), CV percent."""
    n = len(samples)
    if n < 2:
        raise ValueError("summarize needs at least 2 samples")
    mean = math.fsum(samples) / n
    var = math.fsum((s - mean) ** 2 for s in samples) / (n - 1)
    stddev = math.sqrt(var)
    cv = stddev / mean * 100.0 if mean != 0 else 0.0
    return SummaryStats(max(samples), min(samples), mean, stddev, cv, n)


def perf_over_baseline(base_mean: float, subject_mean: float) -> float:
    """Percent speedup over the baseline mean; positive means faster."""
    if base_mean <= 0:
        raise ValueError("baseline mean must be positive")
    return (base_mean - subject_mean) / base_mean * 100.0


def linregress(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float, float]:
    """Ordinary least squares fit: (slope, intercept, r, r_squared).

    Constant ys are handled as slope 0, r 0 (degenerate but well-defined);
    constant xs are an error.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    n = len(xs)
    if n < 3:
        raise ValueError("linregress needs at least 3 points")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    syy = math.fsum((y - my) ** 2 for y in ys)
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    if sxx == 0:
        raise ValueError("xs are all equal; regression is degenerate")
    if syy == 0:
        return 0.0, my, 0.0, 0.0
    slope = sxy / sxx
    intercept = my - slope * mx
    r = sxy / math.sqrt(sxx * syy)
    return slope, intercept, r, r * r
