"""Reference limit laws and goodness-of-fit distances.

Three closed-form reference laws are provided under their contract names:

* ``rayleigh_window``      cdf 1 - exp(-4 s^2), the stated window limit
* ``half_normal_height``   |Z| for Z ~ N(0, 1/16), the stated height limit
* ``excursion_area``       sqrt(2) times the integral of a standard
                           Brownian excursion (the Airy area law)

The sampler-consistent variants carry the constants implied by the walk
representation itself.  The half-gap path is a lazy +-1 walk with step
variance 1/2, so the gap process scales like sqrt(2 n) B_ex, not
sqrt(n/2) B_ex; and the flat-step fraction concentrates at 1/2, so V(n)
has variance n/2.  That makes the empirically correct limits

* window / sqrt(n)          ->  Rayleigh with cdf 1 - exp(-s^2)
* (height - n/2) / sqrt(n)  ->  |Z| for Z ~ N(0, 1/8)

which also match the average-window law (the mean of the per-element window
equals the mean of the area statistic at every n, and the area law's mean is
sqrt(pi)/2).  Both parametrizations are exposed; experiments grade against
the contract laws and report effect sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ReferenceLaw",
    "rayleigh_law",
    "half_normal_law",
    "excursion_area_law",
    "rayleigh_window",
    "half_normal_height",
    "excursion_area",
    "rayleigh_window_consistent",
    "half_normal_height_consistent",
    "standard_normal",
    "ks_distance",
    "two_sample_ks",
    "ks_pvalue",
]


@dataclass(frozen=True)
class ReferenceLaw:
    """A named scalar law: nondecreasing cdf on [0, inf) (or R) plus its mean."""

    name: str
    cdf: Callable[[np.ndarray], np.ndarray]
    mean: float


def rayleigh_law(rate: float, name: str = "rayleigh") -> ReferenceLaw:
    """Law with cdf 1 - exp(-rate s^2); mean is sqrt(pi / rate) / 2."""

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -np.expm1(-rate * np.square(x)), 0.0)

    return ReferenceLaw(name, cdf, math.sqrt(math.pi / rate) / 2)


def half_normal_law(sigma: float, name: str = "half_normal") -> ReferenceLaw:
    """|Z| for Z ~ N(0, sigma^2); cdf erf(x / (sigma sqrt 2)), mean sigma sqrt(2/pi).

    The normal cdf is evaluated through the C library's erf, whose error is
    well below 1e-7.
    """
    from scipy.special import erf

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, erf(x / (sigma * math.sqrt(2.0))), 0.0)

    return ReferenceLaw(name, cdf, sigma * math.sqrt(2.0 / math.pi))


def standard_normal(name: str = "standard_normal") -> ReferenceLaw:
    from scipy.special import ndtr

    return ReferenceLaw(name, lambda x: ndtr(np.asarray(x, dtype=float)), 0.0)


def _airy_area_density(x: np.ndarray, terms: int = 40) -> np.ndarray:
    """Density of the Brownian excursion area, by its convergent zero series.

    Uses the negated Airy-function zeros a_j and the confluent hypergeometric
    U; accurate to ~1e-9 on the bulk of the support.
    """
    from scipy.special import ai_zeros, hyperu

    aj = np.abs(ai_zeros(terms)[0])  # |a_j|, increasing
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 1e-9
    xv = x[pos]
    v = 2.0 * aj[None, :] ** 3 / (27.0 * xv[:, None] ** 2)
    series = (v ** (2.0 / 3.0)) * np.exp(-v) * hyperu(-5.0 / 6.0, 4.0 / 3.0, v)
    out[pos] = (2.0 * math.sqrt(6.0) / xv**2) * series.sum(axis=1)
    return out


def excursion_area_law(scale: float = math.sqrt(2.0), name: str = "excursion_area") -> ReferenceLaw:
    """Law of ``scale`` times the excursion area, with a tabulated cdf.

    The base area has mean sqrt(pi/8); the default scale sqrt(2) gives the
    average-window limit with mean sqrt(pi)/2.  The cdf is precomputed on a
    dense grid and interpolated.
    """
    grid = np.linspace(0.0, 4.0, 4001)
    dens = _airy_area_density(grid)
    from scipy.integrate import cumulative_trapezoid

    cum = np.concatenate([[0.0], cumulative_trapezoid(dens, grid)])
    cum = np.minimum(cum / cum[-1], 1.0)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.interp(x / scale, grid, cum, left=0.0, right=1.0)

    return ReferenceLaw(name, cdf, scale * math.sqrt(math.pi / 8.0))


def rayleigh_window() -> ReferenceLaw:
    return rayleigh_law(4.0, "rayleigh_window")


def half_normal_height() -> ReferenceLaw:
    return half_normal_law(0.25, "half_normal_height")


def excursion_area() -> ReferenceLaw:
    return excursion_area_law(math.sqrt(2.0), "excursion_area")


def rayleigh_window_consistent() -> ReferenceLaw:
    """Window law with the rate implied by the walk scaling (tail exp(-s^2))."""
    return rayleigh_law(1.0, "rayleigh_window_consistent")


def half_normal_height_consistent() -> ReferenceLaw:
    """Height law with the variance implied by the flat-step fraction (1/8)."""
    return half_normal_law(1.0 / (2.0 * math.sqrt(2.0)), "half_normal_height_consistent")


def ks_distance(samples, law: ReferenceLaw) -> float:
    """Sup distance between the empirical cdf and ``law``.

    Evaluated at the sorted sample points as
    max(i/N - F(x_i), F(x_i) - (i-1)/N).
    """
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ValueError("ks_distance needs at least one sample")
    f = np.asarray(law.cdf(x), dtype=float)
    n = x.size
    hi = np.arange(1, n + 1) / n - f
    lo = f - np.arange(0, n) / n
    return float(max(hi.max(), lo.max()))


def two_sample_ks(a, b) -> float:
    """Sup distance between two empirical cdfs, exact under ties."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("two_sample_ks needs nonempty samples")
    allv = np.concatenate([a, b])
    fa = np.searchsorted(a, allv, side="right") / a.size
    fb = np.searchsorted(b, allv, side="right") / b.size
    return float(np.abs(fa - fb).max())


def ks_pvalue(stat: float, n_a: int, n_b: int | None = None) -> float:
    """Asymptotic Kolmogorov tail probability of a (two-)sample statistic."""
    if n_b is None:
        en = n_a
    else:
        en = n_a * n_b / (n_a + n_b)
    lam = (math.sqrt(en) + 0.12 + 0.11 / math.sqrt(en)) * stat
    total = 0.0
    for j in range(1, 101):
        term = 2.0 * (-1.0) ** (j - 1) * math.exp(-2.0 * j * j * lam * lam)
        total += term
        if abs(term) < 1e-12:
            break
    return float(min(max(total, 0.0), 1.0))
