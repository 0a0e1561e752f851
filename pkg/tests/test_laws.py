import math

import numpy as np
import pytest
from scipy.integrate import quad

from posetwalks.laws import (
    excursion_area,
    half_normal_height,
    half_normal_height_consistent,
    ks_distance,
    ks_pvalue,
    rayleigh_window,
    rayleigh_window_consistent,
    standard_normal,
    two_sample_ks,
)
from posetwalks.sampling import stream_rng


def _cdf_is_distribution(law, lo=0.0, hi=10.0):
    xs = np.linspace(lo, hi, 2001)
    vals = law.cdf(xs)
    assert (np.diff(vals) >= -1e-12).all()
    assert abs(vals[0]) < 1e-12
    assert abs(vals[-1] - 1.0) < 1e-6


def test_rayleigh_window_law():
    law = rayleigh_window()
    _cdf_is_distribution(law)
    # density 8 s exp(-4 s^2) integrates to one and to the documented mean
    total, _ = quad(lambda s: 8 * s * math.exp(-4 * s * s), 0, 10)
    mean, _ = quad(lambda s: s * 8 * s * math.exp(-4 * s * s), 0, 10)
    assert abs(total - 1) < 1e-9
    assert abs(mean - law.mean) < 1e-9
    assert abs(law.mean - math.sqrt(math.pi) / 4) < 1e-12
    assert abs(law.cdf(0.5) - (1 - math.exp(-1.0))) < 1e-12


def test_rayleigh_consistent_mean():
    law = rayleigh_window_consistent()
    assert abs(law.mean - math.sqrt(math.pi) / 2) < 1e-12


def test_half_normal_laws():
    law = half_normal_height()
    _cdf_is_distribution(law, hi=3.0)
    assert abs(law.mean - 0.25 * math.sqrt(2 / math.pi)) < 1e-12
    sigma = 1 / (2 * math.sqrt(2))
    lawc = half_normal_height_consistent()
    assert abs(lawc.mean - sigma * math.sqrt(2 / math.pi)) < 1e-12
    # cdf agrees with 2 Phi(x / sigma) - 1 computed through erf
    from scipy.special import ndtr

    xs = np.linspace(0, 2, 101)
    assert np.allclose(law.cdf(xs), 2 * ndtr(xs / 0.25) - 1, atol=1e-12)


def test_rayleigh_change_of_variables_consistency():
    # rescaling the stated window law by 2 sqrt2 gives the density s e^{-s^2/2}
    law = rayleigh_window()
    c = 2 * math.sqrt(2)
    xs = np.linspace(0.01, 4, 200)
    target = 1 - np.exp(-(xs**2) / 2)
    assert np.allclose(law.cdf(xs / c), target, atol=1e-12)


def test_excursion_area_law_tabulation():
    law = excursion_area()
    _cdf_is_distribution(law, hi=3.9)
    assert abs(law.mean - math.sqrt(math.pi) / 2) < 1e-12
    # numerical mean of the tabulated law matches the closed form
    xs = np.linspace(0, 3.9, 40000)
    cdf = law.cdf(xs)
    mean_tab = float(np.trapezoid(1 - cdf, xs))
    assert abs(mean_tab - law.mean) < 2e-3


def test_ks_distance_trivial_cases():
    ray = rayleigh_window()
    assert ks_distance(np.zeros(100), ray) == 1.0
    median = math.sqrt(math.log(2) / 4)
    assert abs(ks_distance([median], ray) - 0.5) < 1e-9
    with pytest.raises(ValueError):
        ks_distance([], ray)


def test_ks_distance_kolmogorov_bound():
    # samples drawn from the law itself stay under 1.63/sqrt(N)
    law = rayleigh_window_consistent()
    rng = stream_rng(2024, 0)
    u = rng.random(100_000)
    samples = np.sqrt(-np.log1p(-u))
    assert ks_distance(samples, law) < 1.63 / math.sqrt(samples.size)


def test_two_sample_ks_and_pvalue():
    rng = stream_rng(55, 0)
    a = rng.normal(size=5000)
    b = rng.normal(size=5000)
    stat = two_sample_ks(a, b)
    assert ks_pvalue(stat, a.size, b.size) > 0.01
    c = rng.normal(loc=0.5, size=5000)
    stat2 = two_sample_ks(a, c)
    assert ks_pvalue(stat2, a.size, c.size) < 1e-6
    assert two_sample_ks([0.0, 0.0], [0.0, 0.0]) == 0.0


def test_two_sample_ks_matches_scipy():
    from scipy.stats import ks_2samp

    rng = stream_rng(66, 0)
    a = np.round(rng.normal(size=800), 1)  # heavy ties
    b = np.round(rng.normal(size=600), 1)
    ours = two_sample_ks(a, b)
    assert abs(ours - ks_2samp(a, b).statistic) < 1e-12


def test_standard_normal_law():
    law = standard_normal()
    assert abs(law.cdf(0.0) - 0.5) < 1e-12
    assert abs(law.cdf(1.96) - 0.9750021) < 1e-6
