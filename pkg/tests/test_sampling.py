import collections
import itertools
import math

import numpy as np
import pytest

from posetwalks import (
    CountTable,
    DecomposedSampler,
    DPSampler,
    LazyExcursion,
    count,
    sample_decomposed,
    sample_dp,
    stream_rng,
    uniform_nonneg_path,
    uniform_strict_excursion,
)
from posetwalks.oracle import enumerate_walk_pairs
from posetwalks.sampling import exact_m_weight_error, randbelow, walks_from_lazy_excursion


def test_stream_rng_reproducible_and_distinct():
    a = stream_rng(7, 0).integers(0, 2**63, size=4)
    b = stream_rng(7, 0).integers(0, 2**63, size=4)
    c = stream_rng(7, 1).integers(0, 2**63, size=4)
    d = stream_rng(8, 0).integers(0, 2**63, size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(a, d)


def test_randbelow_exact_range():
    rng = stream_rng(123, 0)
    bound = 10**40 + 7
    draws = [randbelow(bound, rng) for _ in range(200)]
    assert all(0 <= r < bound for r in draws)
    small = [randbelow(3, rng) for _ in range(3000)]
    freqs = collections.Counter(small)
    assert set(freqs) == {0, 1, 2}
    assert all(abs(v / 3000 - 1 / 3) < 0.05 for v in freqs.values())


def test_cycle_lemma_rotation_exhaustive():
    # every arrangement of L+1 ups and L downs must rotate to a nonnegative
    # path, and each path must be reached the same number of times
    class FixedSeq:
        def __init__(self, seq):
            self.seq = np.asarray(seq, dtype=np.int8)

        def shuffle(self, arr):
            arr[:] = self.seq

    for L in (1, 2, 3, 4):
        counts = collections.Counter()
        for ups in itertools.combinations(range(2 * L + 1), L + 1):
            seq = np.full(2 * L + 1, -1, dtype=np.int8)
            seq[list(ups)] = 1
            path = uniform_nonneg_path(2 * L, FixedSeq(seq))
            partial = np.cumsum(path)
            assert (partial >= 0).all() and partial[-1] == 0
            counts[tuple(path)] += 1
        cat = [1, 1, 2, 5, 14][L]
        assert len(counts) == cat
        assert set(counts.values()) == {2 * L + 1}


def test_strict_excursion_shape():
    rng = stream_rng(5, 0)
    for m in (2, 4, 10, 40):
        exc = uniform_strict_excursion(m, rng)
        s = np.cumsum(exc)
        assert exc[0] == 1 and exc[-1] == -1
        assert s[-1] == 0 and (s[:-1] > 0).all()
    with pytest.raises(ValueError):
        uniform_strict_excursion(3, rng)


def test_lazy_excursion_invariants():
    rng = stream_rng(9, 0)
    sampler = DecomposedSampler(30)
    for _ in range(100):
        exc = sampler.draw_lazy_excursion(rng)
        y = np.cumsum(exc.steps)
        assert y[-1] == 0 and (y[:-1] > 0).all()
        assert exc.steps[0] == 1 and exc.steps[-1] == -1
        assert exc.m % 2 == 0
    with pytest.raises(ValueError):
        LazyExcursion([0, 1, -1])  # hits zero inside


def test_walks_from_lazy_excursion_matches_gap():
    rng = stream_rng(3, 0)
    sampler = DecomposedSampler(24)
    for _ in range(50):
        exc = sampler.draw_lazy_excursion(rng)
        signs = rng.integers(0, 2, size=exc.n - exc.m, dtype=np.int8) * 2 - 1
        pair = walks_from_lazy_excursion(exc, signs)
        gap = np.cumsum(pair.steps_v - pair.steps_w) // 2
        assert np.array_equal(gap, np.cumsum(exc.steps))


def test_m_weight_accuracy_meets_budget():
    # float categorical weights must stay within 1e-12 relative of exact
    for n in (8, 64, 256, 512):
        assert exact_m_weight_error(n) < 1e-12


def _frequency_check(draw, n, draws, seed):
    rng = stream_rng(seed, 0)
    counts = collections.Counter(draw(rng) for _ in range(draws))
    space = enumerate_walk_pairs(n)
    assert set(counts) <= set(space)
    p = 1.0 / len(space)
    sigma = math.sqrt(p * (1 - p) / draws)
    for w in space:
        freq = counts[w] / draws
        assert abs(freq - p) < 5 * sigma + 1e-12, (n, freq, p)


def test_dp_sampler_uniform_small():
    for n in (2, 3, 4, 5):
        s = DPSampler(n)
        _frequency_check(s.draw, n, 40000, seed=n)


def test_decomposed_sampler_uniform_small():
    for n in (2, 3, 4, 5, 6):
        s = DecomposedSampler(n)
        _frequency_check(s.draw, n, 40000, seed=10 + n)


def test_sample_helpers():
    rng = stream_rng(1, 0)
    w = sample_dp(12, rng)
    assert w.n == 12
    w2 = sample_decomposed(12, rng)
    assert w2.n == 12
    with pytest.raises(ValueError):
        sample_dp(10_000, stream_rng(1, 1))  # over the cap
    with pytest.raises(ValueError):
        sample_decomposed(1, rng)


def test_dp_midpoint_gap_matches_exact_marginal():
    # empirical H(n/2) frequencies against the exact table distribution
    n, t, draws = 64, 32, 20000
    table = CountTable(n)
    dist = table.gap_distribution(t)
    total = table.total
    s = DPSampler(n)
    rng = stream_rng(77, 0)
    counts = collections.Counter()
    for _ in range(draws):
        pair = s.draw(rng)
        counts[int(pair.steps_v[:t].sum()) - int(pair.steps_w[:t].sum())] += 1
    assert set(counts) <= set(dist)
    for gap, weight in dist.items():
        p = weight / total
        sigma = math.sqrt(p * (1 - p) / draws)
        assert abs(counts[gap] / draws - p) < 5 * sigma + 2e-3


def test_decomposed_flat_fraction_concentrates():
    n, draws = 10_000, 300
    s = DecomposedSampler(n)
    rng = stream_rng(21, 0)
    flats = [1.0 - s.draw_lazy_excursion(rng).m / n for _ in range(draws)]
    assert abs(float(np.mean(flats)) - 0.5) < 0.01


def test_block_reproducibility_is_thread_independent():
    from posetwalks.experiments import experiment_window

    r1 = experiment_window(64, 2000, seed=5, threads=1)
    r4 = experiment_window(64, 2000, seed=5, threads=4)
    assert np.array_equal(r1.statistic, r4.statistic)
    assert r1.to_json() == r4.to_json()
