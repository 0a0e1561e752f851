"""Exact uniform samplers over the walk space.

Two routes produce a uniform element of B_n:

* ``DPSampler`` walks the suffix count table, choosing each joint step with
  probability proportional to exact big-integer completion counts.  Memory is
  O(n^2) integers, so it is capped (default 4096).

* ``DecomposedSampler`` uses the half-sum / half-gap split (Y, Y') of the
  pair.  Y' is a lazy excursion: steps in {-1, 0, +1}, strictly positive
  strictly inside (0, n), zero at n.  A pair is drawn by (a) picking the
  number m of non-flat steps with weight C(n-2, m-2) Catalan(m/2-1) 2^(n-m),
  (b) placing the m-2 interior non-flat positions uniformly, (c) drawing the
  inner strict excursion exactly uniformly by the cycle lemma, (d) assigning
  independent signs to Y at the flat positions, and (e) reconstructing
  V = Y + Y', W = Y - Y'.  Steps (b)-(e) are exact; only the categorical draw
  of m uses floating-point weights, with relative error near 1e-15.

The cycle lemma step: strict excursions of length m are a forced up-step, a
nonnegative path of length m-2 returning to zero, and a forced down-step.  A
uniform nonnegative path of length 2L comes from a uniform arrangement of
L+1 up-steps and L down-steps (an odd-length sequence with total +1): exactly
one of its 2L+1 distinct cyclic shifts has all partial sums positive, namely
the one starting just after the last minimum of the prefix sums, and dropping
that shift's leading up-step leaves the nonnegative path.

RNG contract: every randomized routine takes a ``numpy.random.Generator``.
``stream_rng(seed, stream_id)`` builds counter-based Philox streams, so
parallel sampling is reproducible independent of thread scheduling.
"""

from __future__ import annotations

import math

import numpy as np

from .counting import DEFAULT_DP_CAP, CountTable, m_weights_exact
from .walks import WalkPair

__all__ = [
    "stream_rng",
    "randbelow",
    "uniform_nonneg_path",
    "uniform_strict_excursion",
    "LazyExcursion",
    "DPSampler",
    "DecomposedSampler",
    "sample_dp",
    "sample_decomposed",
    "walks_from_lazy_excursion",
    "exact_m_weight_error",
]


def stream_rng(seed: int, stream_id: int = 0, salt: int = 0) -> np.random.Generator:
    """A Philox generator keyed by (seed, stream_id), salted by purpose.

    Distinct stream ids give statistically independent streams for the same
    seed; results assembled in stream order do not depend on scheduling.
    """
    if not (0 <= seed < 2**64):
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    key = np.array([seed, stream_id & (2**64 - 1)], dtype=np.uint64)
    counter = np.array([salt & (2**64 - 1), 0, 0, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(counter=counter, key=key))


def randbelow(bound: int, rng: np.random.Generator) -> int:
    """Uniform integer in [0, bound) for arbitrarily large bounds."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    bits = bound.bit_length()
    nwords = (bits + 63) // 64
    shift = nwords * 64 - bits
    while True:
        words = rng.integers(0, 2**64, size=nwords, dtype=np.uint64)
        r = int.from_bytes(words.tobytes(), "little") >> shift
        if r < bound:
            return r


def uniform_nonneg_path(length: int, rng: np.random.Generator) -> np.ndarray:
    """Exactly uniform +-1 path of even ``length`` staying >= 0, ending at 0."""
    if length % 2:
        raise ValueError("nonnegative bridge length must be even")
    if length == 0:
        return np.zeros(0, dtype=np.int8)
    half = length // 2
    seq = np.concatenate(
        [np.ones(half + 1, dtype=np.int8), -np.ones(half, dtype=np.int8)]
    )
    rng.shuffle(seq)
    prefix = np.concatenate([[0], np.cumsum(seq[:-1], dtype=np.int64)])
    # last attained minimum of S_0 .. S_{N-1}; rotation starts right after it
    j = len(prefix) - 1 - int(np.argmin(prefix[::-1]))
    rotated = np.concatenate([seq[j:], seq[:j]])
    return rotated[1:]


def uniform_strict_excursion(m: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform +-1 path of length m, strictly positive on (0, m), zero at m."""
    if m < 2 or m % 2:
        raise ValueError("strict excursions need even length >= 2")
    inner = uniform_nonneg_path(m - 2, rng)
    return np.concatenate([[np.int8(1)], inner, [np.int8(-1)]])


class LazyExcursion:
    """The half-gap path of a walk pair: steps in {-1, 0, +1}.

    Partial sums are strictly positive on (0, n) and zero at n; for n >= 2
    the first step is forced up and the last forced down.  ``m`` counts the
    non-flat steps.
    """

    __slots__ = ("n", "steps")

    def __init__(self, steps, check: bool = True):
        x = np.asarray(steps, dtype=np.int8).copy()
        if x.ndim != 1 or x.size < 1:
            raise ValueError("steps must be a nonempty 1-d sequence")
        if check:
            if not np.isin(x, (-1, 0, 1)).all():
                raise ValueError("lazy excursion steps must be -1, 0, or +1")
            y = np.cumsum(x, dtype=np.int64)
            if y[-1] != 0 or (x.size > 1 and not (y[:-1] > 0).all()):
                raise ValueError("partial sums must stay positive inside and end at 0")
        x.setflags(write=False)
        self.n = int(x.size)
        self.steps = x

    @property
    def m(self) -> int:
        return int(np.count_nonzero(self.steps))


def walks_from_lazy_excursion(exc: LazyExcursion, flat_signs) -> WalkPair:
    """Rebuild (V, W) from the half-gap path and the half-sum signs.

    ``flat_signs`` gives one +-1 value per flat step of the excursion, in
    order; V = Y + Y' and W = Y - Y' turn into step rules
    up/down together on flats, (+,-) on up-steps, (-,+) on down-steps.
    """
    x = exc.steps
    signs = np.asarray(flat_signs, dtype=np.int8)
    flat = x == 0
    if signs.size != int(flat.sum()):
        raise ValueError("need exactly one sign per flat step")
    sv = np.array(x, dtype=np.int8)
    sw = -np.array(x, dtype=np.int8)
    sv[flat] = signs
    sw[flat] = signs
    return WalkPair(sv, sw, check=False)


class DPSampler:
    """Exactly uniform sampling by big-integer suffix counts.

    The count table is built once and then shared read-only; each draw only
    consumes the supplied generator.
    """

    def __init__(self, n: int, cap: int = DEFAULT_DP_CAP):
        self.n = n
        self.table = CountTable(n, cap=cap)

    def draw(self, rng: np.random.Generator) -> WalkPair:
        """One uniform pair by unranking a single uniform index.

        The index r starts uniform on [0, N(0,0)); after subtracting the
        weights of the rejected joint-step types, the remainder is uniform
        over the completions of the chosen branch, so each step is taken
        with probability exactly proportional to its suffix count.
        """
        n = self.n
        rows = self.table.rows
        sv = np.empty(n, dtype=np.int8)
        sw = np.empty(n, dtype=np.int8)
        d = 0
        r = randbelow(self.table.total, rng)
        for t in range(n):
            nxt = rows[t + 1]
            width = len(nxt)
            up = nxt[d + 1] if d + 1 < width else 0
            if r < up:
                sv[t], sw[t] = 1, -1
                d += 1
                continue
            r -= up
            down = 0
            if d >= 1:
                dn = d - 1
                if dn < width and (dn >= 1 or t + 1 == n):
                    down = nxt[dn]
            if r < down:
                sv[t], sw[t] = -1, 1
                d -= 1
                continue
            r -= down
            flat = nxt[d] if d < width and (d >= 1 or t + 1 == n) else 0
            if r < flat:
                sv[t], sw[t] = 1, 1
            else:
                sv[t], sw[t] = -1, -1
                r -= flat
        return WalkPair(sv, sw, check=False)


class DecomposedSampler:
    """Uniform sampling via the lazy-excursion representation; no size cap.

    The categorical weights over m are prepared once per n in log space, by
    accumulating logs of the exact rational ratios
    w(m+2)/w(m) = (n-m)(n-m-1) / (m(m+2)), which keeps the relative error of
    each normalized weight near machine precision.
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("the decomposition sampler needs n >= 2")
        self.n = n
        ms = np.arange(2, n + 1, 2, dtype=np.int64)
        logw = np.empty(ms.size)
        logw[0] = 0.0  # common factor 2^(n-2) dropped
        for i in range(1, ms.size):
            m = int(ms[i - 1])
            logw[i] = logw[i - 1] + math.log((n - m) * (n - m - 1)) - math.log(m * (m + 2))
        logw -= logw.max()
        w = np.exp(logw)
        self.ms = ms
        self.m_probs = w / math.fsum(w)
        self._m_cdf = np.cumsum(self.m_probs)
        self._m_cdf[-1] = 1.0

    def draw_m(self, rng: np.random.Generator) -> int:
        u = rng.random()
        return int(self.ms[int(np.searchsorted(self._m_cdf, u, side="right"))])

    def draw_lazy_excursion(self, rng: np.random.Generator) -> LazyExcursion:
        n = self.n
        m = self.draw_m(rng)
        x = np.zeros(n, dtype=np.int8)
        if m - 2 > 0:
            interior = rng.choice(n - 2, size=m - 2, replace=False) + 1
        else:
            interior = np.zeros(0, dtype=np.int64)
        pos = np.empty(m, dtype=np.int64)
        pos[0] = 0
        pos[-1] = n - 1
        if m > 2:
            pos[1:-1] = np.sort(interior)
        x[pos] = uniform_strict_excursion(m, rng)
        return LazyExcursion(x, check=False)

    def draw(self, rng: np.random.Generator) -> WalkPair:
        exc = self.draw_lazy_excursion(rng)
        n_flat = self.n - exc.m
        signs = rng.integers(0, 2, size=n_flat, dtype=np.int8) * 2 - 1
        return walks_from_lazy_excursion(exc, signs)


def sample_dp(n: int, rng: np.random.Generator, cap: int = DEFAULT_DP_CAP) -> WalkPair:
    """One exactly uniform walk pair via the count-table route."""
    return DPSampler(n, cap=cap).draw(rng)


def sample_decomposed(n: int, rng: np.random.Generator) -> WalkPair:
    """One uniform walk pair via the lazy-excursion route (n >= 2)."""
    return DecomposedSampler(n).draw(rng)


def exact_m_weight_error(n: int) -> float:
    """Largest relative error of the float m-weights against the exact ones."""
    from fractions import Fraction

    sampler = DecomposedSampler(n)
    exact = m_weights_exact(n)
    total = sum(exact.values())
    worst = 0.0
    for m, p in zip(sampler.ms, sampler.m_probs):
        truth = float(Fraction(exact[int(m)], total))
        worst = max(worst, abs(p - truth) / truth)
    return worst
