"""Exact big-integer counting of the walk space.

A joint step of (V, W) is one of four types.  Writing d = H(t)/2 for the
half-gap, the types act as

    (+,-) : d -> d+1         (-,+) : d -> d-1
    (+,+) : d -> d           (-,-) : d -> d

so the half-gap path is a nonnegative lattice path from 0 to 0, strictly
positive in between, where flat moves carry multiplicity 2.  Suffix counts

    N(t, d) = weighted number of completions from time t at half-gap d

satisfy N(n, 0) = 1, N(n, d>0) = 0 and the recurrence

    N(t, d) = N(t+1, d+1) + [d >= 1] N(t+1, d-1) + 2 N(t+1, d)

with N(t, 0) forced to 0 at interior times.  N(0, 0) is the size of the walk
space.  The same count also splits by the number m of non-flat steps:

    |B_n| = sum over even m of  C(n-2, m-2) * Catalan(m/2 - 1) * 2^(n-m)

since the non-flat steps form a strict excursion (first step up, last step
down, positive in between) placed on m positions that must include 1 and n,
while every flat step independently contributes a factor 2.
"""

from __future__ import annotations

import math

__all__ = [
    "CountTable",
    "count",
    "count_up_to",
    "m_weights_exact",
    "m_decomposition_total",
    "DEFAULT_DP_CAP",
]

DEFAULT_DP_CAP = 4096


def _dmax(t: int, n: int) -> int:
    return min(t, n - t)


class CountTable:
    """Suffix counts N(t, d) for one fixed n, as exact python integers.

    Row t holds d = 0 .. min(t, n-t); entries at invalid states are zero.
    The table is immutable after construction and shared read-only by the
    exact sampler.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, cap: int = DEFAULT_DP_CAP):
        if n < 1:
            raise ValueError("n must be at least 1")
        if n > cap:
            raise ValueError(f"n={n} exceeds the exact-DP cap {cap}; raise it (--dp-cap)")
        rows: list[list[int]] = [[] for _ in range(n + 1)]
        rows[n] = [1]
        for t in range(n - 1, -1, -1):
            width = _dmax(t, n) + 1
            nxt = rows[t + 1]
            nxt_width = len(nxt)
            row = [0] * width
            lo = 0 if t == 0 else 1
            for d in range(lo, width):
                acc = 0
                if d + 1 < nxt_width:
                    acc += nxt[d + 1]
                if d >= 1:
                    dn = d - 1
                    if dn < nxt_width and (dn >= 1 or t + 1 == n):
                        acc += nxt[dn]
                if d < nxt_width and (d >= 1 or t + 1 == n):
                    acc += 2 * nxt[d]
                row[d] = acc
            rows[t] = row
        self.n = n
        self.rows = rows

    @property
    def total(self) -> int:
        """The exact size of the walk space."""
        return self.rows[0][0]

    def completions(self, t: int, d: int) -> int:
        if not (0 <= t <= self.n) or d < 0:
            raise ValueError(f"state (t={t}, d={d}) out of range")
        row = self.rows[t]
        return row[d] if d < len(row) else 0

    def forward_counts(self, t: int) -> list[int]:
        """Prefix counts M(t, d): weighted paths reaching half-gap d at time t.

        Rows hold zeros at invalid states, so transitions only need bounds
        checks; the loop range keeps interior targets at d >= 1.
        """
        cur = [1]
        for s in range(1, t + 1):
            width = _dmax(s, self.n) + 1
            nxt = [0] * width
            for d in range(1 if s < self.n else 0, width):
                acc = 0
                if 0 <= d - 1 < len(cur):
                    acc += cur[d - 1]
                if d + 1 < len(cur):
                    acc += cur[d + 1]
                if d < len(cur):
                    acc += 2 * cur[d]
                nxt[d] = acc
            cur = nxt
        return cur

    def gap_distribution(self, t: int) -> dict[int, int]:
        """Exact counts of walk pairs by H(t) value: {2d: M(t,d) * N(t,d)}."""
        fwd = self.forward_counts(t)
        out = {}
        for d, m in enumerate(fwd):
            c = m * self.completions(t, d)
            if c:
                out[2 * d] = c
        return out


def count(n: int) -> int:
    """|B_n| exactly, by the forward half-gap recurrence in O(n^2)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return 2
    # forward vector over d, interior states d >= 1 only
    cur = {0: 1}
    for t in range(1, n):
        nxt: dict[int, int] = {}
        for d, c in cur.items():
            if d + 1 <= _dmax(t, n):
                nxt[d + 1] = nxt.get(d + 1, 0) + c
            if d - 1 >= 1:
                nxt[d - 1] = nxt.get(d - 1, 0) + c
            if d >= 1 and d <= _dmax(t, n):
                nxt[d] = nxt.get(d, 0) + 2 * c
        cur = nxt
    return cur.get(1, 0)


def count_up_to(nmax: int) -> list[int]:
    """[|B_1|, ..., |B_nmax|] from a single forward sweep.

    Valid prefixes do not depend on the horizon except through the final
    forced step, so |B_n| is the weighted number of prefixes of length n-1
    ending at half-gap 1.
    """
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    totals = [2]
    cur = {0: 1}
    for t in range(1, nmax):
        nxt: dict[int, int] = {}
        for d, c in cur.items():
            nxt[d + 1] = nxt.get(d + 1, 0) + c
            if d - 1 >= 1:
                nxt[d - 1] = nxt.get(d - 1, 0) + c
            if d >= 1:
                nxt[d] = nxt.get(d, 0) + 2 * c
        cur = nxt
        totals.append(cur.get(1, 0))
    return totals


def _catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def m_weights_exact(n: int) -> dict[int, int]:
    """Exact walk-pair counts by number m of non-flat joint steps.

    For n == 1 the only mass is at m = 0 (both steps flat).  For n >= 2, m
    runs over even values 2..n; odd-structured m carry weight zero and are
    omitted.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return {0: 2}
    out = {}
    for m in range(2, n + 1, 2):
        out[m] = math.comb(n - 2, m - 2) * _catalan(m // 2 - 1) * 2 ** (n - m)
    return out


def m_decomposition_total(n: int) -> int:
    return sum(m_weights_exact(n).values())
