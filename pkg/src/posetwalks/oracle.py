"""Ground-truth enumeration and exact verification at small n.

Everything here is brute force on purpose: these routines are the oracles the
rest of the library is tested against.  Posets are enumerated by assigning
each unordered pair one of three states (incomparable, up, down) in
lexicographic order with incremental transitivity pruning; walk pairs by
extending joint steps with positivity pruning; covers independently of the
bijection, through the monotone threshold description of their cross-chain
relations.  Measure checks use exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import numpy as np

from .counting import count
from .cover import TwoChainCover, cover_as_poset, gamma, gamma_inverse, psi
from .poset import Poset, factors_with_elements, incomparability_graph
from .walks import WalkPair, area, heights, intercept_windows, tau_walk

__all__ = [
    "VerifyReport",
    "enumerate_posets",
    "iter_posets",
    "enumerate_walk_pairs",
    "iter_walk_pairs",
    "enumerate_covers",
    "census",
    "load_census_golden",
    "verify_bijection",
    "verify_uniform_cover_measure",
    "verify_symmetrization",
    "verify_area_identity",
    "verify_err_inequality",
    "verify_factor_dominance",
    "verify_first_return",
    "POSET_ENUM_CAP",
    "WALK_ENUM_CAP",
    "COVER_ENUM_CAP",
]

POSET_ENUM_CAP = 7
WALK_ENUM_CAP = 12
COVER_ENUM_CAP = 10

_FILTERS = ("all", "width2", "width_le2", "one_factor")


@dataclass
class VerifyReport:
    """Outcome of one exact verification run."""

    name: str
    n: int
    passed: bool
    details: dict = field(default_factory=dict)

    def __str__(self):
        state = "PASS" if self.passed else "FAIL"
        parts = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"[{state}] {self.name} n={self.n}: {parts}"


def iter_posets(n: int, which: str = "all"):
    """Yield posets on [n] in lexicographic pair-assignment order.

    States per unordered pair are tried as incomparable, then up, then down.
    ``width2`` means width exactly 2; ``one_factor`` means connected
    incomparability graph of width at most 2 (for n >= 2 the width is then
    exactly 2).  Width-restricted filters prune three-element antichains
    during the search, so they run far faster than ``all``.
    """
    if which not in _FILTERS:
        raise ValueError(f"unknown filter {which!r}, expected one of {_FILTERS}")
    if not (1 <= n <= POSET_ENUM_CAP):
        raise ValueError(f"poset enumeration supports 1 <= n <= {POSET_ENUM_CAP}")
    restrict_width = which in ("width2", "width_le2", "one_factor")

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = [[False] * n for _ in range(n)]
    incomp = [[False] * n for _ in range(n)]

    def triples_ok(i, j):
        for y in range(i):
            for a, b, c in (
                (y, i, j), (y, j, i), (i, y, j),
                (i, j, y), (j, y, i), (j, i, y),
            ):
                if rel[a][b] and rel[b][c] and not rel[a][c]:
                    return False
        return True

    def antichain_ok(i, j):
        for y in range(i):
            if incomp[y][i] and incomp[y][j]:
                return False
        return True

    def emit():
        mat = np.array(rel, dtype=bool)
        p = Poset(n, mat)
        if which == "all":
            yield p
            return
        has_edge = any(incomp[i][j] for i, j in pairs)
        if which == "width2" and not has_edge:
            return
        if which == "one_factor":
            g = incomparability_graph(p)
            if not _connected(np.asarray(g.adj)):
                return
        yield p

    def rec(idx):
        if idx == len(pairs):
            yield from emit()
            return
        i, j = pairs[idx]
        # incomparable; still need the triple check, earlier relations may
        # force this pair to be ordered
        incomp[i][j] = True
        if triples_ok(i, j) and (not restrict_width or antichain_ok(i, j)):
            yield from rec(idx + 1)
        incomp[i][j] = False
        # ordered, both directions
        for a, b in ((i, j), (j, i)):
            rel[a][b] = True
            if triples_ok(i, j):
                yield from rec(idx + 1)
            rel[a][b] = False

    yield from rec(0)


def _connected(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for u in np.flatnonzero(adj[v] & ~seen):
            seen[u] = True
            stack.append(int(u))
    return bool(seen.all())


def enumerate_posets(n: int, which: str = "all") -> list[Poset]:
    return list(iter_posets(n, which))


def iter_walk_pairs(n: int):
    """Yield every non-hitting pair of length n, depth first over joint steps."""
    if not (1 <= n <= WALK_ENUM_CAP):
        raise ValueError(f"walk enumeration supports 1 <= n <= {WALK_ENUM_CAP}")
    sv = np.empty(n, dtype=np.int8)
    sw = np.empty(n, dtype=np.int8)

    def rec(t, d):
        if t == n:
            if d == 0:
                yield WalkPair(sv, sw, check=False)
            return
        if d > n - t:  # cannot come back to zero in time
            return
        for dv, dw in ((1, -1), (-1, 1), (1, 1), (-1, -1)):
            nd = d + (dv - dw) // 2
            if nd < 0:
                continue
            if t + 1 < n and nd == 0:
                continue
            if t + 1 == n and nd != 0:
                continue
            sv[t], sw[t] = dv, dw
            yield from rec(t + 1, nd)

    yield from rec(0, 0)


def enumerate_walk_pairs(n: int) -> list[WalkPair]:
    return list(iter_walk_pairs(n))


def enumerate_covers(n: int) -> list[TwoChainCover]:
    """All one-factor canonical covers on [n], independent of the bijection.

    Cross relations of a canonical cover are two monotone threshold vectors:
    s_i = least j with a_i below b_j, and t_j = least i with b_j below a_i
    (chain order makes both sets up-closed and nested).  A threshold pair is
    a strict order exactly when no pair is related both ways; transitivity
    then comes for free.  One-factor status is checked on the result.
    """
    if not (1 <= n <= COVER_ENUM_CAP):
        raise ValueError(f"cover enumeration supports 1 <= n <= {COVER_ENUM_CAP}")
    out = []
    for k in range(n + 1):
        nb = n - k
        for s in itertools.combinations_with_replacement(range(1, nb + 2), k):
            for t in itertools.combinations_with_replacement(range(1, k + 2), nb):
                if not _thresholds_compatible(k, nb, s, t):
                    continue
                cov = _cover_from_thresholds(n, k, s, t)
                if _connected(np.asarray(incomparability_graph(cover_as_poset(cov)).adj)):
                    out.append(cov)
    return out


def _thresholds_compatible(k, nb, s, t):
    for i in range(1, k + 1):
        for j in range(s[i - 1], nb + 1):
            # a_i below b_j; b_j must not be below a_i
            if t[j - 1] <= i:
                return False
    return True


def _cover_from_thresholds(n, k, s, t):
    rel = np.zeros((n, n), dtype=bool)
    for block in (range(k), range(k, n)):
        idx = list(block)
        for ai, a in enumerate(idx):
            for b in idx[ai + 1 :]:
                rel[a, b] = True
    for i in range(1, k + 1):
        for j in range(s[i - 1], n - k + 1):
            rel[i - 1, k + j - 1] = True
    for j in range(1, n - k + 1):
        for i in range(t[j - 1], k + 1):
            rel[k + j - 1, i - 1] = True
    return TwoChainCover(n, k, rel, check=False)


def census(n: int) -> dict:
    """Exact object counts at one n, as written to the committed golden files."""
    wl2 = enumerate_posets(n, "width_le2")
    exact2 = [p for p in wl2 if bool(incomparability_graph(p).adj.any())]
    onef = [
        p
        for p in wl2
        if _connected(np.asarray(incomparability_graph(p).adj))
    ]
    covers = enumerate_covers(n) if n <= COVER_ENUM_CAP else None
    walks = count(n)
    split: dict[str, int] = {}
    for p in onef:
        size = len(psi(p))
        split[str(size)] = split.get(str(size), 0) + 1
    return {
        "n": n,
        "counts": {
            "posets_width2": len(exact2),
            "posets_width_le2": len(wl2),
            "posets_one_factor": len(onef),
            "covers": len(covers) if covers is not None else None,
            "walk_pairs": walks,
        },
        "psi_split": split,
    }


def load_census_golden(n: int) -> dict:
    """The committed census for one n; raises if no golden exists."""
    ref = resources.files("posetwalks").joinpath(f"data/census/census_{n}.json")
    return json.loads(ref.read_text())


def verify_bijection(n: int) -> VerifyReport:
    """Round-trip both ways over the full enumerations and compare sizes."""
    covers = enumerate_covers(n)
    walks = enumerate_walk_pairs(n)
    walk_set = set(walks)
    image = set()
    failures = 0
    for c in covers:
        w = gamma(c)
        image.add(w)
        if w not in walk_set or gamma_inverse(w) != c:
            failures += 1
    for w in walks:
        if gamma(gamma_inverse(w)) != w:
            failures += 1
    counts_agree = len(covers) == len(walks) == len(image) == count(n)
    return VerifyReport(
        "bijection",
        n,
        failures == 0 and counts_agree,
        {
            "covers": len(covers),
            "walk_pairs": len(walks),
            "image": len(image),
            "count": count(n),
            "round_trip_failures": failures,
        },
    )


def verify_uniform_cover_measure(n: int) -> VerifyReport:
    """Push the uniform measure on one-factor posets through the covers.

    Each poset spreads mass 1/|P1| equally over its one or two covers.  The
    check is exact: every cover must receive 1/|C1|, and through the
    bijection every walk pair must receive 1/|B_n|.
    """
    if n > 6:
        raise ValueError("uniform-measure verification is meant for n <= 6")
    posets = enumerate_posets(n, "one_factor")
    cover_mass: dict[TwoChainCover, Fraction] = {}
    split: dict[int, int] = {}
    for p in posets:
        cs = psi(p)
        split[len(cs)] = split.get(len(cs), 0) + 1
        share = Fraction(1, len(posets) * len(cs))
        for c in cs:
            cover_mass[c] = cover_mass.get(c, Fraction(0)) + share
    all_covers = enumerate_covers(n)
    target = Fraction(1, len(all_covers))
    uniform_cov = set(cover_mass) == set(all_covers) and all(
        v == target for v in cover_mass.values()
    )
    walk_mass = {gamma(c): v for c, v in cover_mass.items()}
    walk_target = Fraction(1, count(n))
    uniform_walk = len(walk_mass) == count(n) and all(
        v == walk_target for v in walk_mass.values()
    )
    dev = max(
        (abs(v - target) for v in cover_mass.values()), default=Fraction(0)
    )
    return VerifyReport(
        "uniform-cover-measure",
        n,
        uniform_cov and uniform_walk,
        {
            "posets": len(posets),
            "covers": len(all_covers),
            "psi_split": split,
            "max_deviation": str(dev),
            "walk_side_uniform": uniform_walk,
        },
    )


def _gap_histograms(n: int):
    """Exact histograms over the full walk space.

    Returns (by_element, by_time, up_down, down_up) where ``by_element``
    counts gap values observed at the weak-down-set times of all cover
    elements, ``by_time`` counts gap values over all times, and the last two
    count gap values landed on by (+,-) and (-,+) joint steps.
    """
    by_element: dict[int, int] = {}
    by_time: dict[int, int] = {}
    up_down: dict[int, int] = {}
    down_up: dict[int, int] = {}
    for w in iter_walk_pairs(n):
        h = heights(w)
        taus = np.concatenate(
            [np.flatnonzero(w.steps_v == 1), np.flatnonzero(w.steps_w == -1)]
        ) + 1
        for m in h[taus]:
            by_element[int(m)] = by_element.get(int(m), 0) + 1
        for t in range(1, n + 1):
            m = int(h[t])
            by_time[m] = by_time.get(m, 0) + 1
            sv, sw = int(w.steps_v[t - 1]), int(w.steps_w[t - 1])
            if (sv, sw) == (1, -1):
                up_down[m] = up_down.get(m, 0) + 1
            elif (sv, sw) == (-1, 1):
                down_up[m] = down_up.get(m, 0) + 1
    return by_element, by_time, up_down, down_up


def verify_symmetrization(n: int) -> VerifyReport:
    """Compare the element-time and uniform-time gap distributions exactly.

    ``passed`` reflects the literal claim that the two distributions agree
    for every even gap value.  The report also carries the exact involution
    accounting that does hold: the element side exceeds the time side at gap
    m by exactly (number of (+,-) steps landing at m) minus (number landing
    at m+2), and time reversal matches (-,+) steps at m with (+,-) steps at
    m+2.  The literal claim fails for every n >= 2 (see README).
    """
    by_element, by_time, up_down, down_up = _gap_histograms(n)
    ms = sorted(set(by_element) | set(by_time) | set(up_down) | set(down_up))
    literal = all(by_element.get(m, 0) == by_time.get(m, 0) for m in ms)
    corrected = all(
        by_element.get(m, 0) - by_time.get(m, 0)
        == up_down.get(m, 0) - up_down.get(m + 2, 0)
        for m in ms
    )
    reversal = all(down_up.get(m, 0) == up_down.get(m + 2, 0) for m in ms)
    worst = max(
        (abs(by_element.get(m, 0) - by_time.get(m, 0)) for m in ms), default=0
    )
    return VerifyReport(
        "symmetrization",
        n,
        literal,
        {
            "by_element": dict(sorted(by_element.items())),
            "by_time": dict(sorted(by_time.items())),
            "max_abs_difference": worst,
            "involution_identity_holds": corrected and reversal,
        },
    )


def verify_area_identity(n: int) -> VerifyReport:
    """area == sum of all windows, over the full walk space at this n."""
    bad = 0
    total = 0
    for w in iter_walk_pairs(n):
        total += 1
        wa, wb = intercept_windows(w)
        if area(w) != int(wa.sum()) + int(wb.sum()):
            bad += 1
    return VerifyReport("area-identity", n, bad == 0, {"pairs": total, "violations": bad})


def verify_err_inequality(n: int) -> VerifyReport:
    """|window - gap at tau| <= walk increment bound, all pairs and elements."""
    bad = 0
    pairs = 0
    for w in iter_walk_pairs(n):
        pairs += 1
        h = heights(w)
        wa, wb = intercept_windows(w)
        k = w.k
        for x in range(1, n + 1):
            t = tau_walk(w, x)
            win = int(wa[x - 1]) if x <= k else int(wb[x - k - 1])
            dv = int(w.steps_v[t : t + win].sum(dtype=np.int64))
            dw = int(w.steps_w[t : t + win].sum(dtype=np.int64))
            if abs(win - int(h[t])) > abs(dv) + abs(dw):
                bad += 1
    return VerifyReport("err-inequality", n, bad == 0, {"pairs": pairs, "violations": bad})


def verify_factor_dominance(n: int) -> VerifyReport:
    """Fraction of width-2 posets whose largest factor has size >= n - ln n.

    Informational: the limit statement has no finite-n rate, so no threshold
    is asserted; the report carries the exact fraction.
    """
    posets = enumerate_posets(n, "width2")
    cut = n - math.log(n)
    good = 0
    for p in posets:
        largest = max(len(els) for els, _ in factors_with_elements(p))
        if largest >= cut:
            good += 1
    frac = Fraction(good, len(posets)) if posets else Fraction(0)
    return VerifyReport(
        "factor-dominance",
        n,
        True,
        {"posets": len(posets), "threshold": f"{cut:.3f}", "fraction": str(frac), "fraction_float": float(frac)},
    )


def verify_first_return(kmax: int) -> VerifyReport:
    """First-return law of the simple random walk, checked by full enumeration.

    For each k <= kmax, counts paths of length 2k with no interior zero and
    S(2k) = 0 over all 2^(2k) sign sequences (vectorized in chunks), and
    compares the exact rational probability with C(2k, k) / ((2k-1) 4^k).
    """
    if not (1 <= kmax <= 12):
        raise ValueError("first-return check supports kmax <= 12")
    mismatches = []
    values = {}
    for k in range(1, kmax + 1):
        steps = 2 * k
        total = 1 << steps
        hits = 0
        chunk = 1 << 18
        bit_weights = (1 << np.arange(steps, dtype=np.int64))
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            bits = ((idx[:, None] & bit_weights[None, :]) > 0).astype(np.int8)
            walk = np.cumsum(2 * bits - 1, axis=1, dtype=np.int32)
            interior_ok = (walk[:, :-1] != 0).all(axis=1)
            hits += int((interior_ok & (walk[:, -1] == 0)).sum())
        brute = Fraction(hits, total)
        formula = Fraction(math.comb(steps, k), (steps - 1) * 4**k)
        values[k] = str(brute)
        if brute != formula:
            mismatches.append(k)
    return VerifyReport(
        "first-return",
        kmax,
        not mismatches,
        {"mismatched_k": mismatches, "probabilities": values},
    )
