"""Monte Carlo experiments against the reference limit laws.

Each experiment draws uniform walk pairs, computes one scaled statistic per
draw, and grades the empirical distribution against a reference law by KS
distance and relative mean error.  Tolerances are engineering calibrations
(the limits come with no rates); failing runs still report full effect sizes.

Reproducibility contract: work is split into fixed-size blocks of samples,
block i drawn from the Philox stream (seed, i) regardless of thread count,
and results are concatenated in block order.  A run is therefore bit-stable
for a given seed no matter how many workers execute it.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .counting import DEFAULT_DP_CAP
from .laws import (
    ReferenceLaw,
    excursion_area,
    half_normal_height,
    ks_distance,
    ks_pvalue,
    rayleigh_window,
    standard_normal,
    two_sample_ks,
)
from .sampling import DecomposedSampler, DPSampler, stream_rng
from .walks import WalkPair

__all__ = [
    "ExperimentResult",
    "ErrScalingReport",
    "experiment_window",
    "experiment_height",
    "experiment_avg_window",
    "experiment_err_scaling",
    "sampler_agreement",
    "STREAM_BLOCK",
]

STREAM_BLOCK = 4096

_SALTS = {"window": 1, "height": 2, "avgwindow": 3, "errscaling": 4, "dp": 5, "decomposed": 6}


@dataclass
class ExperimentResult:
    """Summary of one experiment run; JSON output is timestamp-free."""

    law: str
    n: int
    samples: int
    seed: int
    ks: float
    mean: float
    var: float
    passed: bool
    ks_tol: float | None
    mean_rtol: float
    reference_mean: float
    details: dict = field(default_factory=dict)
    statistic: np.ndarray | None = None

    def to_json(self) -> str:
        obj = {
            "law": self.law,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "ks": self.ks,
            "mean": self.mean,
            "var": self.var,
            "pass": self.passed,
            "ks_tol": self.ks_tol,
            "mean_rtol": self.mean_rtol,
            "reference_mean": self.reference_mean,
            "details": self.details,
        }
        return json.dumps(obj)

    def write_csv(self, path):
        """Raw scaled samples, one per row, for external plotting."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["statistic"])
            for v in self.statistic if self.statistic is not None else []:
                writer.writerow([repr(float(v))])

    def summary(self) -> str:
        state = "pass" if self.passed else "FAIL"
        return (
            f"{self.law}: n={self.n} samples={self.samples} seed={self.seed} "
            f"ks={self.ks:.5f} (tol {self.ks_tol}) mean={self.mean:.5f} "
            f"(ref {self.reference_mean:.5f}, rtol {self.mean_rtol}) -> {state}"
        )


def _make_sampler(n: int, method: str, dp_cap: int):
    if method == "auto":
        method = "dp" if n <= min(dp_cap, 512) else "decomposed"
    if method == "dp":
        return DPSampler(n, cap=dp_cap), "dp"
    if method == "decomposed":
        return DecomposedSampler(n), "decomposed"
    raise ValueError(f"unknown sampling method {method!r}")


def _run_blocks(total: int, seed: int, salt: int, threads: int, block_fn):
    """Evaluate block_fn(rng, count) per fixed-size block; concatenate in order."""
    blocks = [
        (i, min(STREAM_BLOCK, total - i * STREAM_BLOCK))
        for i in range((total + STREAM_BLOCK - 1) // STREAM_BLOCK)
    ]

    def work(args):
        i, cnt = args
        return block_fn(stream_rng(seed, i, salt=salt), cnt)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    ncols = len(parts[0])
    return tuple(np.concatenate([p[c] for p in parts]) for c in range(ncols))


def _window_of_element(pair: WalkPair, x: int) -> tuple[int, int]:
    """(window, tau) of cover element x, straight from the step arrays."""
    k = pair.k
    if x <= k:
        t_v = int(np.flatnonzero(pair.steps_v == 1)[x - 1]) + 1
        t_w = int(np.flatnonzero(pair.steps_w == 1)[x - 1]) + 1
        return t_w - t_v, t_v
    j = x - k
    s_v = int(np.flatnonzero(pair.steps_v == -1)[j - 1]) + 1
    s_w = int(np.flatnonzero(pair.steps_w == -1)[j - 1]) + 1
    return s_v - s_w, s_w


def experiment_window(
    n: int,
    samples: int,
    seed: int,
    threads: int = 1,
    method: str = "auto",
    ks_tol: float = 0.02,
    mean_rtol: float = 0.02,
    law: ReferenceLaw | None = None,
    dp_cap: int = DEFAULT_DP_CAP,
) -> ExperimentResult:
    """Window of a uniform element of a uniform pair, scaled by 1/sqrt(n).

    One element is drawn per pair, matching the one-point statement being
    tested.
    """
    if n < 2:
        raise ValueError("window experiment needs n >= 2")
    law = law or rayleigh_window()
    sampler, method_used = _make_sampler(n, method, dp_cap)
    scale = 1.0 / math.sqrt(n)

    def block(rng, cnt):
        out = np.empty(cnt)
        for i in range(cnt):
            pair = sampler.draw(rng)
            x = int(rng.integers(1, n + 1))
            win, _ = _window_of_element(pair, x)
            out[i] = win * scale
        return (out,)

    (stat,) = _run_blocks(samples, seed, _SALTS["window"], threads, block)
    return _grade(stat, law, n, samples, seed, ks_tol, mean_rtol, {"method": method_used})


def experiment_height(
    n: int,
    samples: int,
    seed: int,
    threads: int = 1,
    method: str = "auto",
    ks_tol: float = 0.02,
    mean_rtol: float = 0.02,
    law: ReferenceLaw | None = None,
    dp_cap: int = DEFAULT_DP_CAP,
) -> ExperimentResult:
    """(height - n/2) / sqrt(n) of uniform pairs, which is |V(n)| / (2 sqrt n).

    Also grades the centered endpoint (V(n) + W(n)) / sqrt(n) against the
    standard normal as a conditional CLT check; its KS distance is reported
    in the details.
    """
    if n < 2:
        raise ValueError("height experiment needs n >= 2")
    law = law or half_normal_height()
    sampler, method_used = _make_sampler(n, method, dp_cap)
    scale = 1.0 / (2.0 * math.sqrt(n))

    rootn = math.sqrt(n)

    def block(rng, cnt):
        hstat = np.empty(cnt)
        zstat = np.empty(cnt)
        for i in range(cnt):
            pair = sampler.draw(rng)
            vn = int(pair.steps_v.sum(dtype=np.int64))
            wn = int(pair.steps_w.sum(dtype=np.int64))
            hstat[i] = abs(vn) * scale
            zstat[i] = (vn + wn) / rootn
        return hstat, zstat

    hstat, zstat = _run_blocks(samples, seed, _SALTS["height"], threads, block)
    normal = standard_normal()
    extra = {
        "method": method_used,
        "endpoint_z_ks_vs_standard_normal": ks_distance(zstat, normal),
        "endpoint_z_var": float(zstat.var()),
        "endpoint_z_over_sqrt2_ks_vs_standard_normal": ks_distance(zstat / math.sqrt(2.0), normal),
    }
    return _grade(hstat, law, n, samples, seed, ks_tol, mean_rtol, extra)


def experiment_avg_window(
    n: int,
    samples: int,
    seed: int,
    threads: int = 1,
    method: str = "auto",
    ks_tol: float | None = None,
    mean_rtol: float = 0.02,
    law: ReferenceLaw | None = None,
    dp_cap: int = DEFAULT_DP_CAP,
) -> ExperimentResult:
    """Average window per pair: area / (n sqrt n), against the area law.

    Pass/fail is graded on the mean alone; the KS distance against the
    tabulated area cdf is informational unless a tolerance is supplied.
    """
    if n < 2:
        raise ValueError("average-window experiment needs n >= 2")
    law = law or excursion_area()
    sampler, method_used = _make_sampler(n, method, dp_cap)
    scale = 1.0 / (n * math.sqrt(n))

    def block(rng, cnt):
        out = np.empty(cnt)
        for i in range(cnt):
            pair = sampler.draw(rng)
            # H(n) = 0, so the trapezoid area is just the sum of H(1..n)
            h = np.cumsum(pair.steps_v - pair.steps_w, dtype=np.int64)
            out[i] = int(h.sum()) * scale
        return (out,)

    (stat,) = _run_blocks(samples, seed, _SALTS["avgwindow"], threads, block)
    return _grade(stat, law, n, samples, seed, ks_tol, mean_rtol, {"method": method_used})


@dataclass
class ErrScalingReport:
    """Tail and fluctuation estimates across a ladder of sizes."""

    n_list: list[int]
    samples: int
    seed: int
    tail_probability: dict[int, float]
    mean_err_scaled: dict[int, float]
    tail_threshold: float
    err_threshold: float
    threshold_n: int
    passed: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "law": "err_scaling",
                "n_list": self.n_list,
                "samples": self.samples,
                "seed": self.seed,
                "tail_probability": {str(k): v for k, v in self.tail_probability.items()},
                "mean_err_scaled": {str(k): v for k, v in self.mean_err_scaled.items()},
                "tail_threshold": self.tail_threshold,
                "err_threshold": self.err_threshold,
                "threshold_n": self.threshold_n,
                "pass": self.passed,
                "details": self.details,
            }
        )

    def summary(self) -> str:
        rows = [
            f"  n={n}: P(window > n^(2/3)) = {self.tail_probability[n]:.5f}, "
            f"mean err/sqrt(n) = {self.mean_err_scaled[n]:.5f}"
            for n in self.n_list
        ]
        state = "pass" if self.passed else "FAIL"
        return "err scaling:\n" + "\n".join(rows) + f"\n  -> {state}"


def experiment_err_scaling(
    n_list,
    samples: int,
    seed: int,
    threads: int = 1,
    method: str = "auto",
    tail_threshold: float = 0.05,
    err_threshold: float = 0.1,
    threshold_n: int | None = None,
    dp_cap: int = DEFAULT_DP_CAP,
) -> ErrScalingReport:
    """Estimate P(window > n^(2/3)) and the mean scaled increment bound.

    The bound is |V(tau+I) - V(tau)| + |W(tau+I) - W(tau)| for the sampled
    element, divided by sqrt(n).  Thresholds are graded at ``threshold_n``
    (default: the largest n); the cross-n trend is reported, not asserted.
    """
    n_list = sorted(int(x) for x in n_list)
    if not n_list or n_list[0] < 2:
        raise ValueError("need sizes >= 2")
    threshold_n = threshold_n if threshold_n is not None else n_list[-1]
    tail: dict[int, float] = {}
    errs: dict[int, float] = {}
    for idx, n in enumerate(n_list):
        sampler, _ = _make_sampler(n, method, dp_cap)
        cutoff = n ** (2.0 / 3.0)
        rootn = math.sqrt(n)

        def block(rng, cnt, sampler=sampler, n=n):
            wins = np.empty(cnt)
            ebs = np.empty(cnt)
            for i in range(cnt):
                pair = sampler.draw(rng)
                x = int(rng.integers(1, n + 1))
                win, tau_x = _window_of_element(pair, x)
                dv = int(pair.steps_v[tau_x : tau_x + win].sum(dtype=np.int64))
                dw = int(pair.steps_w[tau_x : tau_x + win].sum(dtype=np.int64))
                wins[i] = win
                ebs[i] = abs(dv) + abs(dw)
            return wins, ebs

        wins, ebs = _run_blocks(samples, seed, _SALTS["errscaling"] + 100 * idx, threads, block)
        tail[n] = float((wins > cutoff).mean())
        errs[n] = float(ebs.mean() / rootn)
    ok = tail[threshold_n] < tail_threshold and errs[threshold_n] < err_threshold
    trend = {
        "tail_strictly_decreasing_ends": tail[n_list[-1]] < tail[n_list[0]],
        "err_strictly_decreasing_ends": errs[n_list[-1]] < errs[n_list[0]],
    }
    return ErrScalingReport(
        n_list, samples, seed, tail, errs, tail_threshold, err_threshold,
        threshold_n, ok, trend,
    )


def sampler_agreement(
    n: int,
    draws: int,
    seed: int,
    threads: int = 1,
    alpha: float = 0.01,
    dp_cap: int = DEFAULT_DP_CAP,
) -> dict:
    """Two-sample KS between the two exact samplers on H(n/2) / sqrt(n)."""
    mid = n // 2
    rootn = math.sqrt(n)

    def stat_block(sampler):
        def block(rng, cnt):
            out = np.empty(cnt)
            for i in range(cnt):
                pair = sampler.draw(rng)
                gap = int(
                    pair.steps_v[:mid].sum(dtype=np.int64)
                    - pair.steps_w[:mid].sum(dtype=np.int64)
                )
                out[i] = gap / rootn
            return (out,)

        return block

    dp = DPSampler(n, cap=dp_cap)
    dec = DecomposedSampler(n)
    (a,) = _run_blocks(draws, seed, _SALTS["dp"], threads, stat_block(dp))
    (b,) = _run_blocks(draws, seed, _SALTS["decomposed"], threads, stat_block(dec))
    stat = two_sample_ks(a, b)
    p = ks_pvalue(stat, a.size, b.size)
    return {
        "law": "sampler_agreement",
        "n": n,
        "samples": draws,
        "seed": seed,
        "ks": stat,
        "pvalue": p,
        "alpha": alpha,
        "pass": p > alpha,
    }


def _grade(stat, law, n, samples, seed, ks_tol, mean_rtol, details) -> ExperimentResult:
    ks = ks_distance(stat, law)
    mean = float(stat.mean())
    var = float(stat.var())
    ok = (ks_tol is None or ks < ks_tol) and abs(mean - law.mean) <= mean_rtol * abs(law.mean)
    return ExperimentResult(
        law=law.name,
        n=n,
        samples=samples,
        seed=seed,
        ks=ks,
        mean=mean,
        var=var,
        passed=ok,
        ks_tol=ks_tol,
        mean_rtol=mean_rtol,
        reference_mean=law.mean,
        details=details,
        statistic=stat,
    )
