"""Non-hitting walk pairs and their window statistics.

The walk space B_n consists of pairs (V, W) of +-1-step lattice walks of
length n with V(0) = W(0) = 0, V(n) = W(n), and V(t) > W(t) strictly between.
The gap H(t) = V(t) - W(t) is an even nonnegative path returning to zero.

Each element of B_n encodes a canonical two-chain cover on labels 1..n, with
k = number of up-steps of V, chain A = {1..k} read off the up-steps of V and
chain B = {k+1..n} read off the down-steps.  The per-element incomparability
windows, the area between the two walks, the weak-down-set sizes tau, and the
poset height are all computable directly from the step sequences:

* window of a_i  =  t_W(i) - t_V(i)   (first times V resp. W took i up-steps)
* window of b_j  =  s_V(j) - s_W(j)   (first times W resp. V took j down-steps)
* sum of windows =  area enclosed between the interpolated walks
* height         =  (n + |V(n)|) / 2
"""

from __future__ import annotations

import json

import numpy as np

__all__ = [
    "WalkPair",
    "height_fn",
    "heights",
    "intercept_windows",
    "area",
    "tau_walk",
    "err_bound",
    "element_err_bound",
    "involute",
    "height_from_walks",
    "longest_chain_from_walks",
    "walk_to_text",
    "walk_from_text",
    "walk_to_json",
    "walk_from_json",
]

_STEP_SETS = (-1, 1)


class WalkPair:
    """A pair of non-hitting walks, validated on construction.

    Steps are stored as immutable int8 arrays of +-1 values.  ``check=False``
    skips validation for callers that construct provably valid pairs in bulk.
    """

    __slots__ = ("n", "steps_v", "steps_w")

    def __init__(self, steps_v, steps_w, check: bool = True):
        sv = np.asarray(steps_v, dtype=np.int8).copy()
        sw = np.asarray(steps_w, dtype=np.int8).copy()
        if sv.ndim != 1 or sw.ndim != 1 or sv.shape != sw.shape:
            raise ValueError("steps_v and steps_w must be 1-d sequences of equal length")
        n = int(sv.size)
        if n < 1:
            raise ValueError("walks must have length at least 1")
        if check:
            _check_non_hitting(sv, sw)
        sv.setflags(write=False)
        sw.setflags(write=False)
        self.n = n
        self.steps_v = sv
        self.steps_w = sw

    @property
    def k(self) -> int:
        """Number of up-steps of V, the size of chain A."""
        return int((self.steps_v > 0).sum())

    def v_path(self) -> np.ndarray:
        """V(0..n) as an int array of length n+1."""
        out = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.steps_v, out=out[1:])
        return out

    def w_path(self) -> np.ndarray:
        out = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.steps_w, out=out[1:])
        return out

    def __eq__(self, other):
        return (
            isinstance(other, WalkPair)
            and self.n == other.n
            and np.array_equal(self.steps_v, other.steps_v)
            and np.array_equal(self.steps_w, other.steps_w)
        )

    def __hash__(self):
        return hash((self.steps_v.tobytes(), self.steps_w.tobytes()))

    def __repr__(self):
        return f"WalkPair(n={self.n}, v={walk_to_text(self).splitlines()[0]!r})"


def _check_non_hitting(sv: np.ndarray, sw: np.ndarray):
    n = sv.size
    if not (np.isin(sv, _STEP_SETS).all() and np.isin(sw, _STEP_SETS).all()):
        raise ValueError("steps must all be +1 or -1")
    v = np.cumsum(sv, dtype=np.int64)
    w = np.cumsum(sw, dtype=np.int64)
    if v[-1] != w[-1]:
        raise ValueError("walks must agree at time n")
    if n > 1 and not (v[:-1] > w[:-1]).all():
        t = int(np.flatnonzero(v[:-1] <= w[:-1])[0]) + 1
        raise ValueError(f"walks meet at interior time t={t}")


def heights(w: WalkPair) -> np.ndarray:
    """H(0..n) = V - W, an even nonnegative path with H(0) = H(n) = 0."""
    return w.v_path() - w.w_path()


def height_fn(w: WalkPair, t: int) -> int:
    """The gap V(t) - W(t) at a single time 0 <= t <= n."""
    if not (0 <= t <= w.n):
        raise ValueError(f"time {t} out of range 0..{w.n}")
    return int(w.steps_v[:t].sum(dtype=np.int64) - w.steps_w[:t].sum(dtype=np.int64))


def _first_passage_times(steps: np.ndarray, direction: int) -> np.ndarray:
    """1-based times of the 1st, 2nd, ... step equal to ``direction``."""
    return np.flatnonzero(steps == direction) + 1


def intercept_windows(w: WalkPair) -> tuple[np.ndarray, np.ndarray]:
    """Per-element incomparability windows, chain A then chain B.

    Returns (windows for a_1..a_k, windows for b_1..b_{n-k}).  For n >= 2
    every window is at least 1.
    """
    t_v = _first_passage_times(w.steps_v, 1)
    t_w = _first_passage_times(w.steps_w, 1)
    s_v = _first_passage_times(w.steps_v, -1)
    s_w = _first_passage_times(w.steps_w, -1)
    return t_w - t_v, s_v - s_w


def area(w: WalkPair) -> int:
    """Area between the interpolated walks; equals the sum of all windows."""
    h = heights(w)
    # trapezoid sum of an integer path with even endpoints is an integer
    return int((h[:-1] + h[1:]).sum()) // 2


def tau_walk(w: WalkPair, x: int) -> int:
    """Weak-down-set size of cover element x, read off the walks.

    Element x in 1..k is a_x and maps to t_V(x); element x in k+1..n is
    b_{x-k} and maps to s_W(x-k).
    """
    if not (1 <= x <= w.n):
        raise ValueError(f"element {x} out of range for n={w.n}")
    k = w.k
    if x <= k:
        return int(_first_passage_times(w.steps_v, 1)[x - 1])
    return int(_first_passage_times(w.steps_w, -1)[x - k - 1])


def err_bound(w: WalkPair, tau_x: int, window_x: int) -> int:
    """|V(tau+I) - V(tau)| + |W(tau+I) - W(tau)| for an element with
    weak-down-set size tau and window I.

    The window always satisfies |I - H(tau)| <= this bound.
    """
    if window_x < 0 or tau_x < 0 or tau_x + window_x > w.n:
        raise ValueError(f"need 0 <= tau and 0 <= window with tau+window <= n={w.n}")
    dv = int(w.steps_v[tau_x : tau_x + window_x].sum(dtype=np.int64))
    dw = int(w.steps_w[tau_x : tau_x + window_x].sum(dtype=np.int64))
    return abs(dv) + abs(dw)


def element_err_bound(w: WalkPair, x: int) -> tuple[int, int, int]:
    """(tau, window, err bound) for cover element x."""
    k = w.k
    t = tau_walk(w, x)
    wa, wb = intercept_windows(w)
    win = int(wa[x - 1]) if x <= k else int(wb[x - k - 1])
    return t, win, err_bound(w, t, win)


def involute(w: WalkPair) -> WalkPair:
    """Time reversal with flipped steps; an involution on the walk space."""
    return WalkPair(-w.steps_v[::-1], -w.steps_w[::-1], check=False)


def height_from_walks(w: WalkPair) -> int:
    """The longer-chain height statistic (n + |V(n)|) / 2.

    This is the size of the longer of the two cover chains, the quantity the
    height experiments scale.  It lower-bounds the poset's longest chain but
    does not always equal it: chains may alternate between the two cover
    chains through cross relations (see :func:`longest_chain_from_walks`).
    """
    vn = int(w.steps_v.sum(dtype=np.int64))
    return (w.n + abs(vn)) // 2


def longest_chain_from_walks(w: WalkPair) -> int:
    """Exact longest-chain size of the encoded poset.

    A chain is a set of elements increasing in both greedy orders, so the
    height is the longest increasing subsequence of the permutation sending
    each element's position in one order to its position in the other.
    O(n log n) by patience sorting.
    """
    import bisect

    n = w.n
    pi = np.empty(n + 1, dtype=np.int64)
    pi[_first_passage_times(w.steps_v, 1)] = _first_passage_times(w.steps_w, 1)
    pi[_first_passage_times(w.steps_v, -1)] = _first_passage_times(w.steps_w, -1)
    tails: list[int] = []
    for v in pi[1:]:
        i = bisect.bisect_right(tails, v)
        if i == len(tails):
            tails.append(int(v))
        else:
            tails[i] = int(v)
    return len(tails)


def walk_to_text(w: WalkPair) -> str:
    """Two lines of '+'/'-' characters, V first."""
    ch = {1: "+", -1: "-"}
    top = "".join(ch[int(s)] for s in w.steps_v)
    bot = "".join(ch[int(s)] for s in w.steps_w)
    return f"{top}\n{bot}"


def walk_from_text(text: str) -> WalkPair:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ValueError("expected two lines of +/- characters")
    try:
        sv = [{"+": 1, "-": -1}[c] for c in lines[0].strip()]
        sw = [{"+": 1, "-": -1}[c] for c in lines[1].strip()]
    except KeyError as e:
        raise ValueError(f"unexpected character {e.args[0]!r} in walk text") from None
    return WalkPair(sv, sw)


def walk_to_json(w: WalkPair) -> str:
    return json.dumps(
        {"n": w.n, "v": [int(s) for s in w.steps_v], "w": [int(s) for s in w.steps_w]}
    )


def walk_from_json(text: str) -> WalkPair:
    obj = json.loads(text)
    pair = WalkPair(obj["v"], obj["w"])
    if pair.n != int(obj["n"]):
        raise ValueError("length field disagrees with step arrays")
    return pair
