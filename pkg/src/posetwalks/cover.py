"""Two-chain covers and the bijection between covers and walk pairs.

A width-2 poset splits into two chains (Dilworth).  Chains are exactly the
independent sets of the incomparability graph, so an ordered chain partition
of a poset is the same thing as a proper 2-coloring; when the incomparability
graph is connected (one factor) the unordered partition is unique and the
poset has at most two covers up to isomorphism, the (A, B) and (B, A)
readings of that partition.

Covers are kept in canonical form: chain A occupies labels 1..k in chain
order, chain B occupies k+1..n.  Two canonical covers are isomorphic exactly
when they are equal, because a cover isomorphism must preserve each chain's
internal order.

The bijection with walk pairs goes through the greedy pair of linear orders
(lam, delta): lam breaks each incomparable cross pair A-first, delta breaks
it B-first, and the cover is recovered as the intersection of the two total
orders.  V steps up where lam visits A, W steps up where delta visits A; one
factor makes the walks non-hitting, and every non-hitting pair arises from
exactly one canonical cover.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .poset import Poset, incomparability_graph, transitive_closure, validate
from .walks import WalkPair

__all__ = [
    "TwoChainCover",
    "GreedyPair",
    "psi",
    "chain_partition_covers",
    "greedy_pair",
    "is_greedy_pair",
    "gamma",
    "gamma_inverse",
    "cover_to_json",
    "cover_from_json",
    "cover_as_poset",
    "swap_chains",
]


class TwoChainCover:
    """Canonical two-chain cover: A = {1..k} and B = {k+1..n}, chains in
    label order, with the full strict order stored like a poset."""

    __slots__ = ("n", "k", "rel")

    def __init__(self, n: int, k: int, rel: np.ndarray, check: bool = True):
        if not (0 <= k <= n) or n < 1:
            raise ValueError(f"need 0 <= k <= n and n >= 1, got k={k}, n={n}")
        rel = np.asarray(rel, dtype=bool).copy()
        if rel.shape != (n, n):
            raise ValueError(f"relation matrix must be {n}x{n}")
        if check:
            _check_canonical(n, k, rel)
        rel.setflags(write=False)
        self.n = n
        self.k = k
        self.rel = rel

    def a_label(self, i: int) -> int:
        """Label of a_i (1-based chain position)."""
        if not (1 <= i <= self.k):
            raise ValueError(f"chain A has {self.k} elements")
        return i

    def b_label(self, j: int) -> int:
        if not (1 <= j <= self.n - self.k):
            raise ValueError(f"chain B has {self.n - self.k} elements")
        return self.k + j

    def in_a(self, x: int) -> bool:
        return 1 <= x <= self.k

    def cross_pairs(self) -> list[tuple[int, int]]:
        """Cross-chain relations (x, y) meaning x below y, 1-based labels."""
        k = self.k
        out = []
        for i, j in np.argwhere(self.rel):
            if (i < k) != (j < k):
                out.append((int(i) + 1, int(j) + 1))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, TwoChainCover)
            and (self.n, self.k) == (other.n, other.k)
            and np.array_equal(self.rel, other.rel)
        )

    def __hash__(self):
        return hash((self.n, self.k, self.rel.tobytes()))

    def __repr__(self):
        return f"TwoChainCover(n={self.n}, k={self.k}, cross={self.cross_pairs()})"


def _check_canonical(n: int, k: int, rel: np.ndarray):
    p = Poset(n, rel)
    bad = validate(p)
    if bad is not None:
        raise ValueError(f"cover relation is not a strict order: {bad}")
    for block in (range(k), range(k, n)):
        idx = list(block)
        for ai, a in enumerate(idx):
            for b in idx[ai + 1 :]:
                if not rel[a, b]:
                    raise ValueError(
                        f"labels {a + 1} and {b + 1} must form a chain in label order"
                    )


def cover_as_poset(c: TwoChainCover) -> Poset:
    return Poset(c.n, c.rel)


@dataclass(frozen=True)
class GreedyPair:
    """The two extremal linear extensions of a cover, as 1-based label tuples."""

    lam: tuple[int, ...]
    delta: tuple[int, ...]


def _canonicalize(p: Poset, part_a: list[int], part_b: list[int]) -> TwoChainCover:
    """Relabel an ordered chain partition of p into canonical cover form."""

    def chain_order(block):
        return sorted(block, key=lambda v: int(p.rel[:, v][block].sum()))

    a_sorted = chain_order(part_a)
    b_sorted = chain_order(part_b)
    perm = np.empty(p.n, dtype=np.int64)
    for new, old in enumerate(a_sorted + b_sorted):
        perm[old] = new
    rel = np.zeros_like(p.rel)
    src = np.argwhere(p.rel)
    if src.size:
        rel[perm[src[:, 0]], perm[src[:, 1]]] = True
    return TwoChainCover(p.n, len(part_a), rel, check=False)


def _two_color(adj: np.ndarray) -> np.ndarray | None:
    """Proper 2-coloring per component, or None if an odd cycle exists."""
    n = adj.shape[0]
    color = np.full(n, -1, dtype=np.int8)
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            nbrs = np.flatnonzero(adj[v])
            for u in nbrs:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    stack.append(int(u))
                elif color[u] == color[v]:
                    return None
    return color


def chain_partition_covers(p: Poset) -> set[TwoChainCover]:
    """All canonical covers of a width <= 2 poset, one per ordered chain
    partition, deduplicated up to isomorphism.

    Works factor by factor: each connected component of the incomparability
    graph is independently 2-colorable, and unions of chains across factors
    stay chains.  A one-factor poset yields one or two covers.
    """
    g = incomparability_graph(p)
    color = _two_color(np.asarray(g.adj))
    if color is None:
        raise ValueError("poset has width greater than 2")
    comps = _component_list(g.adj)
    covers: set[TwoChainCover] = set()
    for mask in range(1 << len(comps)):
        part_a, part_b = [], []
        for ci, comp in enumerate(comps):
            flip = (mask >> ci) & 1
            for v in comp:
                (part_a if color[v] ^ flip == 0 else part_b).append(v)
        covers.add(_canonicalize(p, part_a, part_b))
    return covers


def _component_list(adj: np.ndarray) -> list[list[int]]:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in np.flatnonzero(adj[v] & ~seen):
                seen[u] = True
                stack.append(int(u))
        comps.append(comp)
    return comps


def psi(p: Poset) -> set[TwoChainCover]:
    """The unlabeled covers of a one-factor poset, as canonical covers.

    The result has one or two elements.  Multi-factor input and width above
    2 are rejected.
    """
    g = incomparability_graph(p)
    if len(_component_list(g.adj)) != 1:
        raise ValueError("psi needs a one-factor poset")
    covers = chain_partition_covers(p)
    assert len(covers) in (1, 2)
    return covers


def swap_chains(c: TwoChainCover) -> TwoChainCover:
    """Canonical form of the cover with the roles of A and B exchanged."""
    n, k = c.n, c.k
    perm = np.concatenate([np.arange(n - k) + k, np.arange(k)])
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    rel = np.zeros_like(c.rel)
    src = np.argwhere(c.rel)
    if src.size:
        rel[inv[src[:, 0]], inv[src[:, 1]]] = True
    return TwoChainCover(n, n - k, rel, check=False)


def greedy_pair(c: TwoChainCover) -> GreedyPair:
    """Merge the chains A-first (lam) and B-first (delta).

    At each point the undominated head is unique: the A head goes first in
    lam unless the B head lies below it, and symmetrically for delta.
    Intersecting the two outputs as orders recovers the cover relation.
    """
    n, k = c.n, c.k
    rel = c.rel

    def merge(prefer_a: bool) -> tuple[int, ...]:
        i, j = 0, 0  # consumed from A, from B
        out = []
        while len(out) < n:
            a = i  # 0-based label of A head
            b = k + j
            if i == k:
                take_a = False
            elif j == n - k:
                take_a = True
            elif prefer_a:
                take_a = not rel[b, a]
            else:
                take_a = rel[a, b]
            if take_a:
                out.append(a + 1)
                i += 1
            else:
                out.append(b + 1)
                j += 1
        return tuple(out)

    return GreedyPair(lam=merge(True), delta=merge(False))


def is_greedy_pair(c: TwoChainCover, pair: GreedyPair) -> bool:
    """Check the characterization: for a in A, b in B, a before b in delta
    forces a before b in lam."""
    n, k = c.n, c.k
    rank_l = {x: r for r, x in enumerate(pair.lam)}
    rank_d = {x: r for r, x in enumerate(pair.delta)}
    for a in range(1, k + 1):
        for b in range(k + 1, n + 1):
            if rank_d[a] < rank_d[b] and rank_l[a] > rank_l[b]:
                return False
    return True


def gamma(c: TwoChainCover) -> WalkPair:
    """Map a one-factor cover to its walk pair.

    V ascends where lam visits chain A, W ascends where delta does.  Covers
    with more than one factor make the walks meet inside and are rejected.
    """
    pair = greedy_pair(c)
    k = c.k
    sv = np.array([1 if x <= k else -1 for x in pair.lam], dtype=np.int8)
    sw = np.array([1 if x <= k else -1 for x in pair.delta], dtype=np.int8)
    try:
        return WalkPair(sv, sw, check=True)
    except ValueError as e:
        raise ValueError(f"cover does not have one factor: {e}") from None


def gamma_inverse(w: WalkPair) -> TwoChainCover:
    """Rebuild the canonical cover of a walk pair.

    The i-th up-step of V carries a_i in lam and the j-th down-step carries
    b_j; likewise for delta from W.  The cover relation is the intersection
    of the two linear orders.
    """
    n, k = w.n, w.k
    lam_rank = np.empty(n, dtype=np.int64)  # position in the order, by 0-based label
    delta_rank = np.empty(n, dtype=np.int64)
    v_up = np.flatnonzero(w.steps_v == 1)
    v_down = np.flatnonzero(w.steps_v == -1)
    w_up = np.flatnonzero(w.steps_w == 1)
    w_down = np.flatnonzero(w.steps_w == -1)
    lam_rank[np.arange(k)] = v_up
    lam_rank[np.arange(k, n)] = v_down
    delta_rank[np.arange(k)] = w_up
    delta_rank[np.arange(k, n)] = w_down
    before_lam = lam_rank[:, None] < lam_rank[None, :]
    before_delta = delta_rank[:, None] < delta_rank[None, :]
    rel = before_lam & before_delta
    return TwoChainCover(n, k, rel, check=False)


def cover_to_json(c: TwoChainCover) -> str:
    """Cross-chain relations only; within-chain order is implied by labels."""
    return json.dumps(
        {"n": c.n, "k": c.k, "cross": [[x, y] for x, y in c.cross_pairs()]}
    )


def cover_from_json(text: str) -> TwoChainCover:
    obj = json.loads(text)
    n, k = int(obj["n"]), int(obj["k"])
    rel = np.zeros((n, n), dtype=bool)
    for block in (range(k), range(k, n)):
        idx = list(block)
        for ai, a in enumerate(idx):
            for b in idx[ai + 1 :]:
                rel[a, b] = True
    for x, y in obj["cross"]:
        rel[int(x) - 1, int(y) - 1] = True
    return TwoChainCover(n, k, transitive_closure(rel), check=True)
