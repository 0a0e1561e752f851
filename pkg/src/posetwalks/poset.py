"""Labeled partial orders on the ground set [n] = {1, ..., n}.

A poset is stored as the dense boolean matrix of its strict order: ``rel[i, j]``
is True when element i+1 lies strictly below element j+1.  The matrix is kept
closed under transitivity, so comparability queries are single lookups.

The incomparability graph has an edge between every pair of elements that are
not ordered either way.  Its vertex degrees are the incomparability windows,
its connected components are the factors of the poset, and its maximum clique
size is the poset's width (Dilworth).
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Poset",
    "IncompGraph",
    "Violation",
    "validate",
    "transitive_closure",
    "transitive_reduction",
    "incomparability_graph",
    "width",
    "max_antichain_size",
    "window",
    "tau",
    "factors",
    "factors_with_elements",
    "height",
    "chain",
    "antichain",
    "poset_to_json",
    "poset_from_json",
]

# Poset objects are only materialized at enumeration / verification scale.
# Large-n statistics live entirely on the walk side.
MAX_ELEMENTS = 10_000

# Dilworth-by-matching is a validation oracle, not a production path.
MAX_MATCHING_N = 64


class Poset:
    """A labeled strict partial order on [n].

    ``rel`` is an n-by-n boolean matrix holding the strict order.  The
    constructor stores its arguments without checking the order axioms; use
    :func:`validate` to obtain a violation report, or build instances through
    the factories in this module, which always produce valid posets.
    Instances are immutable and safe to share across threads.
    """

    __slots__ = ("n", "rel")

    def __init__(self, n: int, rel: np.ndarray):
        if n < 1:
            raise ValueError("poset needs at least one element")
        if n > MAX_ELEMENTS:
            raise ValueError(f"n={n} exceeds the poset materialization cap {MAX_ELEMENTS}")
        rel = np.asarray(rel, dtype=bool)
        if rel.shape != (n, n):
            raise ValueError(f"relation matrix must be {n}x{n}, got {rel.shape}")
        rel = rel.copy()
        rel.setflags(write=False)
        self.n = n
        self.rel = rel

    @classmethod
    def from_pairs(cls, n: int, pairs, close: bool = True) -> "Poset":
        """Build from 1-based (x, y) pairs meaning x strictly below y."""
        rel = np.zeros((n, n), dtype=bool)
        for x, y in pairs:
            if not (1 <= x <= n and 1 <= y <= n):
                raise ValueError(f"pair ({x},{y}) out of range for n={n}")
            rel[x - 1, y - 1] = True
        if close:
            rel = transitive_closure(rel)
        return cls(n, rel)

    def less(self, x: int, y: int) -> bool:
        """True when element x is strictly below element y (1-based)."""
        return bool(self.rel[x - 1, y - 1])

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and np.array_equal(self.rel, other.rel)

    def __hash__(self):
        return hash((self.n, self.rel.tobytes()))

    def __repr__(self):
        return f"Poset(n={self.n}, relations={int(self.rel.sum())})"


@dataclass(frozen=True)
class IncompGraph:
    """Incomparability graph: symmetric adjacency over [n], no self loops."""

    n: int
    adj: np.ndarray

    def degree(self, x: int) -> int:
        return int(self.adj[x - 1].sum())


@dataclass(frozen=True)
class Violation:
    """Names the first broken order axiom and a witness tuple (1-based)."""

    axiom: str  # "irreflexive" | "antisymmetric" | "transitive"
    witness: tuple

    def __str__(self):
        return f"violation of {self.axiom} at {self.witness}"


def validate(p: Poset) -> Violation | None:
    """Check the strict-order axioms; None means the poset is valid.

    Returns the first violated axiom together with a witness pair or triple.
    """
    rel = p.rel
    diag = np.flatnonzero(np.diagonal(rel))
    if diag.size:
        i = int(diag[0])
        return Violation("irreflexive", (i + 1,))
    both = rel & rel.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = np.argwhere(both)[0]
        return Violation("antisymmetric", (int(i) + 1, int(j) + 1))
    # rel o rel must stay inside rel
    closure_gap = (rel.astype(np.uint8) @ rel.astype(np.uint8)).astype(bool) & ~rel
    if closure_gap.any():
        i, k = np.argwhere(closure_gap)[0]
        j = int(np.flatnonzero(rel[i] & rel[:, k])[0])
        return Violation("transitive", (int(i) + 1, j + 1, int(k) + 1))
    return None


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Close a boolean strict-order matrix under transitivity (Warshall)."""
    out = np.array(rel, dtype=bool)
    n = out.shape[0]
    for k in range(n):
        out |= np.outer(out[:, k], out[k, :])
    np.fill_diagonal(out, False)
    return out


def transitive_reduction(rel: np.ndarray) -> np.ndarray:
    """Covering pairs only: drop every relation implied by a two-step path."""
    rel = np.asarray(rel, dtype=bool)
    implied = (rel.astype(np.uint8) @ rel.astype(np.uint8)).astype(bool)
    return rel & ~implied


def incomparability_graph(p: Poset) -> IncompGraph:
    adj = ~(p.rel | p.rel.T)
    np.fill_diagonal(adj, False)
    adj.setflags(write=False)
    return IncompGraph(p.n, adj)


def _has_triangle(adj: np.ndarray) -> bool:
    a = adj.astype(np.uint8)
    return bool(((a @ a) * a).any())


def width(p: Poset) -> int:
    """Size of the largest antichain.

    Width 1 and 2 are answered by edge and triangle tests on the
    incomparability graph.  Larger widths fall back to the Dilworth value
    computed by bipartite matching, which is capped at small n.
    """
    g = incomparability_graph(p)
    if not g.adj.any():
        return 1
    if not _has_triangle(g.adj):
        return 2
    return max_antichain_size(p)


def max_antichain_size(p: Poset) -> int:
    """Exact width by Dilworth: n minus a maximum matching of the strict order.

    Validation oracle only; rejects n beyond a small cap.
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import maximum_bipartite_matching

    if p.n > MAX_MATCHING_N:
        raise ValueError(f"max_antichain_size is capped at n={MAX_MATCHING_N}")
    if not p.rel.any():
        return p.n
    match = maximum_bipartite_matching(csr_matrix(p.rel), perm_type="column")
    return p.n - int((match >= 0).sum())


def _check_element(p: Poset, x: int):
    if not (1 <= x <= p.n):
        raise ValueError(f"element {x} out of range for n={p.n}")


def window(p: Poset, x: int) -> int:
    """Incomparability window of x: its degree in the incomparability graph."""
    _check_element(p, x)
    row = p.rel[x - 1] | p.rel[:, x - 1]
    comparable = int(row.sum()) - int(row[x - 1])
    return p.n - 1 - comparable


def tau(p: Poset, x: int) -> int:
    """Number of elements weakly below x (strictly below, plus x itself)."""
    _check_element(p, x)
    return int(p.rel[:, x - 1].sum()) + 1


def _components(adj: np.ndarray) -> list[list[int]]:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            nxt = np.flatnonzero(adj[v] & ~seen)
            seen[nxt] = True
            stack.extend(int(u) for u in nxt)
        comps.append(sorted(comp))
    return comps


def factors_with_elements(p: Poset) -> list[tuple[tuple[int, ...], Poset]]:
    """Factors of p with their original ground sets (1-based, ascending).

    Each factor is the restriction of p to one connected component of the
    incomparability graph, relabeled order-preservingly to [m].  Factors are
    returned in the block order, earlier factors entirely below later ones.
    """
    g = incomparability_graph(p)
    comps = _components(g.adj)

    def cmp(ca, cb):
        # across factors every cross pair is comparable and points one way
        return -1 if p.rel[ca[0], cb[0]] else 1

    comps.sort(key=functools.cmp_to_key(cmp))
    out = []
    for comp in comps:
        idx = np.array(comp)
        sub = p.rel[np.ix_(idx, idx)]
        out.append((tuple(int(v) + 1 for v in comp), Poset(len(comp), sub)))
    return out


def factors(p: Poset) -> list[Poset]:
    """Restricted posets of the factors, in block order."""
    return [q for _, q in factors_with_elements(p)]


def height(p: Poset) -> int:
    """Length of the longest chain, by longest-path DP over the order DAG."""
    below_counts = p.rel.sum(axis=0)
    order = np.argsort(below_counts, kind="stable")
    h = np.ones(p.n, dtype=np.int64)
    for v in order:
        preds = np.flatnonzero(p.rel[:, v])
        if preds.size:
            h[v] = 1 + h[preds].max()
    return int(h.max())


def chain(n: int) -> Poset:
    rel = np.triu(np.ones((n, n), dtype=bool), k=1)
    return Poset(n, rel)


def antichain(n: int) -> Poset:
    return Poset(n, np.zeros((n, n), dtype=bool))


def poset_to_json(p: Poset) -> str:
    """Serialize as covering pairs; readers re-close transitively."""
    red = transitive_reduction(p.rel)
    pairs = [[int(i) + 1, int(j) + 1] for i, j in np.argwhere(red)]
    return json.dumps({"n": p.n, "rel": pairs})


def poset_from_json(text: str) -> Poset:
    obj = json.loads(text)
    p = Poset.from_pairs(int(obj["n"]), obj["rel"], close=True)
    bad = validate(p)
    if bad is not None:
        raise ValueError(f"serialized relation is not a partial order: {bad}")
    return p
