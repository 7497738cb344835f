"""Output-sensitive exact counting by walking the graph of containing simplices.

Nodes are the (d+1)-subsets whose hull contains q. Adding any outside point
p to a node and dropping the right vertex gives another node; the dropped
vertex is opposite the facet hit by the ray from q pointing away from p.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np
from scipy.optimize import linprog

from .geom import (DegeneracyError, QuerySigns, as_point,
                   as_pointset, contains_batch, iter_combinations_colex,
                   separating_normal)


class BfsStatus(str, Enum):
    COMPLETE = "complete"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class BfsOutcome:
    status: BfsStatus
    count: int
    frontier_work: int

    @property
    def complete(self) -> bool:
        return self.status is BfsStatus.COMPLETE


class _Oracle:
    """Containment of q for batches of index tuples, table-backed when small."""

    def __init__(self, P, q):
        self.P = P
        self.q = q
        self.table = None
        if math.comb(P.n, P.dim) <= QuerySigns.MAX_ENTRIES // 4:
            self.table = QuerySigns(P, q)
            self.table.check()

    def contains(self, idx: np.ndarray) -> np.ndarray:
        if len(idx) == 0:
            return np.zeros(0, dtype=bool)
        if self.table is not None:
            return self.table.contains(idx)
        return contains_batch(self.P.coords[idx], self.q)


def _canon(S) -> tuple:
    return tuple(sorted(int(i) for i in S))


def _swap_many(S: tuple, outside: np.ndarray, oracle: _Oracle) -> np.ndarray:
    """For each p in ``outside`` the unique node S + p - v; rows sorted."""
    m = len(S)
    k = len(outside)
    base = np.array(S, dtype=np.int64)
    cand = np.repeat(np.repeat(base[None, None, :], m, axis=1), k, axis=0)
    ar = np.arange(m)
    cand[:, ar, ar] = outside[:, None]
    flat = np.sort(cand.reshape(k * m, m), axis=1)
    hit = oracle.contains(flat).reshape(k, m)
    nhit = hit.sum(axis=1)
    if np.any(nhit != 1):
        bad = int(np.flatnonzero(nhit != 1)[0])
        raise DegeneracyError(
            f"swap of point {int(outside[bad])} into {S} found {int(nhit[bad])} exits; "
            "the ray from q crosses a ridge", list(S) + [int(outside[bad]), -1])
    j = hit.argmax(axis=1)
    return flat.reshape(k, m, m)[np.arange(k), j]


def swap_vertex(S, p: int, P, q, oracle: Optional[_Oracle] = None) -> tuple:
    """Replace the unique vertex of S so that S + p minus it still contains q.

    The ray from q directed away from p leaves conv(P[S]) through exactly one
    facet; the replacement drops the vertex opposite that facet. Crossing that
    facet is the same as q lying in the hull of the facet and p, which is how
    it is tested.
    """
    P = as_pointset(P)
    q = as_point(q, P.dim)
    S = _canon(S)
    if p in S:
        raise ValueError(f"point {p} is already a vertex of {S}")
    oracle = oracle or _Oracle(P, q)
    return tuple(int(i) for i in _swap_many(S, np.array([p]), oracle)[0])


def neighbors(S, P, q, oracle: Optional[_Oracle] = None) -> list:
    P = as_pointset(P)
    q = as_point(q, P.dim)
    S = _canon(S)
    oracle = oracle or _Oracle(P, q)
    outside = np.setdiff1d(np.arange(P.n), np.array(S))
    if outside.size == 0:
        return []
    return [tuple(int(i) for i in r) for r in _swap_many(S, outside, oracle)]


def find_seed_simplex(P, q) -> Optional[tuple]:
    """Some containing simplex, or None when q is outside conv(P).

    Writes q as a convex combination of P by linear programming; a vertex
    solution uses at most d+1 points. The support is checked exactly and, if
    rounding made it too large or too small, a containing subset of it (or,
    as a last resort, of P) is searched directly.
    """
    P = as_pointset(P)
    q = as_point(q, P.dim)
    n, d = P.n, P.dim
    if n < d + 1:
        return None
    oracle = _Oracle(P, q)
    A = np.vstack([P.coords.T, np.ones((1, n))])
    b = np.concatenate([q, [1.0]])
    res = linprog(np.zeros(n), A_eq=A, b_eq=b, bounds=(0, None), method="highs-ds")
    if res.status == 2:
        if separating_normal(P.coords, q) is not None:
            return None
        return _search(range(n), d, oracle)
    if res.status == 0:
        lam = res.x
        support = [int(i) for i in np.argsort(-lam)[: d + 1]]
        if lam[support[-1]] > 0 and np.count_nonzero(lam > 1e-12) <= d + 1:
            S = _canon(support)
            if oracle.contains(np.array([S]))[0]:
                return S
        big = [int(i) for i in np.flatnonzero(lam > 1e-12)]
        pool = sorted(set(big) | set(support))
        if len(pool) >= d + 1 and math.comb(len(pool), d + 1) <= 100_000:
            found = _search(pool, d, oracle)
            if found is not None:
                return found
    return _search(range(n), d, oracle)


def _search(pool: Iterable[int], d: int, oracle: _Oracle) -> Optional[tuple]:
    pool = np.array(sorted(pool), dtype=np.int64)
    for block in iter_combinations_colex(len(pool), d + 1):
        hit = oracle.contains(pool[block])
        if np.any(hit):
            return _canon(pool[block[int(np.argmax(hit))]])
    return None


def count_via_bfs(P, q, node_limit: Optional[int] = None,
                  record_degrees: bool = False):
    """Breadth-first count of containing simplices.

    Outside points are tried in ascending index order, so the node at which a
    limited run stops does not depend on anything but the input. ``work``
    counts swaps; the seed comes from a linear program and is not counted.
    With ``record_degrees`` also returns the distinct-neighbour count of
    every expanded node.
    """
    P = as_pointset(P)
    q = as_point(q, P.dim)
    n, d = P.n, P.dim
    if node_limit is not None and node_limit < 1:
        raise ValueError("node_limit must be positive")
    degrees = {}
    seed = find_seed_simplex(P, q)
    work = 0
    if seed is None:
        out = BfsOutcome(BfsStatus.COMPLETE, 0, work)
        return (out, degrees) if record_degrees else out
    oracle = _Oracle(P, q)
    visited = {seed}
    queue = deque([seed])
    allidx = np.arange(n)
    truncated = node_limit is not None and len(visited) >= node_limit
    while queue and not truncated:
        S = queue.popleft()
        outside = np.setdiff1d(allidx, np.array(S))
        if outside.size == 0:
            degrees[S] = 0
            continue
        nbrs = _swap_many(S, outside, oracle)
        work += len(outside)
        if record_degrees:
            degrees[S] = len({tuple(r) for r in nbrs.tolist()})
        for row in nbrs.tolist():
            T = tuple(row)
            if T not in visited:
                visited.add(T)
                queue.append(T)
                if node_limit is not None and len(visited) >= node_limit:
                    truncated = True
                    break
    status = BfsStatus.TRUNCATED if truncated else BfsStatus.COMPLETE
    out = BfsOutcome(status, len(visited), work)
    return (out, degrees) if record_degrees else out


def degree_check(P, q, nodes) -> bool:
    """True iff every given node has exactly n-d-1 distinct swap neighbours."""
    P = as_pointset(P)
    q = as_point(q, P.dim)
    oracle = _Oracle(P, q)
    want = P.n - P.dim - 1
    for S in nodes:
        if len(set(neighbors(S, P, q, oracle))) != want:
            return False
    return True


def edges_symmetric(P, q, nodes) -> bool:
    """True iff T in neighbors(S) implies S in neighbors(T) for the given nodes."""
    P = as_pointset(P)
    q = as_point(q, P.dim)
    oracle = _Oracle(P, q)
    for S in nodes:
        S = _canon(S)
        for T in neighbors(S, P, q, oracle):
            if S not in neighbors(T, P, q, oracle):
                return False
    return True
