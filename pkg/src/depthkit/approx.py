"""Approximate simplicial depth: sampling, truncated enumeration, half-sampling, 3D split."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .bfs import count_via_bfs
from .exact import (DepthResult, Method, split_counts, sweep_2d, tukey_2d,
                    tukey_small_d, weighted_sweep_2d, weights_2d)
from .geom import (Halfspace, InputError, QuerySigns, as_point, as_pointset,
                   central_project, combinations_colex, find_halfspace_witness)


# --------------------------------------------------------------------------
# Monte Carlo over uniform (d+1)-subsets


@dataclass(frozen=True)
class MonteCarloParams:
    eps: float
    m: int
    delta: float = 1.0
    seed: int = 0
    shards: int = 8

    def __post_init__(self):
        if not self.eps > 0 or not self.delta > 0:
            raise InputError("eps and delta must be positive")
        if self.m < 1:
            raise InputError("m must be a positive integer")
        if self.shards < 1:
            raise InputError("shards must be positive")

    def sample_count(self, n: int, d: int) -> int:
        k = 4 * self.delta * n ** (d + 1) * math.log(n) / (self.eps ** 2 * self.m)
        return max(1, math.ceil(k))


_CHUNK = 1 << 20


class _Sampler:
    """Hit counter for uniformly random distinct (d+1)-tuples of P."""

    def __init__(self, P, q):
        self.table = QuerySigns(P, q)
        self.table.check()
        self.n, self.d = P.n, P.dim
        self.dense = self.n ** self.d <= QuerySigns.DENSE_MAX
        if self.dense:
            self.table.dense()

    def hits(self, rng: np.random.Generator, k: int, pools=None) -> int:
        """Hits among k draws; ``pools`` lists (index array, count) strata per tuple."""
        total = 0
        left = k
        while left > 0:
            c = min(left, _CHUNK)
            idx = self._draw(rng, c, pools)
            if self.dense:
                got = self.table.contains_unsorted(idx)
            else:
                got = self.table.contains(idx)
            total += int(np.count_nonzero(got))
            left -= c
        return total

    def _draw(self, rng, c, pools):
        m = self.d + 1
        if pools is None:
            pools = [(np.arange(self.n), m)]
        out = np.empty((c, m), dtype=np.int64)
        col = 0
        for pool, r in pools:
            out[:, col:col + r] = _distinct_rows(rng, pool, r, c)
            col += r
        return out


def _distinct_rows(rng, pool, r, c):
    """c rows of r distinct elements of ``pool``, each row uniform."""
    p = len(pool)
    rows = rng.integers(0, p, size=(c, r))
    if r > 1:
        bad = _dup_rows(rows)
        while bad.size:
            rows[bad] = rng.integers(0, p, size=(bad.size, r))
            bad = bad[_dup_rows(rows[bad])]
    return pool[rows]


def _dup_rows(rows):
    s = np.sort(rows, axis=1)
    return np.flatnonzero(np.any(s[:, 1:] == s[:, :-1], axis=1))


def _shard_sizes(k: int, shards: int) -> List[int]:
    base, extra = divmod(k, shards)
    return [base + (1 if i < extra else 0) for i in range(shards)]


def _run_shards(sampler, seed, k, shards, workers, pools=None):
    seqs = np.random.SeedSequence(seed).spawn(shards)
    sizes = _shard_sizes(k, shards)

    def one(i):
        return sampler.hits(np.random.default_rng(seqs[i]), sizes[i], pools) if sizes[i] else 0

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return sum(ex.map(one, range(shards)))
    return sum(one(i) for i in range(shards))


def monte_carlo(P, q, params: MonteCarloParams, workers: int = 1) -> DepthResult:
    """Estimate as C(n, d+1) times the hit rate of k uniform subsets.

    Draws are split into a fixed number of shards with independent child
    seeds, so the estimate depends on the seed and shard count but not on
    how many workers run the shards.
    """
    P = as_pointset(P)
    q = as_point(q, P.dim)
    n, d = P.n, P.dim
    k = params.sample_count(n, d)
    total = math.comb(n, d + 1)
    if total == 0:
        return DepthResult(0, Method.MONTE_CARLO, params.eps, k, 0)
    sampler = _Sampler(P, q)
    hits = _run_shards(sampler, params.seed, k, params.shards, workers)
    return DepthResult(total * hits / k, Method.MONTE_CARLO, params.eps, k, k)


def node_threshold(n: int, d: int) -> int:
    """ceil(n^(d/2)) in integer arithmetic."""
    p = n ** d
    return math.isqrt(p - 1) + 1 if p > 0 else 0


def combined(P, q, eps: float, delta: float = 1.0, seed: int = 0,
             workers: int = 1) -> DepthResult:
    """Exact enumeration up to ceil(n^(d/2)) nodes, else sampling with that bound."""
    P = as_pointset(P)
    q = as_point(q, P.dim)
    n, d = P.n, P.dim
    limit = node_threshold(n, d)
    out = count_via_bfs(P, q, node_limit=limit)
    if out.complete:
        return DepthResult(out.count, Method.ENUM_BFS, None, None, out.frontier_work)
    params = MonteCarloParams(eps=eps, m=limit, delta=delta, seed=seed)
    mc = monte_carlo(P, q, params, workers)
    return DepthResult(mc.value, Method.MONTE_CARLO, eps, mc.trials,
                       out.frontier_work + mc.work)


# --------------------------------------------------------------------------
# half-sampling with heavy points retained


@dataclass
class SampleChain:
    """Nested working sets, original indices; ``heavy[i]`` was kept at level i."""

    levels: List[np.ndarray] = field(default_factory=list)
    heavy: List[np.ndarray] = field(default_factory=list)
    seeds: List[int] = field(default_factory=list)
    thresholds: List[float] = field(default_factory=list)
    weights: Optional[np.ndarray] = None

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


@dataclass(frozen=True)
class HeavyThresholdParams:
    C: float
    eps: float

    def threshold(self, sigma_ref: float, n: int) -> float:
        return self.eps ** 2 * sigma_ref / (self.C * math.log(n))


def half_sample_chain(P, q, eps: float, C: float = 1.0, seed: int = 0,
                      naive: bool = False, max_levels: Optional[int] = None):
    """Run the heavy-aware half-sampling recursion; returns (estimate, chain).

    At each level the working set's exact weights mark points with weight at
    least eps^2 sigma / (C ln n) as heavy. Heavy points stay; every other
    point survives with probability 1/2 and its weight doubles, so a simplex
    with t sampled vertices survives with probability 2^-t and is then
    counted 2^t times. The recursion stops once the working set has at most
    64 ln n points, the non-heavy pool is empty, or the depth is zero. The
    bottom is evaluated exactly as a weighted count.
    """
    P = as_pointset(P)
    if P.dim != 2:
        raise InputError("half-sampling is implemented for d=2")
    q = as_point(q, 2)
    n = P.n
    hp = HeavyThresholdParams(C=C, eps=eps)
    cap = 64 * math.log(max(n, 2))
    W = np.arange(n)
    w = np.ones(n, dtype=object)
    chain = SampleChain()
    level = 0
    while True:
        chain.levels.append(W.copy())
        sub = P.subset(W)
        if len(W) <= cap or (max_levels is not None and level >= max_levels):
            break
        sigma = sweep_2d(sub, q).value
        if sigma == 0:
            break
        if naive:
            heavy = np.zeros(len(W), dtype=bool)
            M = math.inf
        else:
            M = hp.threshold(sigma, n)
            heavy = weights_2d(sub, q).weights >= M
        pool = np.flatnonzero(~heavy)
        if pool.size == 0:
            break
        ss = np.random.SeedSequence([seed, level])
        chain.seeds.append(int(ss.generate_state(1)[0]))
        chain.heavy.append(W[heavy])
        chain.thresholds.append(M)
        keep = heavy.copy()
        keep[pool] = np.random.default_rng(ss).random(pool.size) < 0.5
        for i in W[pool[keep[pool]]]:
            w[i] = w[i] * 2
        W = W[keep]
        level += 1
    final = chain.levels[-1]
    chain.weights = np.array([int(w[i]) for i in final], dtype=object)
    est = weighted_sweep_2d(P.subset(final), q, chain.weights) if len(final) >= 3 else 0
    return est, chain


def half_sample_estimator(P, q, eps: float, C: float = 1.0, seed: int = 0,
                          naive: bool = False,
                          max_levels: Optional[int] = None) -> DepthResult:
    est, chain = half_sample_chain(P, q, eps, C, seed, naive, max_levels)
    return DepthResult(float(est), Method.HALF_SAMPLE, eps, chain.depth,
                       sum(len(L) for L in chain.levels))


def half_sample_depths(P, q, trials: int, seed: int = 0) -> np.ndarray:
    """Exact depth of ``trials`` independent 1/2-samples of P."""
    P = as_pointset(P)
    q = as_point(q, P.dim)
    rng = np.random.default_rng(seed)
    out = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        mask = rng.random(P.n) < 0.5
        out[t] = sweep_2d(P.subset(np.flatnonzero(mask)), q).value
    return out


# --------------------------------------------------------------------------
# 3D split across the sparse halfspace


@dataclass(frozen=True)
class Split3DCounts:
    sigma_one: float
    sigma_two_plus: float
    sparse_size: int = 0
    samples: int = 0

    def __post_init__(self):
        if self.sigma_one < 0 or self.sigma_two_plus < 0:
            raise ValueError("split counts must be nonnegative")

    @property
    def total(self) -> float:
        return self.sigma_one + self.sigma_two_plus


def approx_3d_split(P, q, eps: float, seed: int = 0, K: float = 16.0,
                    delta: float = 1.0, witness: Optional[Halfspace] = None) -> Split3DCounts:
    """Sum of exact one-sparse-vertex counts and a sampled remainder.

    With h a halfspace through q holding few points, a simplex containing q
    has at least one vertex in h. Simplices with exactly one vertex p there
    are counted exactly: they are the triangles of the far side, seen on the
    lower projection plane, around the image of q - (p - q). Simplices with
    two or three vertices in h are sampled per stratum.
    """
    P = as_pointset(P)
    if P.dim != 3:
        raise InputError("approx_3d needs d=3")
    q = as_point(q, 3)
    n = P.n
    if witness is None:
        wit = find_halfspace_witness(P, q, seed)
        if wit.inside:
            tk = tukey_small_d(P, q)
            normal, count = tk.witness.normal, tk.value
        else:
            normal, count = wit.halfspace.normal, wit.count
    else:
        normal = witness.normal
        count = None
    proj = central_project(P, q, normal)
    a = len(proj.upper_index)
    if count is None:
        count = a
    if a == 0 or n < 4:
        return Split3DCounts(0.0, 0.0, a, 0)
    lower = proj.lower
    s1 = 0
    for i in range(a):
        s1 += sweep_2d(lower, -proj.upper.coords[i]).value
    b = len(proj.lower_index)
    m = max(1, math.ceil(count ** 3 * n / K))
    sampler = None
    strata = []
    if a >= 2 and b >= 2:
        strata.append(((proj.upper_index, 2), (proj.lower_index, 2),
                       math.comb(a, 2) * math.comb(b, 2)))
    if a >= 3 and b >= 1:
        strata.append(((proj.upper_index, 3), (proj.lower_index, 1),
                       math.comb(a, 3) * b))
    s2 = 0.0
    samples = 0
    for j, (up, lo, N) in enumerate(strata):
        k = max(1, math.ceil(4 * delta * N * math.log(n) / (eps ** 2 * m)))
        if sampler is None:
            sampler = _Sampler(P, q)
        if k >= N:
            s2 += _stratum_exact(sampler, up, lo)
            samples += N
        else:
            hits = _run_shards(sampler, [seed, j], k, 8, 1, pools=[up, lo])
            s2 += N * hits / k
            samples += k
    return Split3DCounts(float(s1), float(s2), a, samples)


def _stratum_exact(sampler, up, lo) -> int:
    (pu, ru), (pl, rl) = up, lo
    A = np.asarray(pu)[combinations_colex(len(pu), ru)]
    B = np.asarray(pl)[combinations_colex(len(pl), rl)]
    total = 0
    for start in range(0, len(A), max(1, _CHUNK // max(len(B), 1))):
        blk = A[start:start + max(1, _CHUNK // max(len(B), 1))]
        rows = np.hstack([np.repeat(blk, len(B), axis=0), np.tile(B, (len(blk), 1))])
        total += int(np.count_nonzero(sampler.table.contains(rows)))
    return total


def approx_3d(P, q, eps: float, seed: int = 0, K: float = 16.0,
              witness: Optional[Halfspace] = None) -> DepthResult:
    split = approx_3d_split(P, q, eps, seed, K, witness=witness)
    return DepthResult(split.total, Method.APPROX3D, eps, split.samples,
                       split.samples + split.sparse_size * as_pointset(P).n)


# --------------------------------------------------------------------------
# weight from the split product


def weight_split_estimate(P, q, p_index: int, eps: float,
                          witness: Optional[Halfspace] = None) -> Optional[float]:
    """n1 * n2 for the line through p and q, or None when that is not trusted.

    ``witness`` is a closed halfplane through q holding few points (by
    default the exact halfspace-depth witness). The product is returned only
    when p lies in it and both sides of the line hold at least
    2 * count / eps points, count being the witness's point count; every
    triangle through p and one point from each side misses q only if one of
    those two points lies in the witness.
    """
    P = as_pointset(P)
    q = as_point(q, 2)
    if witness is None:
        witness = tukey_2d(P, q).witness
    count = witness.count(P.coords)
    if not witness.contains(P.coords[p_index])[0]:
        return None
    sc = split_counts(P, q, p_index)
    if sc.dissection >= 2 * count / eps:
        return float(sc.product)
    return None
