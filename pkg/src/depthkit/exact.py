"""Exact simplicial and Tukey depth."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import cmp_to_key
from typing import Optional, Sequence

import numpy as np

from .geom import (DegeneracyError, Halfspace, InputError, QuerySigns,
                   RefusalError, as_point, as_pointset, central_project,
                   combinations_colex, generic_normal, iter_combinations_colex,
                   orient2d_many, orientation_batch, side_signs)

DEFAULT_MAX_WORK = 10 ** 8


class Method(str, Enum):
    BRUTE = "brute"
    SWEEP2D = "sweep2d"
    PROJECTED = "projected"
    ENUM_BFS = "enum_bfs"
    MONTE_CARLO = "monte_carlo"
    COMBINED = "combined"
    HALF_SAMPLE = "half_sample"
    APPROX3D = "approx3d"


EXACT_METHODS = {Method.BRUTE, Method.SWEEP2D, Method.PROJECTED, Method.ENUM_BFS}


@dataclass(frozen=True)
class DepthResult:
    value: float
    method: Method
    eps: Optional[float] = None
    trials: Optional[int] = None
    work: int = 0

    @property
    def exact(self) -> bool:
        return self.method in EXACT_METHODS


@dataclass(frozen=True)
class WeightVector:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.int64)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def total(self) -> int:
        return int(self.weights.sum())

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return int(self.weights[i])


@dataclass(frozen=True)
class TukeyResult:
    value: int
    witness: Halfspace


@dataclass(frozen=True)
class SplitCounts:
    n1: int
    n2: int

    @property
    def dissection(self) -> int:
        return min(self.n1, self.n2)

    @property
    def product(self) -> int:
        return self.n1 * self.n2


def max_work(cap: Optional[float] = None) -> float:
    if cap is not None:
        return cap
    env = os.environ.get("DEPTHKIT_MAX_WORK")
    return float(env) if env else DEFAULT_MAX_WORK


# --------------------------------------------------------------------------
# brute force


def brute_force(P, q, cap: Optional[float] = None, workers: int = 1) -> DepthResult:
    """Count (d+1)-subsets of P whose hull contains q, one by one."""
    P = as_pointset(P)
    q = as_point(q, P.dim)
    n, d = P.n, P.dim
    total = math.comb(n, d + 1)
    if total > max_work(cap):
        raise RefusalError(f"brute force needs {total} containment tests; cap is {max_work(cap):.3g}")
    if total == 0:
        return DepthResult(0, Method.BRUTE, work=0)
    table = QuerySigns(P, q)
    table.check()
    blocks = list(iter_combinations_colex(n, d + 1, chunk=100_000))
    dense = n ** d <= QuerySigns.DENSE_MAX
    if dense:
        table.dense()

    def hits(block):
        got = table.contains_unsorted(block) if dense else table.contains(block)
        return int(np.count_nonzero(got))

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            count = sum(ex.map(hits, blocks))
    else:
        count = sum(hits(b) for b in blocks)
    return DepthResult(count, Method.BRUTE, work=total)


def containing_subsets(P, q) -> np.ndarray:
    """All ascending (d+1)-subsets containing q, colex order (small n only)."""
    P = as_pointset(P)
    q = as_point(q, P.dim)
    table = QuerySigns(P, q)
    table.check()
    out = [b[table.contains(b)] for b in iter_combinations_colex(P.n, P.dim + 1)]
    if not out:
        return np.zeros((0, P.dim + 1), dtype=np.int64)
    return np.vstack(out)


# --------------------------------------------------------------------------
# angular machinery around q (2D)


@dataclass(frozen=True)
class AngularCounts:
    """Angular order of P around q and, per point, the open half-plane count.

    ``counts[i]`` is the number of points strictly counterclockwise of p_i
    within a half-turn, i.e. with angle in ``(theta_i, theta_i + pi)``.
    """

    order: np.ndarray
    counts: np.ndarray


def _half_class(v: np.ndarray) -> np.ndarray:
    return np.where((v[:, 1] > 0) | ((v[:, 1] == 0) & (v[:, 0] > 0)), 0, 1)


def _exact_angle_sort(X, q, order):
    V = X - q
    cls = _half_class(V)

    def cmp(i, j):
        if cls[i] != cls[j]:
            return -1 if cls[i] < cls[j] else 1
        s = int(orient2d_many(q, X[i], X[j])[0])
        if s == 0:
            raise DegeneracyError("two points on the same ray from q", [i, j, -1])
        return -s

    return np.array(sorted(order.tolist(), key=cmp_to_key(cmp)), dtype=np.int64)


def angular_counts(P, q) -> AngularCounts:
    P = as_pointset(P)
    if P.dim != 2:
        raise InputError("angular counts need 2D input")
    q = as_point(q, 2)
    X = P.coords
    n = P.n
    V = X - q
    same = np.flatnonzero(np.all(V == 0, axis=1))
    if same.size:
        raise DegeneracyError("query point coincides with an input point", [int(same[0]), -1])
    if n == 0:
        return AngularCounts(np.zeros(0, np.int64), np.zeros(0, np.int64))
    theta = np.mod(np.arctan2(V[:, 1], V[:, 0]), 2 * np.pi)
    order = np.argsort(theta, kind="stable")
    if n > 1:
        # consecutive pairs must be strictly ordered under the exact key
        cls = _half_class(V)
        a, b = order[:-1], order[1:]
        s = orient2d_many(q, X[a], X[b])
        ok = (cls[a] < cls[b]) | ((cls[a] == cls[b]) & (s > 0))
        if not np.all(ok):
            zero = np.flatnonzero((cls[a] == cls[b]) & (s == 0))
            if zero.size:
                k = zero[0]
                raise DegeneracyError("two points on the same ray from q",
                                      [int(a[k]), int(b[k]), -1])
            order = _exact_angle_sort(X, q, order)
            theta = theta[order]
            theta = np.maximum.accumulate(theta)
        else:
            theta = theta[order]
    else:
        theta = theta[order]

    ang2 = np.concatenate([theta, theta + 2 * np.pi])
    idx2 = np.concatenate([order, order])
    pos = np.arange(n)
    c = np.searchsorted(ang2, theta + np.pi, side="left") - (pos + 1)
    c = np.clip(c, 0, n - 1)

    # exact verification of each window boundary
    last = pos + c
    nxt = last + 1
    check_last = c > 0
    check_next = c < n - 1
    s_last = np.zeros(n, dtype=np.int8)
    s_next = np.zeros(n, dtype=np.int8)
    if np.any(check_last):
        i = np.flatnonzero(check_last)
        s_last[i] = orient2d_many(q, X[order[i]], X[idx2[last[i]]])
    if np.any(check_next):
        i = np.flatnonzero(check_next)
        s_next[i] = orient2d_many(q, X[order[i]], X[idx2[nxt[i]]])
    bad = (check_last & (s_last <= 0)) | (check_next & (s_next >= 0))
    for i in np.flatnonzero(bad):
        p = order[i]
        others = np.delete(np.arange(n), p)
        s = orient2d_many(q, np.repeat(X[p][None], len(others), axis=0), X[others])
        if np.any(s == 0):
            j = others[np.flatnonzero(s == 0)[0]]
            raise DegeneracyError("query point collinear with two input points",
                                  [int(p), int(j), -1])
        c[i] = int(np.count_nonzero(s > 0))
    counts = np.empty(n, dtype=np.int64)
    counts[order] = c
    return AngularCounts(order.astype(np.int64), counts)


def _require_2d(P):
    if P.dim != 2:
        raise InputError(f"this method needs d=2, got d={P.dim}")


def sweep_2d(P, q) -> DepthResult:
    """Simplicial depth in the plane by complementary counting after one sort."""
    P = as_pointset(P)
    _require_2d(P)
    q = as_point(q, 2)
    n = P.n
    if n < 3:
        return DepthResult(0, Method.SWEEP2D, work=n)
    c = angular_counts(P, q).counts
    miss = sum(int(x) * (int(x) - 1) // 2 for x in c)
    return DepthResult(math.comb(n, 3) - miss, Method.SWEEP2D, work=n)


def weights_2d(P, q) -> WeightVector:
    """Per-point count of containing triangles having that point as a vertex.

    A triangle missing q has a unique first vertex in counterclockwise order
    whose half-turn window holds the other two. For p the misses split into
    those where p is first and those where p sits in another vertex's window.
    """
    P = as_pointset(P)
    _require_2d(P)
    q = as_point(q, 2)
    n = P.n
    if n < 3:
        return WeightVector(np.zeros(n, dtype=np.int64))
    ac = angular_counts(P, q)
    c_sorted = ac.counts[ac.order]
    # points whose window holds p are the n-1-c_p points preceding p
    pre = n - 1 - c_sorted
    c2 = np.concatenate([c_sorted, c_sorted])
    cum = np.concatenate([[0], np.cumsum(c2)])
    pos = np.arange(n) + n
    window_sum = cum[pos] - cum[pos - pre]
    w_sorted = (math.comb(n - 1, 2) - c_sorted * (c_sorted - 1) // 2
                - (window_sum - pre))
    w = np.empty(n, dtype=np.int64)
    w[ac.order] = w_sorted
    return WeightVector(w)


def weighted_sweep_2d(P, q, w) -> int:
    """Sum over containing triangles of the product of vertex weights.

    Integer weights give an exact integer; this is the depth of the multiset
    in which p_i appears w_i times.
    """
    P = as_pointset(P)
    _require_2d(P)
    q = as_point(q, 2)
    w = [int(x) for x in np.asarray(w)]
    n = P.n
    if n < 3:
        return 0
    ac = angular_counts(P, q)
    ws = [w[i] for i in ac.order]
    c_sorted = ac.counts[ac.order]
    s1 = sum(ws)
    s2 = sum(x * x for x in ws)
    s3 = sum(x * x * x for x in ws)
    e3 = (s1 ** 3 - 3 * s1 * s2 + 2 * s3) // 6
    w2 = ws + ws
    c1 = [0]
    c2 = [0]
    for x in w2:
        c1.append(c1[-1] + x)
        c2.append(c2[-1] + x * x)
    miss = 0
    for i in range(n):
        k = int(c_sorted[i])
        a1 = c1[i + 1 + k] - c1[i + 1]
        a2 = c2[i + 1 + k] - c2[i + 1]
        miss += ws[i] * ((a1 * a1 - a2) // 2)
    return e3 - miss


def split_counts(P, q, p_index: int) -> SplitCounts:
    """Points of P minus p strictly left (n1) and right (n2) of the line q -> p."""
    P = as_pointset(P)
    _require_2d(P)
    q = as_point(q, 2)
    X = P.coords
    others = np.delete(np.arange(P.n), p_index)
    s = orient2d_many(q, np.repeat(X[p_index][None], len(others), axis=0), X[others])
    if np.any(s == 0):
        j = others[np.flatnonzero(s == 0)[0]]
        raise DegeneracyError("point on the line through p and q", [int(p_index), int(j), -1])
    return SplitCounts(int(np.count_nonzero(s > 0)), int(np.count_nonzero(s < 0)))


# --------------------------------------------------------------------------
# Tukey depth


def _tilted_witness(q, X, normal, on_plane: np.ndarray, target: int) -> Halfspace:
    """Tilt ``normal`` so the points of ``on_plane`` fall strictly outside.

    Returns a closed halfspace through q holding exactly ``target`` points.
    """
    V = X[on_plane] - q
    w = np.linalg.lstsq(V, np.ones(len(on_plane)), rcond=None)[0] if len(on_plane) else np.zeros_like(normal)
    scale = np.linalg.norm(normal) / max(np.linalg.norm(w), 1e-300)
    for k in range(3, 40, 3):
        cand = normal - (10.0 ** -k) * scale * w
        s = side_signs(cand, q, X)
        if np.all(s != 0) and int(np.count_nonzero(s > 0)) == target:
            return Halfspace.through(q, cand, closed=True)
    raise DegeneracyError("could not certify a Tukey witness; input is near degenerate")


def tukey_2d(P, q) -> TukeyResult:
    """Halfspace depth in the plane by rotating a line about q."""
    P = as_pointset(P)
    _require_2d(P)
    q = as_point(q, 2)
    n = P.n
    X = P.coords
    if n == 0:
        return TukeyResult(0, Halfspace.through(q, [1.0, 0.0]))
    c = angular_counts(P, q).counts
    left = c
    right = n - 1 - c
    vals = np.minimum(left, right)
    i = int(np.argmin(vals))
    value = int(vals[i])
    v = X[i] - q
    rot = np.array([-v[1], v[0]])
    normal = rot if left[i] <= right[i] else -rot
    return TukeyResult(value, _tilted_witness(q, X, normal, np.array([i]), value))


def tukey_small_d(P, q, cap: Optional[float] = None) -> TukeyResult:
    """Halfspace depth for d <= 4 over hyperplanes through q and d-1 points.

    The count over generic directions is constant on the cells of the
    arrangement of great spheres; every cell has a vertex normal to d-1
    points, and there the open side count is a lower bound attained nearby.
    """
    P = as_pointset(P)
    d = P.dim
    if d > 4:
        raise InputError("tukey_small_d supports d <= 4")
    q = as_point(q, d)
    n = P.n
    X = P.coords
    if d == 1:
        a = int(np.count_nonzero(X[:, 0] > q[0]))
        b = int(np.count_nonzero(X[:, 0] < q[0]))
        if a + b != n:
            raise DegeneracyError("query point coincides with an input point")
        return TukeyResult(min(a, b), Halfspace.through(q, [1.0 if a <= b else -1.0]))
    work = math.comb(n, d - 1) * n
    if work > max_work(cap):
        raise RefusalError(f"tukey_small_d needs {work} side tests")
    if n < d - 1:
        return TukeyResult(0, Halfspace.through(q, np.eye(d)[0]))
    best = None
    for S in combinations_colex(n, d - 1):
        V = X[S] - q
        if d == 2:
            normal = np.array([-V[0, 1], V[0, 0]])
        elif d == 3:
            normal = np.cross(V[0], V[1])
        else:
            normal = _null_vector(V)
        s = side_signs(normal, q, X)
        mask = np.ones(n, dtype=bool)
        mask[S] = False
        s[S] = 0  # spanning points lie on the plane up to rounding of the normal
        if np.any(s[mask] == 0):
            j = int(np.flatnonzero(mask & (s == 0))[0])
            raise DegeneracyError("query point on a hyperplane spanned by input points",
                                  list(S) + [j, -1])
        a = int(np.count_nonzero(s > 0))
        b = int(np.count_nonzero(s < 0))
        for val, nv in ((a, normal), (b, -normal)):
            if best is None or val < best[0]:
                best = (val, nv, S)
    if best is None:
        return TukeyResult(0, Halfspace.through(q, np.eye(d)[0]))
    val, normal, S = best
    return TukeyResult(val, _tilted_witness(q, X, normal, S, val))


def _null_vector(V: np.ndarray) -> np.ndarray:
    # generalized cross product via cofactors
    d = V.shape[1]
    out = np.empty(d)
    for i in range(d):
        minor = np.delete(V, i, axis=1)
        out[i] = (-1) ** i * np.linalg.det(minor)
    if not np.any(out):
        raise DegeneracyError("points spanning the hyperplane are dependent")
    return out


def tukey_depth(P, q, cap: Optional[float] = None) -> TukeyResult:
    P = as_pointset(P)
    return tukey_2d(P, q) if P.dim == 2 else tukey_small_d(P, q, cap)


# --------------------------------------------------------------------------
# projection algorithm


def _bary_match(flat: np.ndarray, Z: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Per (query, point): do barycentric signs w.r.t. Z match ``targets``?

    ``flat`` is (m, k); ``Z`` is (t, k+1, k) of query vertices; ``targets``
    is (t, k+1) of +-1. Zero coordinates count as a match (closed region).
    Returns a (t, m) boolean array.
    """
    t, v, k = Z.shape
    m = flat.shape[0]
    if m == 0 or t == 0:
        return np.zeros((t, m), dtype=bool)
    base = orientation_batch(Z)
    if np.any(base == 0):
        raise DegeneracyError("query point on a hyperplane spanned by input points")
    stack = np.broadcast_to(Z[:, None, None, :, :], (t, m, v, v, k)).copy()
    ar = np.arange(v)
    stack[:, :, ar, ar, :] = flat[None, :, None, :]
    s = orientation_batch(stack.reshape(-1, v, k)).reshape(t, m, v)
    s = s * base[:, None, None]
    return np.all((s == 0) | (s == targets[:, None, :]), axis=2)


def simplex_range_count(flat_points, query_simplex, signs: Optional[Sequence[int]] = None) -> int:
    """Points inside a closed simplex of the flat (dimension d-1, d vertices).

    With ``signs``, counts points whose barycentric coordinates have exactly
    those signs (ones are the ordinary simplex); this covers the region a
    projected cone cuts out when some rays run away from the plane.
    """
    Z = np.asarray(query_simplex, dtype=float)
    if Z.ndim != 2 or Z.shape[0] != Z.shape[1] + 1:
        raise InputError(f"query simplex needs k+1 vertices in R^k, got {Z.shape}")
    flat = np.asarray(flat_points.coords if hasattr(flat_points, "coords") else flat_points,
                      dtype=float).reshape(-1, Z.shape[1])
    tg = np.ones(Z.shape[0], dtype=np.int8) if signs is None else np.asarray(signs, dtype=np.int8)
    return int(np.count_nonzero(_bary_match(flat, Z[None], tg[None])[0]))


def exact_projected(P, q, cap: Optional[float] = None, normal=None,
                    seed: int = 0) -> DepthResult:
    """Exact depth by counting, for each d-tuple, the points in its reflected cone.

    Each point sits on one of two planes after central projection from q. For
    a tuple T the points x completing a containing simplex are those on rays
    inside the cone spanned by q - p, p in T. On each plane that cone is a
    region cut out by barycentric sign conditions, counted directly. Every
    containing simplex is seen once per facet.
    """
    P = as_pointset(P)
    d = P.dim
    if d < 2:
        raise InputError("exact_projected needs d >= 2")
    q = as_point(q, d)
    n = P.n
    work = math.comb(n, d) * n
    if work > max_work(cap):
        raise RefusalError(f"exact_projected needs {work} range tests")
    if n < d + 1:
        return DepthResult(0, Method.PROJECTED, work=0)
    nv = generic_normal(P, q, seed) if normal is None else np.asarray(normal, float)
    proj = central_project(P, q, nv)
    side = proj.side.astype(np.int8)
    Zall = side[:, None] * proj.flat  # reflected in-plane coordinates
    up = proj.flat[proj.upper_index]
    lo = -proj.flat[proj.lower_index]
    total = 0
    for T in iter_combinations_colex(n, d, chunk=4000):
        Z = Zall[T]
        sT = side[T]
        hu = _bary_match(up, Z, -sT)
        hl = _bary_match(lo, Z, sT)
        total += int(hu.sum()) + int(hl.sum())
    if total % (d + 1):
        raise AssertionError(f"cone counts sum to {total}, not a multiple of {d + 1}")
    return DepthResult(total // (d + 1), Method.PROJECTED, work=work)


# --------------------------------------------------------------------------
# parity


def parity_predicted(n: int, d: int) -> str:
    """The parity rule as stated: even when n-d-1 is odd or C(n,d) is even."""
    if n < d + 1:
        raise InputError("parity needs n >= d+1")
    if (n - d - 1) % 2 == 1 or math.comb(n, d) % 2 == 0:
        return "even"
    return "odd"


def parity_forced(n: int, d: int) -> Optional[str]:
    """Parity implied by regularity alone: a k-regular graph with odd k has even order.

    Returns None when regularity does not constrain the depth.
    """
    if n < d + 1:
        raise InputError("parity needs n >= d+1")
    return "even" if (n - d - 1) % 2 == 1 else None


def parity_of(value: int) -> str:
    return "even" if int(value) % 2 == 0 else "odd"
