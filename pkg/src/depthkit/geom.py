"""Exact predicates, containment tests, projections and halfspace discovery.

Every sign decision goes through a floating-point filter: the float
determinant is trusted only when it clears a generous bound relative to the
product of the row norms. Anything closer to zero is recomputed with
:class:`fractions.Fraction`, so degenerate inputs are detected reliably
rather than guessed.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog


class DegeneracyError(ValueError):
    """Input violates general position; ``indices`` names the offenders.

    Index ``-1`` stands for the query point.
    """

    def __init__(self, message: str, indices: Sequence[int] = ()):
        super().__init__(message)
        self.indices = tuple(int(i) for i in indices)


class RefusalError(RuntimeError):
    """The requested computation exceeds a configured work cap."""


class InputError(ValueError):
    """Malformed input: dimension mismatch, too few points and the like."""


# Product of L1 row norms bounds |det| from above; rounding error of the
# float evaluation stays many orders of magnitude below this fraction of it.
_FILTER = 1e-11


@dataclass(frozen=True)
class PointSet:
    """Ordered, immutable set of ``n`` points in ``R^dim``."""

    coords: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coords, dtype=float)
        if arr.ndim != 2:
            raise InputError(f"expected an (n, d) array, got shape {arr.shape}")
        if arr.shape[1] < 1:
            raise InputError("dimension must be positive")
        if not np.all(np.isfinite(arr)):
            raise InputError("coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.coords[i]

    def subset(self, idx) -> "PointSet":
        idx = np.asarray(idx, dtype=np.intp)
        if idx.size == 0:
            return PointSet(np.empty((0, self.dim)))
        return PointSet(self.coords[idx])

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.coords.shape == other.coords.shape and bool(
            np.array_equal(self.coords, other.coords))

    def __hash__(self):
        return hash((self.coords.shape, self.coords.tobytes()))


def as_pointset(P) -> PointSet:
    return P if isinstance(P, PointSet) else PointSet(np.asarray(P, dtype=float))


def as_point(q, dim: int) -> np.ndarray:
    q = np.asarray(q, dtype=float).reshape(-1)
    if q.shape[0] != dim:
        raise InputError(f"query point has dimension {q.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(q)):
        raise InputError("query point must be finite")
    return q


@dataclass(frozen=True)
class Halfspace:
    """``{x : normal . x >= offset}`` when closed, ``>`` when open."""

    normal: np.ndarray
    offset: float
    closed: bool = True

    def __post_init__(self):
        normal = np.array(self.normal, dtype=float).reshape(-1)
        if not np.any(normal):
            raise InputError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))

    def contains(self, X) -> np.ndarray:
        vals = np.atleast_2d(np.asarray(X, dtype=float)) @ self.normal - self.offset
        return vals >= 0 if self.closed else vals > 0

    def count(self, X) -> int:
        return int(np.count_nonzero(self.contains(X)))

    @classmethod
    def through(cls, q, normal, closed: bool = True) -> "Halfspace":
        normal = np.asarray(normal, dtype=float)
        return cls(normal, float(normal @ np.asarray(q, dtype=float)), closed)


# --------------------------------------------------------------------------
# orientation


def _exact_det(rows: list) -> Fraction:
    m = [list(r) for r in rows]
    k = len(m)
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, k):
            f = m[r][col] / pv
            if f:
                for c in range(col, k):
                    m[r][c] -= f * m[col][c]
    return det


def _exact_orientation(pts: np.ndarray) -> int:
    base = [Fraction(float(x)) for x in pts[0]]
    rows = [[Fraction(float(x)) - b for x, b in zip(p, base)] for p in pts[1:]]
    det = _exact_det(rows)
    return (det > 0) - (det < 0)


def _float_dets(D: np.ndarray) -> np.ndarray:
    d = D.shape[-1]
    if d == 0:
        return np.ones(D.shape[:-2])
    if d == 1:
        return D[..., 0, 0]
    if d == 2:
        return D[..., 0, 0] * D[..., 1, 1] - D[..., 0, 1] * D[..., 1, 0]
    if d == 3:
        a, b, c = D[..., 0, :], D[..., 1, :], D[..., 2, :]
        return (a[..., 0] * (b[..., 1] * c[..., 2] - b[..., 2] * c[..., 1])
                - a[..., 1] * (b[..., 0] * c[..., 2] - b[..., 2] * c[..., 0])
                + a[..., 2] * (b[..., 0] * c[..., 1] - b[..., 1] * c[..., 0]))
    return np.linalg.det(D)


def orientation_batch(pts) -> np.ndarray:
    """Orientation signs for a stack of ``(d+1, d)`` point tuples.

    ``pts`` has shape ``(k, d+1, d)``; returns an ``int8`` array of length k.
    """
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 3 or pts.shape[1] != pts.shape[2] + 1:
        raise InputError(f"expected shape (k, d+1, d), got {pts.shape}")
    if pts.shape[0] == 0:
        return np.zeros(0, dtype=np.int8)
    D = pts[:, 1:, :] - pts[:, :1, :]
    det = _float_dets(D)
    bound = _FILTER * np.prod(np.abs(D).sum(axis=-1), axis=-1)
    signs = np.sign(det).astype(np.int8)
    unsure = ~(np.abs(det) > bound)
    for i in np.flatnonzero(unsure):
        signs[i] = _exact_orientation(pts[i])
    return signs


def orientation(pts) -> int:
    """Sign of ``det [1 p_i]`` over ``d+1`` points in ``R^d``: -1, 0 or +1."""
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2 or pts.shape[0] != pts.shape[1] + 1:
        raise InputError(f"orientation needs d+1 points in R^d, got shape {pts.shape}")
    return int(orientation_batch(pts[None])[0])


def orient2d_many(q, A, B) -> np.ndarray:
    """``orientation(q, a_i, b_i)`` for paired rows of A and B (2D)."""
    A = np.atleast_2d(A)
    B = np.atleast_2d(B)
    k = max(len(A), len(B))
    stack = np.empty((k, 3, 2))
    stack[:, 0] = q
    stack[:, 1] = A
    stack[:, 2] = B
    return orientation_batch(stack)


def side_signs(normal, q, X) -> np.ndarray:
    """Exact signs of ``normal . (x - q)`` for each row x of X."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    normal = np.asarray(normal, dtype=float)
    q = np.asarray(q, dtype=float)
    V = X - q
    vals = V @ normal
    bound = 1e-13 * (np.abs(V) @ np.abs(normal))
    signs = np.sign(vals).astype(np.int8)
    for i in np.flatnonzero(~(np.abs(vals) > bound)):
        s = sum(Fraction(float(a)) * (Fraction(float(x)) - Fraction(float(b)))
                for a, x, b in zip(normal, X[i], q))
        signs[i] = (s > 0) - (s < 0)
    return signs


# --------------------------------------------------------------------------
# containment


def contains_batch(simplices, q) -> np.ndarray:
    """Closed containment of q for a stack of simplices ``(k, d+1, d)``."""
    S = np.asarray(simplices, dtype=float)
    k, m, d = S.shape
    if m != d + 1:
        raise InputError(f"simplices need d+1 vertices, got {m} in R^{d}")
    q = as_point(q, d)
    base = orientation_batch(S)
    if np.any(base == 0):
        raise DegeneracyError("degenerate simplex", [int(np.flatnonzero(base == 0)[0])])
    rep = np.repeat(S[:, None, :, :], m, axis=1)
    ar = np.arange(m)
    rep[:, ar, ar, :] = q
    s = orientation_batch(rep.reshape(k * m, m, d)).reshape(k, m)
    return np.all((s == base[:, None]) | (s == 0), axis=1)


def simplex_contains(vertices, q) -> bool:
    """True iff q lies in the closed convex hull of ``d+1`` vertices."""
    V = np.asarray(vertices, dtype=float)
    if V.ndim != 2 or V.shape[0] != V.shape[1] + 1:
        raise InputError(f"need d+1 vertices in R^d, got shape {V.shape}")
    return bool(contains_batch(V[None], q)[0])


# --------------------------------------------------------------------------
# subset enumeration in colexicographic order


@lru_cache(maxsize=64)
def _binom_table(n: int, r: int) -> np.ndarray:
    t = np.zeros((n + 1, r + 2), dtype=np.int64)
    for c in range(n + 1):
        for i in range(r + 2):
            t[c, i] = math.comb(c, i)
    return t


def colex_rank(subsets: np.ndarray, n: int) -> np.ndarray:
    """Rank of each ascending row among all r-subsets of range(n), colex order."""
    subsets = np.asarray(subsets, dtype=np.int64)
    k, r = subsets.shape
    table = _binom_table(n, r)
    return table[subsets, np.arange(1, r + 1)].sum(axis=1)


def combinations_colex(n: int, r: int, stop: Optional[int] = None) -> np.ndarray:
    """All r-subsets of ``range(stop or n)`` as ascending rows, colex order.

    Row ``i`` has colex rank ``i``; the prefix of subsets of ``range(m)`` is
    the first ``comb(m, r)`` rows, which makes chunking by maximum cheap.
    """
    n = n if stop is None else stop
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if r > n:
        return np.zeros((0, r), dtype=np.int64)
    if r == 1:
        return np.arange(n, dtype=np.int64)[:, None]
    prev = combinations_colex(n - 1, r - 1)
    blocks = []
    for m in range(r - 1, n):
        head = prev[: math.comb(m, r - 1)]
        blocks.append(np.hstack([head, np.full((len(head), 1), m, dtype=np.int64)]))
    return np.vstack(blocks)


def iter_combinations_colex(n: int, r: int, chunk: int = 200_000):
    """Yield ascending r-subsets of range(n) in colex order, in blocks."""
    if r == 0 or r > n:
        if r == 0:
            yield np.zeros((1, 0), dtype=np.int64)
        return
    if r == 1:
        yield np.arange(n, dtype=np.int64)[:, None]
        return
    if math.comb(n, r) <= chunk:
        yield combinations_colex(n, r)
        return
    prev = combinations_colex(n - 1, r - 1)
    pending, size = [], 0
    for m in range(r - 1, n):
        head = prev[: math.comb(m, r - 1)]
        pending.append(np.hstack([head, np.full((len(head), 1), m, dtype=np.int64)]))
        size += len(head)
        if size >= chunk:
            yield np.vstack(pending)
            pending, size = [], 0
    if pending:
        yield np.vstack(pending)


# --------------------------------------------------------------------------
# query-side orientation table


class QuerySigns:
    """``orientation(q, F)`` for every ascending d-subset F of P.

    With these signs, containment of q in a (d+1)-subset X reduces to d+1
    lookups: q is inside iff ``(-1)^j * sign(q, X without x_j)`` agrees for
    every j. Zero entries mean q lies on a hyperplane spanned by d points.
    """

    MAX_ENTRIES = 8_000_000

    def __init__(self, P, q):
        self.P = as_pointset(P)
        self.q = as_point(q, self.P.dim)
        n, d = self.P.n, self.P.dim
        total = math.comb(n, d)
        if total > self.MAX_ENTRIES:
            raise RefusalError(f"query sign table would need {total} entries")
        self.n, self.d = n, d
        self.signs = np.zeros(total, dtype=np.int8)
        X = self.P.coords
        for start, F in _enumerate_blocks(n, d):
            stack = np.empty((len(F), d + 1, d))
            stack[:, 0] = self.q
            stack[:, 1:] = X[F]
            self.signs[start:start + len(F)] = orientation_batch(stack)
        self._alt = np.array([(-1) ** j for j in range(d + 1)], dtype=np.int8)

    def degenerate_facets(self) -> np.ndarray:
        zero = np.flatnonzero(self.signs == 0)
        if zero.size == 0:
            return np.zeros((0, self.d), dtype=np.int64)
        return np.vstack([_unrank_colex(int(r), self.d) for r in zero[:8]])

    def check(self):
        bad = self.degenerate_facets()
        if len(bad):
            raise DegeneracyError(
                "query point lies on a hyperplane spanned by input points",
                list(bad[0]) + [-1])

    def facet_signs(self, subsets: np.ndarray) -> np.ndarray:
        """``(k, d+1)`` array of ``(-1)^j sign(q, X minus x_j)``."""
        subsets = np.asarray(subsets, dtype=np.int64)
        k, m = subsets.shape
        out = np.empty((k, m), dtype=np.int8)
        for j in range(m):
            facet = np.delete(subsets, j, axis=1)
            out[:, j] = self.signs[colex_rank(facet, self.n)] * self._alt[j]
        return out

    def contains(self, subsets) -> np.ndarray:
        s = self.facet_signs(np.sort(np.asarray(subsets, dtype=np.int64), axis=1))
        if np.any(s == 0):
            raise DegeneracyError(
                "query point lies on a hyperplane spanned by input points")
        return np.all(s == s[:, :1], axis=1)

    DENSE_MAX = 4_000_000

    def dense(self) -> np.ndarray:
        """Signs for every ordered d-tuple as a flat n^d array (built once)."""
        if getattr(self, "_dense", None) is None:
            n, d = self.n, self.d
            if n ** d > self.DENSE_MAX:
                raise RefusalError(f"dense sign table would need {n ** d} entries")
            F = combinations_colex(n, d)
            D = np.zeros(n ** d, dtype=np.int8)
            strides = n ** np.arange(d - 1, -1, -1)
            for perm in itertools.permutations(range(d)):
                D[F[:, list(perm)] @ strides] = self.signs * _perm_sign(perm)
            self._dense = D
        return self._dense

    def contains_unsorted(self, tuples: np.ndarray) -> np.ndarray:
        """Containment for rows of distinct indices in any order."""
        D = self.dense()
        tuples = np.asarray(tuples)
        k, m = tuples.shape
        n = self.n
        first = None
        inside = np.ones(k, dtype=bool)
        for j in range(m):
            key = np.zeros(k, dtype=np.int64)
            for c in range(m):
                if c != j:
                    key = key * n + tuples[:, c]
            s = D[key] if j % 2 == 0 else -D[key]
            if first is None:
                first = s
                if np.any(s == 0):
                    raise DegeneracyError(
                        "query point lies on a hyperplane spanned by input points")
            else:
                inside &= s == first
        return inside


def _perm_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def _enumerate_blocks(n, r, chunk=200_000):
    start = 0
    for block in iter_combinations_colex(n, r, chunk):
        yield start, block
        start += len(block)


def _unrank_colex(rank: int, r: int) -> np.ndarray:
    out = []
    for i in range(r, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        out.append(c)
        rank -= math.comb(c, i)
    return np.array(sorted(out), dtype=np.int64)


# --------------------------------------------------------------------------
# general position


@dataclass(frozen=True)
class GeneralPosition:
    ok: bool
    mode: str  # "exhaustive" or "sampled"
    checked: int
    offending: tuple = ()

    def __bool__(self):
        return self.ok


def general_position_check(P, q, exhaustive_limit: int = 200_000,
                           samples: int = 20_000, seed: int = 0) -> GeneralPosition:
    """Check that no d+1 points of ``P + {q}`` are affinely dependent.

    Exhaustive when the number of (d+1)-subsets is at most
    ``exhaustive_limit``; otherwise a seeded random spot check, plus (in 2D)
    an exact test of every line through q.
    """
    P = as_pointset(P)
    q = as_point(q, P.dim)
    X = np.vstack([P.coords, q[None]])
    n1, d = X.shape
    if n1 < d + 1:
        return GeneralPosition(True, "exhaustive", 0)
    total = math.comb(n1, d + 1)
    if total <= exhaustive_limit:
        checked = 0
        for block in iter_combinations_colex(n1, d + 1):
            s = orientation_batch(X[block])
            checked += len(block)
            bad = np.flatnonzero(s == 0)
            if bad.size:
                off = tuple(int(i) if i < P.n else -1 for i in block[bad[0]])
                return GeneralPosition(False, "exhaustive", checked, off)
        return GeneralPosition(True, "exhaustive", checked)

    rng = np.random.default_rng(seed)
    checked = 0
    if d == 2:
        try:
            from .exact import angular_counts
            angular_counts(P, q)
        except DegeneracyError as exc:
            return GeneralPosition(False, "sampled", checked, exc.indices)
        checked += P.n
    left = samples
    while left > 0:
        k = min(left, 50_000)
        idx = _sample_subsets(rng, n1, d + 1, k)
        s = orientation_batch(X[idx])
        checked += k
        left -= k
        bad = np.flatnonzero(s == 0)
        if bad.size:
            off = tuple(int(i) if i < P.n else -1 for i in idx[bad[0]])
            return GeneralPosition(False, "sampled", checked, off)
    return GeneralPosition(True, "sampled", checked)


def _sample_subsets(rng: np.random.Generator, n: int, r: int, k: int) -> np.ndarray:
    """k uniform r-subsets of range(n), rows ascending."""
    out = np.sort(rng.integers(0, n, size=(k, r)), axis=1)
    bad = np.flatnonzero(np.any(np.diff(out, axis=1) == 0, axis=1)) if r > 1 else []
    while len(bad):
        redo = np.sort(rng.integers(0, n, size=(len(bad), r)), axis=1)
        out[bad] = redo
        sub = np.any(np.diff(redo, axis=1) == 0, axis=1)
        bad = bad[sub]
    return out


# --------------------------------------------------------------------------
# separation and halfspace witnesses


def separating_normal(S: np.ndarray, q: np.ndarray) -> Optional[np.ndarray]:
    """Normal ``u`` with ``u . (s - q) >= 1`` for every row s, or None if q in conv(S).

    Minimises the L1 norm of u, which keeps the hyperplane as far from the
    sample as the constraint allows.
    """
    S = np.atleast_2d(S)
    d = q.shape[0]
    if len(S) == 0:
        return None
    V = S - q
    c = np.ones(2 * d)
    A_ub = np.hstack([-V, V])
    b_ub = -np.ones(len(V))
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=(0, None), method="highs")
    if res.status != 0:
        return None
    u = res.x[:d] - res.x[d:]
    if not np.all(side_signs(u, q, S) > 0):
        return None
    return u


@dataclass(frozen=True)
class HalfspaceWitness:
    """Outcome of the random-sample halfspace search.

    ``halfspace`` is open, passes through q and holds ``count`` input points;
    both are None when every trial kept q inside its samples (``inside``).
    """

    halfspace: Optional[Halfspace]
    count: Optional[int]
    level: Optional[int]
    trials: int
    lp_calls: int

    @property
    def inside(self) -> bool:
        return self.halfspace is None


def find_halfspace_witness(P, q, seed=0, trials: Optional[int] = None) -> HalfspaceWitness:
    """Find a halfspace through q holding few points, from nested 2^-i samples.

    Each trial draws samples S_1 ⊇ S_2 ⊇ ... with ``S_i`` a 2^-i sample of
    P and records the first level at which q escapes conv(S_i). Over
    ``ceil(3 log2 n)`` trials the smallest level wins (first trial on ties);
    the hyperplane separating q from that sample, moved to pass through q,
    bounds a sparse open halfspace whose count is returned exactly.
    """
    P = as_pointset(P)
    q = as_point(q, P.dim)
    n = P.n
    X = P.coords
    lp_calls = 1
    u = separating_normal(X, q)
    if u is not None:
        h = Halfspace.through(q, -u, closed=False)
        return HalfspaceWitness(h, _strict_count(h.normal, q, X), 0, 0, lp_calls)
    levels = max(1, math.ceil(math.log2(max(n, 2))))
    trials = trials if trials is not None else max(1, math.ceil(3 * math.log2(max(n, 2))))
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(trials):
        draw = rng.random(n)
        top = levels if best is None else best[0] - 1
        for i in range(1, top + 1):
            sample = X[draw < 2.0 ** -i]
            lp_calls += 1
            u = separating_normal(sample, q) if len(sample) else None
            if u is not None:
                best = (i, u)
                break
    if best is None:
        return HalfspaceWitness(None, None, None, trials, lp_calls)
    level, u = best
    h = Halfspace.through(q, -u, closed=False)
    return HalfspaceWitness(h, _strict_count(h.normal, q, X), level, trials, lp_calls)


def _strict_count(normal, q, X) -> int:
    return int(np.count_nonzero(side_signs(normal, q, X) > 0))


# --------------------------------------------------------------------------
# central projection


@dataclass(frozen=True)
class ProjectionPair:
    """Points centrally projected from q onto ``normal . (x - q) = -1`` and ``= +1``.

    ``lower``/``upper`` hold in-plane coordinates (dimension d-1) relative to
    ``q -/+ normal`` in the orthonormal ``basis``; ``lower_index`` and
    ``upper_index`` map rows back to the source indices.
    """

    lower: PointSet
    upper: PointSet
    lower_index: np.ndarray
    upper_index: np.ndarray
    normal: np.ndarray
    basis: np.ndarray
    q: np.ndarray
    side: np.ndarray = field(repr=False)
    flat: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.side)

    def lifted(self) -> PointSet:
        """Projected points back in R^d, source order."""
        full = self.q + self.side[:, None] * self.normal + self.flat @ self.basis.T
        return PointSet(full)

    def to_upper(self, flat_lower: np.ndarray) -> np.ndarray:
        """Reflect in-plane coordinates through q from the lower to the upper plane."""
        return -np.asarray(flat_lower)


def central_project(P, q, normal) -> ProjectionPair:
    P = as_pointset(P)
    d = P.dim
    q = as_point(q, d)
    normal = np.asarray(normal, dtype=float).reshape(-1)
    if normal.shape[0] != d or not np.any(normal):
        raise InputError("projection normal must be a nonzero d-vector")
    nh = normal / np.linalg.norm(normal)
    V = P.coords - q
    if np.any(np.all(V == 0, axis=1)):
        raise DegeneracyError("query point coincides with an input point",
                              [int(np.flatnonzero(np.all(V == 0, axis=1))[0]), -1])
    side = side_signs(nh, q, P.coords).astype(float)
    if np.any(side == 0):
        bad = np.flatnonzero(side == 0)
        raise DegeneracyError(
            "point on the plane through q orthogonal to the projection normal; "
            "pick another normal", list(bad) + [-1])
    t = np.abs(V @ nh)
    basis = null_space(nh[None, :]) if d > 1 else np.zeros((1, 0))
    flat = (V / t[:, None]) @ basis
    lo = np.flatnonzero(side < 0)
    up = np.flatnonzero(side > 0)
    return ProjectionPair(
        lower=PointSet(flat[lo].reshape(len(lo), d - 1)) if d > 1 else PointSet(np.zeros((len(lo), 1))),
        upper=PointSet(flat[up].reshape(len(up), d - 1)) if d > 1 else PointSet(np.zeros((len(up), 1))),
        lower_index=lo, upper_index=up, normal=nh, basis=basis, q=q,
        side=side, flat=flat)


def generic_normal(P, q, seed: int = 0, attempts: int = 64) -> np.ndarray:
    """A normal with no point of P on the plane through q orthogonal to it."""
    P = as_pointset(P)
    q = as_point(q, P.dim)
    d = P.dim
    cand = np.zeros(d)
    cand[-1] = 1.0
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        if np.all(side_signs(cand, q, P.coords) != 0):
            return cand
        cand = rng.normal(size=d)
    raise DegeneracyError("could not find a generic projection direction")
