"""Gale duals of point sets around q and the simplex/facet correspondence.

The linear dependences of the vectors p_i - q form an (n-d)-dimensional
space. Its basis rows b_i are the dual vectors; after scaling each by a
strictly positive dependence they lie on one affine hyperplane, giving n
dual points in dimension n-d-1. A (d+1)-subset contains q exactly when the
remaining n-d-1 dual points span a facet of the dual hull.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from .exact import brute_force
from .geom import (DegeneracyError, InputError, PointSet, RefusalError,
                   as_point, as_pointset, iter_combinations_colex,
                   orientation_batch)

MAX_DUAL_DIM = 4


@dataclass(frozen=True)
class GaleDual:
    vectors: np.ndarray      # (n, n-d) orthonormal basis of dependences
    dual_points: np.ndarray  # (n, n-d-1)
    positive: np.ndarray     # strictly positive dependence used for scaling
    source: PointSet
    q: np.ndarray

    @property
    def dim(self) -> int:
        return self.dual_points.shape[1]

    def residual(self) -> float:
        """Largest entry of (P - q)^T B; zero up to rounding."""
        V = self.source.coords - self.q
        return float(np.abs(V.T @ self.vectors).max(initial=0.0))


def gale_transform(P, q=None) -> GaleDual:
    P = as_pointset(P)
    d = P.dim
    q = np.zeros(d) if q is None else as_point(q, d)
    n = P.n
    if n < d + 2:
        raise InputError(f"the dual of {n} points in R^{d} has dimension {n - d - 1} < 1")
    V = P.coords - q
    if np.linalg.matrix_rank(V) < d:
        raise DegeneracyError("vectors p - q do not span R^d")
    B = null_space(V.T)
    if B.shape[1] != n - d:
        raise DegeneracyError("dependence space has the wrong dimension")
    # maximise t subject to B y >= t, sum(B y) = 1
    k = B.shape[1]
    c = np.zeros(k + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-B, np.ones((n, 1))])
    A_eq = np.concatenate([B.sum(axis=0), [0.0]])[None]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(n), A_eq=A_eq, b_eq=[1.0],
                  bounds=[(None, None)] * k + [(None, 1.0)], method="highs")
    if res.status != 0 or res.x[-1] <= 1e-12:
        raise InputError("q is not in the interior of conv(P); the dual is undefined")
    y = res.x[:k]
    lam = B @ y
    scaled = B / lam[:, None]
    N = null_space(y[None, :])
    return GaleDual(B, scaled @ N, lam, P, q)


def dual_facets(points: np.ndarray) -> int:
    """Number of D-subsets of points in R^D with every other point strictly on one side."""
    X = np.asarray(points, dtype=float)
    n, D = X.shape
    count = 0
    others_cache = np.arange(n)
    for block in iter_combinations_colex(n, D):
        for F in block:
            rest = np.setdiff1d(others_cache, F)
            if rest.size == 0:
                count += 1
                continue
            stack = np.empty((rest.size, D + 1, D))
            stack[:, :D] = X[F]
            stack[:, D] = X[rest]
            s = orientation_batch(stack)
            if np.any(s == 0):
                raise DegeneracyError("dual points not in general position", list(F))
            if np.all(s == s[0]):
                count += 1
    return count


@dataclass(frozen=True)
class Correspondence:
    k_subsets: int
    k_facets: int

    @property
    def equal(self) -> bool:
        return self.k_subsets == self.k_facets

    def __iter__(self):
        return iter((self.k_subsets, self.k_facets, self.equal))


def facet_correspondence_check(P, q=None, max_dual_dim: int = MAX_DUAL_DIM) -> Correspondence:
    """Count containing simplices directly and dual-hull facets independently."""
    P = as_pointset(P)
    d = P.dim
    q = np.zeros(d) if q is None else as_point(q, d)
    D = P.n - d - 1
    if D < 1:
        raise RefusalError(f"dual dimension is {D}; need n >= d+2 points")
    if D > max_dual_dim:
        raise RefusalError(f"dual dimension {D} exceeds the facet enumeration cap {max_dual_dim}")
    dual = gale_transform(P, q)
    k_sub = int(brute_force(P, q).value)
    k_fac = dual_facets(dual.dual_points)
    return Correspondence(k_sub, k_fac)
