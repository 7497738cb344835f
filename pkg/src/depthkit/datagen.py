"""Seeded instance generators: random clouds, tight cluster constructions, figure1."""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import NamedTuple, Optional

import numpy as np

from .geom import InputError, PointSet, general_position_check

FAMILIES = ("uniform_ball", "uniform_sphere_shell", "cluster_upper_tight",
            "cluster_lower_tight", "figure1", "annulus")

MAX_RESAMPLES = 100


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    d: int = 2
    m: Optional[int] = None
    seed: int = 0
    perturb_scale: float = 1e-3

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.d < 2:
            raise InputError("d must be at least 2")
        if self.n < 1:
            raise InputError("n must be positive")
        if not self.perturb_scale > 0:
            raise InputError("perturb_scale must be positive")
        if self.family.startswith("cluster") and (self.m is None or self.m < 1):
            raise InputError(f"{self.family} needs a cluster size m >= 1")
        if self.family == "figure1" and self.d != 2:
            raise InputError("figure1 is planar (d=2)")

    def to_dict(self) -> dict:
        return asdict(self)


class Instance(NamedTuple):
    points: PointSet
    q: np.ndarray
    meta: dict


def regular_simplex(d: int) -> np.ndarray:
    """d+1 unit vectors in R^d summing to zero: vertices around the origin."""
    E = np.eye(d + 1) - 1.0 / (d + 1)
    # orthonormal basis of the sum-zero hyperplane
    U, _, _ = np.linalg.svd(E)
    V = E @ U[:, :d]
    return V / np.linalg.norm(V, axis=1, keepdims=True)


def _ball(rng, k, d):
    x = rng.normal(size=(k, d))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x * rng.random(k)[:, None] ** (1.0 / d)


def _sphere(rng, k, d):
    x = rng.normal(size=(k, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def _clusters(rng, sizes, d, scale):
    V = regular_simplex(d)
    edge = float(np.linalg.norm(V[0] - V[1]))
    parts = [V[i] + _ball(rng, s, d) * scale * edge for i, s in enumerate(sizes)]
    return np.vstack(parts)


def _draw(spec: GenSpec, rng) -> tuple:
    n, d, m = spec.n, spec.d, spec.m
    fam = spec.family
    meta = {}
    if fam == "uniform_ball":
        X = _ball(rng, n, d)
        q = X.mean(axis=0)
    elif fam == "uniform_sphere_shell":
        X = _sphere(rng, n, d) * (1.0 + 0.05 * rng.random(n))[:, None]
        q = np.zeros(d)
    elif fam == "annulus":
        X = _sphere(rng, n, d) * (0.5 + 0.5 * rng.random(n))[:, None]
        q = np.zeros(d)
    elif fam == "cluster_upper_tight":
        # one cluster of m, d clusters of n
        X = _clusters(rng, [m] + [n] * d, d, spec.perturb_scale)
        q = np.zeros(d)
        meta = {"ideal_sigma": m * n ** d, "ideal_tau": min(m, n), "cluster_sizes": [m] + [n] * d}
    elif fam == "cluster_lower_tight":
        X = _clusters(rng, [m] * d + [n], d, spec.perturb_scale)
        q = np.zeros(d)
        meta = {"ideal_sigma": m ** d * n, "ideal_tau": min(m, n), "cluster_sizes": [m] * d + [n]}
    else:
        X, meta = _figure1(rng, n)
        q = np.zeros(2)
    return X, q, meta


def _figure1(rng, n):
    """A heavy point above q, a tiny ring around q, and two far clusters below.

    Every triangle made of the heavy point and one point from each cluster
    contains q, so the heavy point sits in about n^2/4 of them, while the ring
    keeps the halfspace depth near n^(1/3).
    """
    if n < 8:
        raise InputError("figure1 needs n >= 8")
    k = math.ceil(round(n ** (1.0 / 3.0), 9))
    rest = n - 1 - k
    left = rest // 2
    right = rest - left
    heavy = np.array([[0.0, 1.0]])
    ang = (np.arange(k) + 0.5 + 0.25 * (rng.random(k) - 0.5)) * (2 * np.pi / k)
    ring = 0.01 * np.column_stack([np.cos(ang), np.sin(ang)])
    a = np.array([-1.0, -1.0]) + 0.05 * _ball(rng, left, 2)
    b = np.array([1.0, -1.0]) + 0.05 * _ball(rng, right, 2)
    X = np.vstack([heavy, ring, a, b])
    meta = {"heavy_index": 0, "shell_size": k,
            "shell_index": [1, 1 + k], "cluster_sizes": [left, right]}
    return X, meta


def gen(spec: GenSpec) -> Instance:
    """Draw an instance in general position, resampling if necessary."""
    key = [spec.seed, FAMILIES.index(spec.family), spec.n, spec.d]
    for attempt in range(MAX_RESAMPLES):
        rng = np.random.default_rng(key + [attempt])
        X, q, meta = _draw(spec, rng)
        P = PointSet(X)
        gp = general_position_check(P, q, seed=spec.seed)
        if gp:
            meta = dict(meta)
            meta.update({"family": spec.family, "n_points": P.n, "d": spec.d,
                         "seed": spec.seed, "m": spec.m,
                         "perturb_scale": spec.perturb_scale,
                         "resamples": attempt, "gp_mode": gp.mode})
            return Instance(P, q, meta)
    raise RuntimeError(f"could not draw {spec.family} in general position "
                       f"after {MAX_RESAMPLES} attempts")
