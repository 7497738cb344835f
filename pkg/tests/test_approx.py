import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from depthkit import approx
from depthkit.approx import (MonteCarloParams, approx_3d, approx_3d_split,
                             combined, half_sample_chain,
                             half_sample_estimator, monte_carlo,
                             node_threshold, weight_split_estimate)
from depthkit.datagen import GenSpec, gen
from depthkit.exact import (Method, brute_force, sweep_2d, tukey_2d,
                            weights_2d)
from depthkit.geom import Halfspace, InputError

TRI = np.array([[2.0, 0.0], [-1.0, 2.0], [-1.0, -2.0]])


def test_params_sample_count():
    p = MonteCarloParams(eps=0.2, m=1000, delta=1.0)
    assert p.sample_count(50, 2) == math.ceil(4 * 50 ** 3 * math.log(50) / (0.04 * 1000))
    assert MonteCarloParams(eps=1, m=10 ** 30).sample_count(5, 2) == 1
    with pytest.raises(InputError):
        MonteCarloParams(eps=0, m=1)


def test_mc_zero_and_single():
    far = monte_carlo(TRI, [9, 9], MonteCarloParams(0.5, 1, seed=1))
    assert far.value == 0
    one = monte_carlo(TRI, [0, 0], MonteCarloParams(0.5, 1, seed=1))
    assert one.value == 1 and one.method is Method.MONTE_CARLO and one.eps == 0.5


def test_mc_unbiased_single_samples():
    inst = gen(GenSpec("uniform_ball", 30, seed=4))
    p = brute_force(inst.points, inst.q).value / math.comb(30, 3)
    s = approx._Sampler(inst.points, inst.q)
    k = 10_000
    hits = s.hits(np.random.default_rng(0), k)
    se = math.sqrt(p * (1 - p) / k)
    assert abs(hits / k - p) <= 3 * se


def test_mc_worker_independent():
    inst = gen(GenSpec("uniform_ball", 80, seed=1))
    prm = MonteCarloParams(0.3, 5000, seed=9)
    assert monte_carlo(inst.points, inst.q, prm, workers=1) == \
        monte_carlo(inst.points, inst.q, prm, workers=3)


def test_node_threshold():
    assert node_threshold(10, 2) == 10
    assert node_threshold(10, 3) == 32  # ceil(31.62)
    assert node_threshold(16, 3) == 64


def shallow_query(P, centre, n):
    """A query just inside the midpoint of a hull edge, with small positive depth."""
    hull = ConvexHull(P)
    a, b = P[hull.simplices[0]]
    mid = (a + b) / 2
    for t in (0.02, 0.05, 0.1, 0.2):
        q = mid + t * (centre - mid)
        s = brute_force(P, q).value
        if 0 < s < node_threshold(n, 2):
            return q, s
    raise AssertionError("no shallow query found")


def _shallow(n=60, seed=0):
    inst = gen(GenSpec("uniform_ball", n, seed=seed))
    q, s = shallow_query(inst.points.coords, inst.q, n)
    return inst.points, q, s


def test_combined_low_depth_exact():
    P, q, s = _shallow()
    r = combined(P, q, eps=0.25, seed=0)
    assert r.method is Method.ENUM_BFS and r.value == s and r.eps is None


def test_combined_zero_depth():
    r = combined(TRI + 10, [0, 0], eps=0.25)
    assert r.method is Method.ENUM_BFS and r.value == 0


def test_combined_deep_uses_sampling_and_work_bound():
    inst = gen(GenSpec("uniform_ball", 50, seed=2))
    n, d = 50, 2
    r = combined(inst.points, inst.q, eps=0.3, seed=4)
    assert r.method is Method.MONTE_CARLO
    k = MonteCarloParams(0.3, node_threshold(n, d)).sample_count(n, d)
    assert r.trials == k
    assert r.work <= (n - d - 1) * node_threshold(n, d) + k
    s = sweep_2d(inst.points, inst.q).value
    assert abs(r.value - s) <= 0.3 * s


def test_half_sample_small_set_is_exact():
    inst = gen(GenSpec("uniform_ball", 60, seed=3))
    est, chain = half_sample_chain(inst.points, inst.q, eps=0.25)
    assert chain.depth == 0
    assert est == sweep_2d(inst.points, inst.q).value


def test_half_sample_zero_levels():
    inst = gen(GenSpec("uniform_ball", 600, seed=3))
    r = half_sample_estimator(inst.points, inst.q, eps=0.25, max_levels=0)
    assert r.value == sweep_2d(inst.points, inst.q).value


def test_half_sample_chain_invariants():
    inst = gen(GenSpec("figure1", 1200, seed=1))
    est, chain = half_sample_chain(inst.points, inst.q, eps=0.25, C=4, seed=5)
    for a, b in zip(chain.levels, chain.levels[1:]):
        assert set(b) <= set(a)
    for lvl, heavy in enumerate(chain.heavy):
        assert set(heavy) <= set(chain.levels[lvl + 1])
    assert len(chain.seeds) == chain.depth
    assert all(int(w) & (int(w) - 1) == 0 for w in chain.weights)
    assert inst.meta["heavy_index"] in chain.levels[-1]


def test_half_sample_uniform_within_log_factor():
    inst = gen(GenSpec("uniform_ball", 1000, seed=0))
    s = sweep_2d(inst.points, inst.q).value
    eps = 0.25
    tol = eps * math.log(1000)
    ok = 0
    for seed in range(100):
        est, chain = half_sample_chain(inst.points, inst.q, eps=eps, seed=seed)
        assert all(len(h) == 0 for h in chain.heavy)
        ok += abs(est - s) <= tol * s
    assert ok >= 90


def test_half_sample_deterministic():
    inst = gen(GenSpec("figure1", 800, seed=0))
    a = half_sample_estimator(inst.points, inst.q, 0.25, C=4, seed=11)
    b = half_sample_estimator(inst.points, inst.q, 0.25, C=4, seed=11)
    assert a == b


def test_half_sample_2d_only():
    with pytest.raises(InputError):
        half_sample_estimator(np.zeros((5, 3)), np.zeros(3), 0.2)


def test_approx3d_outside():
    P = np.random.default_rng(0).normal(size=(30, 3)) + 10
    assert approx_3d(P, np.zeros(3), 0.25).value == 0


def _single_sparse(seed):
    rng = np.random.default_rng(seed)
    low = rng.normal(size=(40, 3)) * [2, 2, 0.5]
    low[:, 2] = -np.abs(low[:, 2]) - 0.3
    top = np.array([[0.05, -0.03, 1.0]])
    return np.vstack([top, low]), np.zeros(3)


def test_approx3d_single_sparse_point_exact():
    for seed in range(5):
        P, q = _single_sparse(seed)
        split = approx_3d_split(P, q, 0.25, witness=Halfspace([0, 0, 1], 0.0))
        assert split.sparse_size == 1 and split.sigma_two_plus == 0
        assert split.total == brute_force(P, q).value


def test_approx3d_two_plus_bound():
    rng = np.random.default_rng(3)
    P = rng.normal(size=(60, 3))
    P[:, 2] = -np.abs(P[:, 2]) - 0.2
    P[:5, 2] = np.abs(P[:5, 2]) + 0.2
    split = approx_3d_split(P, np.zeros(3), 0.25, seed=1, witness=Halfspace([0, 0, 1], 0.0))
    assert split.sparse_size == 5
    assert 0 <= split.sigma_two_plus <= 5 ** 2 * 60 ** 2


def test_approx3d_reasonable():
    inst = gen(GenSpec("uniform_ball", 60, d=3, seed=2))
    b = brute_force(inst.points, inst.q).value
    r = approx_3d(inst.points, inst.q, 0.25, seed=3)
    assert r.method is Method.APPROX3D and abs(r.value - b) <= 0.25 * b


def _shallow_query(inst, frac):
    P = inst.points.coords
    far = P[np.argmax(np.linalg.norm(P - inst.q, axis=1))]
    return inst.q + frac * (far - inst.q)


def test_weight_split_precondition_guarantee():
    eps = 0.5
    used = 0
    for seed in range(30):
        inst = gen(GenSpec("uniform_ball", 80, seed=seed))
        q = _shallow_query(inst, 0.9)
        w = weights_2d(inst.points, q)
        for p in range(80):
            est = weight_split_estimate(inst.points, q, p, eps)
            if est is not None:
                used += 1
                assert abs(est - w[p]) <= eps * w[p]
    assert used > 0


def test_weight_split_refuses_shallow():
    tri = np.array([[2.0, 0.0], [-1.0, 2.0], [-1.0, -2.0], [3.0, 3.0]])
    q = np.array([0.1, 0.05])
    assert tukey_2d(tri, q).value == 1
    assert all(weight_split_estimate(tri, q, p, 0.25) is None for p in range(4))


def test_weight_split_refuses_ring():
    t = np.linspace(0, 2 * np.pi, 61)[:-1] + 0.01
    P = np.column_stack([np.cos(t), np.sin(t)])
    assert all(weight_split_estimate(P, [1e-3, 2e-3], p, 0.25) is None for p in range(60))
