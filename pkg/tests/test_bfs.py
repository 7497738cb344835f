import numpy as np
import pytest
from hypothesis import given, strategies as st

from depthkit.bfs import (BfsStatus, count_via_bfs, degree_check,
                          edges_symmetric, find_seed_simplex, neighbors,
                          swap_vertex)
from depthkit.datagen import GenSpec, gen
from depthkit.exact import brute_force, containing_subsets
from depthkit.geom import simplex_contains

from conftest import random_instance


def _inside(P, S, q):
    return simplex_contains(np.asarray(P)[list(S)], q)


def test_swap_in_triangle_plus_point():
    P = np.array([[2.0, 0.0], [-1.0, 2.0], [-1.0, -2.0], [0.5, 3.0]])
    q = np.zeros(2)
    T = swap_vertex((0, 1, 2), 3, P, q)
    assert 3 in T and len(set(T) & {0, 1, 2}) == 2
    assert _inside(P, T, q)


def test_swap_back_restores(rng):
    for _ in range(20):
        P, q = random_instance(rng, 12, 3)
        nodes = containing_subsets(P, q)
        if len(nodes) == 0:
            continue
        S = tuple(nodes[rng.integers(len(nodes))])
        p = int(rng.choice(np.setdiff1d(np.arange(12), S)))
        T = swap_vertex(S, p, P, q)
        assert _inside(P, T, q)
        (v,) = set(S) - set(T)
        assert swap_vertex(T, v, P, q) == S


def test_swap_rejects_vertex():
    with pytest.raises(ValueError):
        swap_vertex((0, 1, 2), 1, [[2, 0], [-1, 2], [-1, -2]], [0, 0])


def test_seed_examples():
    tri = np.array([[2.0, 0.0], [-1.0, 2.0], [-1.0, -2.0]])
    assert find_seed_simplex(tri, [5, 5]) is None
    assert find_seed_simplex(tri, [0, 0]) == (0, 1, 2)
    rng = np.random.default_rng(2)
    P = rng.normal(size=(20, 3))
    S = find_seed_simplex(P, np.zeros(3) + 0.05)
    assert S is not None and len(S) == 4 and _inside(P, S, np.zeros(3) + 0.05)


def test_bfs_zero_depth():
    out = count_via_bfs([[1, 1], [2, 1], [1.5, 3], [2, 2.5]], [0, 0])
    assert out.status is BfsStatus.COMPLETE and out.count == 0


@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_bfs_matches_brute(d, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(d + 1, 15))
    P, q = random_instance(rng, n, d)
    out, degrees = count_via_bfs(P, q, record_degrees=True)
    assert out.complete and out.count == brute_force(P, q).value
    assert all(v == n - d - 1 for v in degrees.values())
    assert out.frontier_work <= (n - d - 1) * (out.count + 1)


def _instance_with_depth(target):
    for seed in range(2000):
        rng = np.random.default_rng(seed)
        P, q = random_instance(rng, 7, 2, spread=0.2)
        if brute_force(P, q).value == target:
            return P, q
    raise AssertionError("no instance found")


def test_bfs_node_limit():
    P, q = _instance_with_depth(12)
    out = count_via_bfs(P, q, node_limit=5)
    assert out.status is BfsStatus.TRUNCATED and out.count == 5
    assert count_via_bfs(P, q, node_limit=5) == out
    assert count_via_bfs(P, q).count == 12


def test_degree_examples():
    tri = np.array([[2.0, 0.0], [-1.0, 2.0], [-1.0, -2.0]])
    assert degree_check(tri, [0, 0], [(0, 1, 2)])
    assert neighbors((0, 1, 2), tri, [0, 0]) == []
    inst = gen(GenSpec("cluster_upper_tight", n=3, d=2, m=2, perturb_scale=1e-4))
    nodes = [tuple(r) for r in containing_subsets(inst.points, inst.q)]
    assert degree_check(inst.points, inst.q, nodes)


def test_edges_symmetric(rng):
    for d in (2, 3):
        P, q = random_instance(rng, 9, d)
        nodes = [tuple(r) for r in containing_subsets(P, q)]
        assert degree_check(P, q, nodes)
        assert edges_symmetric(P, q, nodes)
