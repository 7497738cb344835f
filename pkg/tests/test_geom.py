import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from depthkit.exact import brute_force, tukey_2d
from depthkit.datagen import GenSpec, gen
from depthkit.geom import (DegeneracyError, Halfspace, InputError, PointSet,
                           QuerySigns, central_project, colex_rank,
                           combinations_colex, find_halfspace_witness,
                           general_position_check, orientation,
                           simplex_contains)

from conftest import barycentric_inside, random_instance

coords = st.floats(-100, 100, allow_nan=False, allow_infinity=False)


def test_orientation_examples():
    assert orientation([[0, 0], [1, 0], [0, 1]]) == 1
    assert orientation([[0, 0], [1, 0], [2, 0]]) == 0
    assert orientation([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1


def test_orientation_dimension_mismatch():
    with pytest.raises(InputError):
        orientation([[0, 0], [1, 0]])
    with pytest.raises(InputError):
        orientation([[0, 0, 0], [1, 0, 0], [0, 1, 0]])


def test_orientation_exact_on_rounded_collinear():
    # float filter cannot decide these; the exact fallback must
    assert orientation([[0.1, 0.1], [0.2, 0.2], [0.3, 0.3]]) == 0
    eps = np.nextafter(0.3, 1.0)
    assert orientation([[0.1, 0.1], [0.2, 0.2], [0.3, eps]]) == 1
    assert orientation([[0.1, 0.1], [0.2, 0.2], [eps, 0.3]]) == -1


@given(arrays(float, (4, 3), elements=coords), st.integers(0, 3), st.integers(0, 3))
def test_orientation_antisymmetric(pts, i, j):
    if i == j:
        return
    swapped = pts.copy()
    swapped[[i, j]] = swapped[[j, i]]
    assert orientation(swapped) == -orientation(pts)


def test_simplex_contains_examples():
    tri = [[2, 0], [-1, 2], [-1, -2]]
    assert simplex_contains(tri, [0, 0])
    assert not simplex_contains(tri, [5, 5])
    tet = [[3, 0, 0], [0, 3, 0], [0, 0, 3], [-1, -1, -1]]
    assert simplex_contains(tet, [0, 0, 0])


def test_simplex_contains_degenerate():
    with pytest.raises(DegeneracyError):
        simplex_contains([[0, 0], [1, 1], [2, 2]], [0.5, 0.1])


@given(st.integers(2, 5), st.integers(0, 10 ** 6))
def test_simplex_contains_matches_barycentric(d, seed):
    rng = np.random.default_rng(seed)
    V = rng.normal(size=(d + 1, d))
    q = rng.normal(size=d) * 0.5
    assert simplex_contains(V, q) == barycentric_inside(V, q)


def test_colex_rank_is_position():
    for n, r in [(7, 1), (7, 3), (9, 4)]:
        C = combinations_colex(n, r)
        assert len(C) == math.comb(n, r)
        assert np.array_equal(colex_rank(C, n), np.arange(len(C)))
        assert np.all(np.diff(C, axis=1) > 0)


def test_general_position_examples():
    bad = general_position_check([[0, 0], [1, 1], [2, 2], [0, 1]], [5, -3])
    assert not bad and bad.mode == "exhaustive"
    good = general_position_check([[0, 0], [3, 0.2], [2.7, 2.9], [-0.1, 2.2]], [1.1, 1.3])
    assert good
    collinear_q = general_position_check([[0, 0], [2, 2], [3, -1], [-1, 4]], [1, 1])
    assert not collinear_q and -1 in collinear_q.offending


def test_general_position_reports_sampled_mode(rng):
    P = rng.normal(size=(200, 2))
    res = general_position_check(P, np.zeros(2))
    assert res and res.mode == "sampled"


def test_witness_outside_hull():
    P = PointSet([[1, 1], [2, 1], [1.5, 3]])
    w = find_halfspace_witness(P, [0, 0], seed=0)
    assert not w.inside and w.count == 0
    assert w.halfspace.count(P.coords) == 0


def test_witness_on_circle():
    t = np.linspace(0, 2 * np.pi, 41)[:-1] + 0.013
    P = PointSet(np.column_stack([np.cos(t), np.sin(t)]))
    q = np.array([1e-3, 2e-3])
    tau = tukey_2d(P, q).value
    for seed in range(5):
        w = find_halfspace_witness(P, q, seed)
        assert w.inside or w.count >= tau


def test_witness_recount_is_exact(rng):
    for seed in range(10):
        P, q = random_instance(rng, 50, 3, spread=0.3)
        w = find_halfspace_witness(P, q, seed)
        if w.inside:
            continue
        recount = int(np.count_nonzero((P - q) @ w.halfspace.normal > 0))
        assert w.count >= 0 and w.count == recount


def test_witness_figure1_within_polylog():
    inst = gen(GenSpec("figure1", 512, seed=3))
    n = inst.points.n
    tau = tukey_2d(inst.points, inst.q).value
    ok = 0
    for seed in range(20):
        w = find_halfspace_witness(inst.points, inst.q, seed)
        ok += (not w.inside) and w.count <= math.log2(n) ** 2 * tau
    assert ok >= 18


def test_projection_all_below():
    rng = np.random.default_rng(0)
    P = rng.normal(size=(20, 3))
    P[:, 2] = -np.abs(P[:, 2]) - 0.1
    pr = central_project(P, np.zeros(3), [0, 0, 1])
    assert pr.lower.n == 20 and pr.upper.n == 0


def test_projection_rejects_midplane_point():
    P = [[1, 0], [0, 1], [-1, -1]]
    with pytest.raises(DegeneracyError):
        central_project(P, [0, 0], [0, 1])


def test_projection_lands_on_planes(rng):
    P, q = random_instance(rng, 15, 3)
    pr = central_project(P, q, [0.3, -0.2, 1.0])
    L = pr.lifted().coords
    assert np.allclose((L - q) @ pr.normal, pr.side)
    # same rays
    V = P - q
    W = L - q
    cross = V / np.linalg.norm(V, axis=1)[:, None] - W / np.linalg.norm(W, axis=1)[:, None]
    assert np.allclose(cross, 0, atol=1e-12)


def test_projection_preserves_depth_n40():
    rng = np.random.default_rng(4)
    P, q = random_instance(rng, 40, 3)
    pr = central_project(P, q, [0, 0, 1])
    assert brute_force(P, q).value == brute_force(pr.lifted(), q).value


@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_projection_preserves_depth(d, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(d + 1, 15))
    P, q = random_instance(rng, n, d)
    pr = central_project(P, q, rng.normal(size=d))
    assert pr.lower.n + pr.upper.n == n
    assert brute_force(P, q).value == brute_force(pr.lifted(), q).value


def test_projection_along_witness_is_sparse():
    inst = gen(GenSpec("uniform_ball", 200, seed=5))
    q = inst.q + np.array([0.5, 0.2])
    w = find_halfspace_witness(inst.points, q, seed=1)
    assert not w.inside
    pr = central_project(inst.points, q, w.halfspace.normal)
    assert min(pr.lower.n, pr.upper.n) <= w.count


def test_query_signs_detects_degeneracy():
    Q = QuerySigns([[0, 0], [2, 2], [3, -1]], [1, 1])
    with pytest.raises(DegeneracyError):
        Q.check()


def test_halfspace_contains():
    h = Halfspace([0, 1], 0.5, closed=True)
    assert list(h.contains([[0, 0.5], [0, 0.4]])) == [True, False]
    assert not Halfspace([0, 1], 0.5, closed=False).contains([0, 0.5])[0]
    with pytest.raises(InputError):
        Halfspace([0, 0], 0.0)
