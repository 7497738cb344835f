import numpy as np
import pytest
from hypothesis import given, strategies as st

from depthkit.datagen import GenSpec, gen
from depthkit.exact import brute_force
from depthkit.gale import dual_facets, facet_correspondence_check, gale_transform
from depthkit.geom import InputError, RefusalError


def test_one_dimensional_dual():
    # triangle, one extra interior point and q inside: dual lives on a line
    P = np.array([[2.0, 0.1], [-1.0, 2.0], [-1.1, -2.0], [0.3, 0.2]])
    q = np.array([0.05, -0.02])
    g = gale_transform(P, q)
    assert g.dual_points.shape == (4, 1)
    x = g.dual_points[:, 0]
    assert dual_facets(g.dual_points) == 2
    assert np.all(g.positive > 0)
    assert np.isclose(np.sum(g.positive[:, None] * (P - q), axis=0), 0).all()
    assert brute_force(P, q).value == 2
    assert len(np.unique(x)) == 4


def test_null_space_identity():
    inst = gen(GenSpec("uniform_ball", 9, d=3, seed=1))
    g = gale_transform(inst.points, inst.q)
    assert g.vectors.shape == (9, 6)
    assert g.residual() < 1e-9
    assert np.linalg.matrix_rank(g.dual_points - g.dual_points[0]) == 5


def test_d2_n6_facets_match_depth():
    inst = gen(GenSpec("uniform_ball", 6, d=2, seed=8))
    g = gale_transform(inst.points, inst.q)
    assert dual_facets(g.dual_points) == brute_force(inst.points, inst.q).value


def test_refusals():
    tri = [[2, 0], [-1, 2], [-1, -2]]
    with pytest.raises(RefusalError):
        facet_correspondence_check(tri, [0, 0])
    P = np.random.default_rng(0).normal(size=(9, 2))
    with pytest.raises(RefusalError):
        facet_correspondence_check(P, P.mean(axis=0))


def test_outside_rejected():
    P = np.random.default_rng(0).normal(size=(6, 2)) + 5
    with pytest.raises(InputError):
        gale_transform(P, np.zeros(2))


@given(st.sampled_from([(2, 5), (2, 6), (3, 6), (2, 7), (3, 7), (4, 7)]), st.integers(0, 10 ** 6))
def test_bijection(dn, seed):
    d, n = dn
    inst = gen(GenSpec("uniform_ball", n, d=d, seed=seed))
    res = facet_correspondence_check(inst.points, inst.q)
    k_sub, k_fac, equal = res
    assert equal and k_sub == k_fac
