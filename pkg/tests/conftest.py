import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def barycentric_inside(V, q):
    """Closed containment by solving for barycentric coordinates in floats."""
    V = np.asarray(V, dtype=float)
    A = np.vstack([V.T, np.ones(len(V))])
    lam = np.linalg.solve(A, np.append(q, 1.0))
    return bool(np.all(lam >= -1e-12))


def naive_depth(P, q):
    P = np.asarray(P, dtype=float)
    d = P.shape[1]
    return sum(barycentric_inside(P[list(c)], q)
               for c in itertools.combinations(range(len(P)), d + 1))


def naive_weights(P, q):
    P = np.asarray(P, dtype=float)
    d = P.shape[1]
    w = np.zeros(len(P), dtype=int)
    for c in itertools.combinations(range(len(P)), d + 1):
        if barycentric_inside(P[list(c)], q):
            w[list(c)] += 1
    return w


def random_instance(rng, n, d, spread=0.4):
    P = rng.normal(size=(n, d))
    q = rng.normal(size=d) * spread
    return P, q


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE = {}


def record_criterion(number, ok, detail=""):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
