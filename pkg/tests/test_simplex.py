import numpy as np
import pytest

from rankregret.simplex import simplex_max


def test_basic_maximization():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6
    res = simplex_max([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.ok
    assert res.objective == pytest.approx(2.8)
    assert np.allclose(res.x, [1.6, 1.2])

def test_equality_constraint():
    # max x s.t. x + y = 1
    res = simplex_max([1, 0], A_eq=[[1, 1]], b_eq=[1])
    assert res.ok
    assert res.objective == pytest.approx(1.0)

def test_infeasible():
    # x + y = 2 with x + y <= 1 is infeasible
    res = simplex_max([1, 1], A_ub=[[1, 1]], b_ub=[1], A_eq=[[1, 1]], b_eq=[2])
    assert res.status == "infeasible"

def test_unbounded():
    res = simplex_max([1, 0], A_ub=[[-1, 0]], b_ub=[0])
    assert res.status == "unbounded"

def test_degenerate_zero_rhs():
    # heavily degenerate: all inequality rows have b = 0, like the
    # separation problems this solver exists for
    res = simplex_max([0, 0, 1], A_ub=[[-1, 0, 1], [0, -1, 1], [1, 1, 0]],
                      b_ub=[0, 0, 1])
    assert res.ok
    # x3 <= min(x1, x2) and x1 + x2 <= 1 -> best is x1 = x2 = x3 = 1/2
    assert res.objective == pytest.approx(0.5)

def test_redundant_equalities():
    res = simplex_max([1, 1], A_eq=[[1, 1], [2, 2]], b_eq=[1, 2])
    assert res.ok
    assert res.objective == pytest.approx(1.0)

def test_negative_rhs_rejected():
    with pytest.raises(ValueError):
        simplex_max([1], A_ub=[[1]], b_ub=[-1])

def test_matches_vertex_enumeration():
    # random bounded LPs, checked against brute-force vertex enumeration
    rng = np.random.default_rng(4)
    for _ in range(25):
        nvar = int(rng.integers(2, 5))
        nrow = int(rng.integers(2, 6))
        A = rng.random((nrow, nvar))
        b = rng.random(nrow) + 0.5
        c = rng.random(nvar)
        # box bound keeps it bounded
        A_full = np.vstack([A, np.eye(nvar)])
        b_full = np.concatenate([b, np.full(nvar, 2.0)])
        res = simplex_max(c, A_ub=A_full, b_ub=b_full)
        assert res.ok
        best = _brute_force_vertex_max(c, A_full, b_full)
        assert res.objective == pytest.approx(best, abs=1e-7)


def _brute_force_vertex_max(c, A, b):
    # enumerate all basic feasible points of {Ax <= b, x >= 0}
    import itertools

    nvar = A.shape[1]
    rows = np.vstack([A, -np.eye(nvar)])
    rhs = np.concatenate([b, np.zeros(nvar)])
    best = 0.0  # origin is feasible here
    for combo in itertools.combinations(range(rows.shape[0]), nvar):
        sub = rows[list(combo)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, rhs[list(combo)])
        if np.all(rows @ x <= rhs + 1e-9):
            best = max(best, float(c @ x))
    return best
