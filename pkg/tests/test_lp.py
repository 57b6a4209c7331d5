import numpy as np
import pytest
from scipy.optimize import linprog

from kd_abelian.lp import LPCertificateError, LPProblem, lp_feasibility, simplex


def test_trivial_feasible():
    out = lp_feasibility(LPProblem([[1.0]], [1.0]))
    assert out.feasible
    assert np.allclose(out.weights, [1.0])


def test_trivial_infeasible():
    out = lp_feasibility(LPProblem([[1.0]], [-1.0]))
    assert not out.feasible
    assert np.allclose(out.certificate, [-1.0])


def test_two_variable_infeasible():
    out = lp_feasibility(LPProblem([[1, 1], [1, -1]], [0, 1]))
    assert not out.feasible
    y = out.certificate
    A = np.array([[1, 1], [1, -1]])
    assert (y @ A).max() <= 1e-10 and y @ np.array([0, 1]) > 1e-8


def test_problem_validation():
    with pytest.raises(ValueError):
        LPProblem(np.ones((2, 3)), np.ones(3))
    with pytest.raises(ValueError):
        LPProblem([[np.inf]], [1.0])
    with pytest.raises(ValueError):
        LPProblem(np.zeros((0, 2)), np.zeros(0))


def test_zero_rhs_is_feasible_at_origin():
    out = lp_feasibility(LPProblem([[1, -1], [2, 3]], [0, 0]))
    assert out.feasible and np.allclose(out.weights, 0)


def test_redundant_rows():
    A = np.array([[1, 1, 0], [1, 1, 0], [0, 1, 1]], dtype=float)
    out = lp_feasibility(LPProblem(A, [1, 1, 1]))
    assert out.feasible
    assert np.abs(A @ out.weights - 1).max() < 1e-10


def test_degenerate_cube_vertex():
    # a classic degenerate system with many ties in the ratio test
    A = np.hstack([np.eye(4), np.eye(4), np.ones((4, 1))])
    b = np.ones(4)
    out = lp_feasibility(LPProblem(A, b))
    assert out.feasible and out.weights.min() >= -1e-10


@pytest.mark.parametrize("seed", range(40))
def test_agrees_with_scipy(seed):
    rng = np.random.default_rng(seed)
    m, n = rng.integers(2, 7), rng.integers(2, 10)
    A = rng.normal(size=(m, n))
    if seed % 2:
        b = A @ rng.exponential(size=n)  # feasible by construction
    else:
        b = rng.normal(size=m)
    ref = linprog(np.zeros(n), A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    out = lp_feasibility(LPProblem(A, b))
    assert out.feasible == (ref.status == 0)
    if out.feasible:
        assert out.weights.min() >= -1e-10
        assert np.abs(A @ out.weights - b).max() < 1e-8
    else:
        assert (out.certificate @ A).max() <= 1e-10
        assert out.certificate @ b > 1e-8


@pytest.mark.parametrize("seed", range(10))
def test_phase_two_optimum_matches_scipy(seed):
    rng = np.random.default_rng(100 + seed)
    m, n = 4, 9
    A = rng.normal(size=(m, n))
    b = A @ rng.exponential(size=n)
    c = rng.exponential(size=n)  # positive costs keep the problem bounded
    x, _, status, _ = simplex(A, b, c)
    ref = linprog(c, A_eq=A, b_eq=b, bounds=(0, None), method="highs")
    assert status == "optimal"
    assert c @ x == pytest.approx(ref.fun, rel=1e-8, abs=1e-10)
    assert np.abs(A @ x - b).max() < 1e-9


def test_deterministic():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(5, 12))
    b = A @ rng.exponential(size=12)
    first = lp_feasibility(LPProblem(A, b))
    second = lp_feasibility(LPProblem(A, b))
    assert np.array_equal(first.weights, second.weights) and first.pivots == second.pivots


def test_certificate_check_is_enforced(monkeypatch):
    import kd_abelian.lp as lp
    monkeypatch.setattr(lp, "simplex", lambda A, b: (None, np.zeros(len(b)), "infeasible", 0))
    with pytest.raises(LPCertificateError):
        lp.lp_feasibility(LPProblem([[1.0]], [-1.0]))


def test_outcome_json():
    assert lp_feasibility(LPProblem([[1.0]], [2.0])).to_json() == {"status": "feasible", "weights": [2.0]}
    assert lp_feasibility(LPProblem([[1.0]], [-1.0])).to_json()["status"] == "infeasible"
