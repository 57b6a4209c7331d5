import math

import numpy as np
import pytest

from kd_abelian.linalg import gaussian_rank, hermitian_eigenvalues


def random_hermitian(rng, n):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (X + X.conj().T) / 2


def charpoly_roots_2x2(A):
    tr = (A[0, 0] + A[1, 1]).real
    det = (A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]).real
    disc = math.sqrt(max(tr * tr / 4 - det, 0.0))
    return sorted([tr / 2 - disc, tr / 2 + disc])


def charpoly_roots_3x3(A):
    """Real roots of det(x I - A) = x^3 - c2 x^2 + c1 x - c0 by the trigonometric formula."""
    c2 = np.trace(A).real
    c1 = ((np.trace(A) ** 2 - np.trace(A @ A)) / 2).real
    c0 = np.linalg.det(A).real
    # depressed cubic in y = x - c2/3
    p = c1 - c2**2 / 3
    q = -2 * c2**3 / 27 + c2 * c1 / 3 - c0
    r = 2 * math.sqrt(-p / 3)
    phi = math.acos(max(-1.0, min(1.0, 3 * q / (p * r))))
    return sorted(c2 / 3 + r * math.cos((phi - 2 * math.pi * k) / 3) for k in range(3))


def test_against_charpoly_2x2(rng):
    for _ in range(200):
        A = random_hermitian(rng, 2)
        assert np.abs(hermitian_eigenvalues(A) - charpoly_roots_2x2(A)).max() < 1e-8


def test_against_charpoly_3x3(rng):
    for _ in range(200):
        A = random_hermitian(rng, 3)
        assert np.abs(hermitian_eigenvalues(A) - charpoly_roots_3x3(A)).max() < 1e-8


def test_identity_and_projector():
    assert np.allclose(hermitian_eigenvalues(np.eye(6)), np.ones(6), atol=1e-12)
    psi = np.array([1, 1j, -1, 0, 2, 1j]) / math.sqrt(8)
    ev = hermitian_eigenvalues(np.outer(psi, psi.conj()))
    assert np.abs(ev - [0, 0, 0, 0, 0, 1]).max() < 1e-12


def test_diagonal_input_returns_sorted_diagonal():
    d = np.array([3.0, -1.0, 2.5, 0.0])
    assert np.array_equal(hermitian_eigenvalues(np.diag(d)), np.sort(d))


@pytest.mark.parametrize("n", [4, 8, 12])
def test_trace_is_preserved(rng, n):
    A = random_hermitian(rng, n)
    ev = hermitian_eigenvalues(A)
    assert abs(ev.sum() - np.trace(A).real) < 1e-8
    assert np.all(np.diff(ev) >= 0)


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.ones((2, 3)))


def test_gaussian_rank():
    assert gaussian_rank(np.eye(4)) == 4
    assert gaussian_rank(np.zeros((3, 3))) == 0
    M = np.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]], dtype=float)
    assert gaussian_rank(M) == 2
    assert gaussian_rank(M.T) == 2
