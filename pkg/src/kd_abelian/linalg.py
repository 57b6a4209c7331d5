"""Small dense linear algebra: Hermitian eigenvalues and numerical rank."""
from __future__ import annotations

import numpy as np


def _jacobi_symmetric(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    scale = max(np.abs(a).max(), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2) * 2)
        if off < tol * scale:
            return np.diag(a).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-18 * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0:
                    t = 1.0
                elif abs(theta) > 1e100:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the (p, q) plane rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    raise ArithmeticError(f"Jacobi did not converge in {max_sweeps} sweeps")


def hermitian_eigenvalues(A, herm_tol: float = 1e-8) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    Runs cyclic Jacobi on the real symmetric embedding
    ``[[Re A, -Im A], [Im A, Re A]]``, whose spectrum is that of A with every
    eigenvalue doubled.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if np.abs(A - A.conj().T).max(initial=0.0) > herm_tol:
        raise ValueError("matrix is not Hermitian")
    A = (A + A.conj().T) / 2
    n = A.shape[0]
    if not np.any(A.imag):
        return np.sort(_jacobi_symmetric(A.real))
    emb = np.block([[A.real, -A.imag], [A.imag, A.real]])
    doubled = np.sort(_jacobi_symmetric(emb))
    return doubled.reshape(n, 2).mean(axis=1)


def gaussian_rank(M, pivot_tol: float = 1e-9) -> int:
    """Rank by Gaussian elimination with partial pivoting."""
    M = np.array(M, dtype=float, copy=True)
    rows, cols = M.shape
    rank = 0
    for j in range(cols):
        if rank == rows:
            break
        p = rank + int(np.argmax(np.abs(M[rank:, j])))
        if abs(M[p, j]) <= pivot_tol:
            continue
        M[[rank, p]] = M[[p, rank]]
        M[rank + 1 :] -= np.outer(M[rank + 1 :, j] / M[rank, j], M[rank])
        rank += 1
    return rank
