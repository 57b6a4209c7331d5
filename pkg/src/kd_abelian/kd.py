"""Fourier transform on L^2(G) and the Kirkwood-Dirac symbols for the pair of bases
``a_g`` (delta functions) and ``b_chi`` (normalized characters).

State vectors are complex arrays of length |G|, operators are complex
(|G|, |G|) arrays in the ``a_g`` basis, and KD distributions are complex
(|G|, |G|) arrays with rows indexed by g and columns by chi.
"""
from __future__ import annotations

import numpy as np

from .groups import GroupSpec

IDENTITY_TOL = 1e-10


class ConventionError(ArithmeticError):
    """An identity that must hold exactly (up to rounding) failed."""


def transition_matrix(G: GroupSpec) -> np.ndarray:
    """``U[g, chi] = <a_g|b_chi> = chi(g) / sqrt|G|``; column chi is the vector b_chi."""
    return G.char_table / np.sqrt(G.order)


def basis_a(G: GroupSpec, g) -> np.ndarray:
    v = np.zeros(G.order, dtype=complex)
    v[G.index(g)] = 1.0
    return v


def basis_b(G: GroupSpec, chi) -> np.ndarray:
    return transition_matrix(G)[:, G.index(chi)].copy()


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def fourier(G: GroupSpec, psi) -> np.ndarray:
    """``psi_hat(chi) = |G|^{-1/2} sum_g psi(g) conj(chi(g))``."""
    return transition_matrix(G).conj().T @ np.asarray(psi, dtype=complex)


def inverse_fourier(G: GroupSpec, eta) -> np.ndarray:
    return transition_matrix(G) @ np.asarray(eta, dtype=complex)


def _check_square(G: GroupSpec, C) -> np.ndarray:
    C = np.asarray(C, dtype=complex)
    if C.shape != (G.order, G.order):
        raise ValueError(f"expected a {G.order}x{G.order} table, got shape {C.shape}")
    return C


def kd_lower(G: GroupSpec, C) -> np.ndarray:
    """``Q[C](g, chi) = <b_chi|a_g> <a_g|C|b_chi>``."""
    C = _check_square(G, C)
    U = transition_matrix(G)
    return U.conj() * (C @ U)


def kd_upper(G: GroupSpec, C) -> np.ndarray:
    """``Q~[C](g, chi) = <a_g|C|b_chi> / <a_g|b_chi>``."""
    C = _check_square(G, C)
    U = transition_matrix(G)
    return (C @ U) / U


def kd_lower_inverse(G: GroupSpec, f) -> np.ndarray:
    """``Q^{-1}[f] = |G| sum_{g,chi} <a_g|b_chi> f(g,chi) |a_g><b_chi|``."""
    f = _check_square(G, f)
    U = transition_matrix(G)
    return G.order * (U * f) @ U.conj().T


def kd_upper_inverse(G: GroupSpec, f) -> np.ndarray:
    f = _check_square(G, f)
    U = transition_matrix(G)
    return (U * f) @ U.conj().T


def weyl_operator(G: GroupSpec, g0, chi0) -> np.ndarray:
    """Matrix of ``M_chi0 T_g0``: ``(M T psi)(x) = chi0(x) psi(x - g0)``."""
    N = G.order
    i0, c0 = G.index(g0), G.index(chi0)
    W = np.zeros((N, N), dtype=complex)
    rows = np.arange(N)
    W[rows, G.sub_table[rows, i0]] = G.char_table[rows, c0]
    return W


def weyl_apply(G: GroupSpec, psi, g0, chi0) -> np.ndarray:
    N = G.order
    psi = np.asarray(psi, dtype=complex)
    i0, c0 = G.index(g0), G.index(chi0)
    x = np.arange(N)
    return G.char_table[x, c0] * psi[G.sub_table[x, i0]]


def weyl_conjugate(G: GroupSpec, C, g0, chi0) -> np.ndarray:
    W = weyl_operator(G, g0, chi0)
    return W @ np.asarray(C, dtype=complex) @ W.conj().T


def kd_translate(G: GroupSpec, f, g0, chi0) -> np.ndarray:
    """``out(g, chi) = f(g - g0, chi - chi0)`` on the torus G x G^."""
    f = _check_square(G, f)
    x = np.arange(G.order)
    rows = G.sub_table[x, G.index(g0)]
    cols = G.sub_table[x, G.index(chi0)]
    return f[np.ix_(rows, cols)]


def overlap(G: GroupSpec, C, D, tol: float = IDENTITY_TOL) -> complex:
    """``Tr C^dagger D``, cross-checked against ``sum conj(Q~[C]) Q[D]``."""
    C = _check_square(G, C)
    D = _check_square(G, D)
    direct = complex(np.trace(C.conj().T @ D))
    via_symbols = complex(np.sum(kd_upper(G, C).conj() * kd_lower(G, D)))
    scale = max(1.0, np.abs(C).max() * np.abs(D).max() * G.order)
    if abs(direct - via_symbols) > tol * scale:
        raise ConventionError(f"overlap identity broken: {direct} vs {via_symbols}")
    return direct


def diagonal_in_a(G: GroupSpec, v) -> np.ndarray:
    return np.diag(np.asarray(v, dtype=complex))


def diagonal_in_b(G: GroupSpec, w) -> np.ndarray:
    U = transition_matrix(G)
    return (U * np.asarray(w, dtype=complex)) @ U.conj().T


def translation(G: GroupSpec, g0) -> np.ndarray:
    return weyl_operator(G, g0, (0,) * G.rank)


def modulation(G: GroupSpec, chi0) -> np.ndarray:
    return weyl_operator(G, (0,) * G.rank, chi0)


def random_state_vector(G: GroupSpec, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector."""
    v = rng.normal(size=G.order) + 1j * rng.normal(size=G.order)
    return v / np.linalg.norm(v)


def random_operator(G: GroupSpec, rng: np.random.Generator) -> np.ndarray:
    N = G.order
    return rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))


def random_density(G: GroupSpec, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    N = G.order
    k = N if rank is None else rank
    X = rng.normal(size=(N, k)) + 1j * rng.normal(size=(N, k))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real
