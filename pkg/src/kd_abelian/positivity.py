"""Pure KD-positive states, their distributions, positivity tests and the
space of KD-real observables."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import (Element, GroupSpec, Subgroup, all_subgroups, annihilator,
                     coset_representatives)
from .kd import kd_lower, kd_lower_inverse, projector, weyl_apply
from .linalg import gaussian_rank, hermitian_eigenvalues

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class LabeledPureState:
    subgroup: Subgroup
    g0: Element
    chi0: Element
    vector: np.ndarray

    @property
    def projector(self) -> np.ndarray:
        return projector(self.vector)


def subgroup_state(G: GroupSpec, H: Subgroup) -> np.ndarray:
    """Normalized indicator function of H."""
    return H.mask.astype(complex) / np.sqrt(H.order)


def eta(G: GroupSpec, H: Subgroup, g0, chi0, perp: Subgroup | None = None) -> np.ndarray:
    """``(1/|G|) 1_H(g - g0) 1_{H^perp}(chi - chi0)`` as a real (|G|, |G|) table."""
    perp = annihilator(G, H) if perp is None else perp
    x = np.arange(G.order)
    in_h = H.mask[G.sub_table[x, G.index(g0)]]
    in_perp = perp.mask[G.sub_table[x, G.index(chi0)]]
    return np.outer(in_h, in_perp).astype(float) / G.order


def pure_positive_states(G: GroupSpec) -> list[LabeledPureState]:
    """One state per subgroup H and coset pair (g0 + H, chi0 + H^perp).

    Raises if two labels produce the same projector; the labelling is expected
    to be injective and this is checked rather than assumed.
    """
    states = []
    seen: dict[bytes, tuple] = {}
    for H in all_subgroups(G):
        perp = annihilator(G, H)
        base = subgroup_state(G, H)
        for g0 in coset_representatives(G, H):
            for chi0 in coset_representatives(G, perp):
                vec = weyl_apply(G, base, g0, chi0)
                key = np.round(projector(vec), 8).tobytes()
                if key in seen:
                    raise ArithmeticError(
                        f"labels {seen[key]} and {(H.elements, g0, chi0)} give the same projector")
                seen[key] = (H.elements, g0, chi0)
                states.append(LabeledPureState(H, g0, chi0, vec))
    return states


def eta_family(G: GroupSpec, states=None) -> np.ndarray:
    """Stack of flattened eta tables, one row per pure positive state."""
    states = pure_positive_states(G) if states is None else states
    perps = {}
    rows = []
    for s in states:
        if s.subgroup.indices not in perps:
            perps[s.subgroup.indices] = annihilator(G, s.subgroup)
        rows.append(eta(G, s.subgroup, s.g0, s.chi0, perps[s.subgroup.indices]).ravel())
    return np.array(rows)


@dataclass(frozen=True)
class PositivityReport:
    is_state: bool
    hermitian_error: float
    min_eigenvalue: float
    trace_error: float
    min_kd_value: float
    max_imag_kd: float
    verdict: bool
    eps: float

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def check_kd_positive(G: GroupSpec, rho, eps: float = DEFAULT_EPS) -> PositivityReport:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (G.order, G.order):
        raise ValueError(f"expected a {G.order}x{G.order} matrix, got shape {rho.shape}")
    herm_err = float(np.abs(rho - rho.conj().T).max())
    trace_err = float(abs(np.trace(rho) - 1.0))
    if herm_err <= 1e-10:
        min_eig = float(hermitian_eigenvalues(rho)[0])
    else:
        min_eig = float("nan")
    is_state = herm_err <= 1e-10 and min_eig >= -eps and trace_err <= 1e-10
    Q = kd_lower(G, rho)
    min_kd = float(Q.real.min())
    max_imag = float(np.abs(Q.imag).max())
    verdict = is_state and min_kd >= -eps and max_imag <= eps
    return PositivityReport(is_state, herm_err, min_eig, trace_err, min_kd, max_imag, verdict, eps)


def condsar_residual(G: GroupSpec, Q) -> float:
    """Largest |sum_chi chi(g - g') (Q(g, chi) - Q(g', chi))| over pairs (g, g').

    Zero exactly when the operator with lower symbol Q is self-adjoint.
    """
    Q = np.asarray(Q)
    if np.iscomplexobj(Q):
        if np.abs(Q.imag).max() > 1e-10:
            raise ValueError("condSAR residual is defined for real tables only")
        Q = Q.real
    X = G.char_table
    N = G.order
    worst = 0.0
    for g in range(N):
        for gp in range(N):
            phase = X[G.sub_table[g, gp], :]
            worst = max(worst, abs(np.sum(phase * (Q[g] - Q[gp]))))
    return float(worst)


def condsar_system(G: GroupSpec) -> np.ndarray:
    """Real linear system whose nullspace is the set of real tables meeting condSAR.

    Rows are the real and imaginary parts of the equation for each pair (g, g');
    columns are the |G|^2 table entries in row-major order.
    """
    N = G.order
    X = G.char_table
    rows = []
    for g in range(N):
        for gp in range(N):
            if g == gp:
                continue
            row = np.zeros((N, N), dtype=complex)
            phase = X[G.sub_table[g, gp], :]
            row[g] += phase
            row[gp] -= phase
            rows.append(row.ravel().real)
            rows.append(row.ravel().imag)
    if not rows:
        return np.zeros((0, N * N))
    return np.array(rows)


def condsar_nullity(G: GroupSpec) -> int:
    """Dimension of the real solution space of condSAR (SVD rank)."""
    M = condsar_system(G)
    n = G.order**2
    if M.shape[0] == 0:
        return n
    return n - int(np.linalg.matrix_rank(M, tol=1e-8))


def eta_rank(G: GroupSpec) -> int:
    """Rank over the reals of the pure-state eta tables (Gaussian elimination)."""
    return gaussian_rank(eta_family(G) * G.order)


def kdr_space_dimension(G: GroupSpec) -> int:
    """Dimension of the space of KD-real observables.

    Computed as the rank of the eta family and cross-checked against the
    nullity of the condSAR system.
    """
    r = eta_rank(G)
    n = condsar_nullity(G)
    if r != n:
        raise ArithmeticError(f"eta rank {r} != condSAR nullity {n} for {G}")
    return r


def is_self_adjoint_preimage(G: GroupSpec, Q, tol: float = 1e-9) -> bool:
    F = kd_lower_inverse(G, Q)
    return bool(np.abs(F - F.conj().T).max() <= tol)


def periodic_coefficients(G: GroupSpec, f, H: Subgroup, perp: Subgroup | None = None):
    """Coefficients of f in the eta^H basis: ``|G| f(g0, chi0)`` per coset pair."""
    perp = annihilator(G, H) if perp is None else perp
    out = []
    for g0 in coset_representatives(G, H):
        for chi0 in coset_representatives(G, perp):
            out.append(((g0, chi0), G.order * float(f[G.index(g0), G.index(chi0)])))
    return out


def synthesize_from_coefficients(G: GroupSpec, H: Subgroup, coeffs, perp: Subgroup | None = None) -> np.ndarray:
    perp = annihilator(G, H) if perp is None else perp
    total = np.zeros((G.order, G.order))
    for (g0, chi0), c in coeffs:
        total += c * eta(G, H, g0, chi0, perp)
    return total
