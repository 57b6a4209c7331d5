"""Convex geometry of KD-positive states.

Membership of a state in the convex hull of the pure KD-positive states is
decided by LP feasibility over the eta tables; infeasibility comes with a
separating witness table.  For groups whose subgroups form a chain, the
greedy repair turns any decomposition into periodic parts into a
nonnegative one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import (GroupSpec, Subgroup, all_subgroups, annihilator, coset_representatives,
                     is_chain)
from .kd import kd_lower, projector
from .lp import CERT_TOL, FEAS_TOL, LPCertificateError, LPOutcome, LPProblem, lp_feasibility
from .positivity import LabeledPureState, eta, eta_family, pure_positive_states


@dataclass(frozen=True)
class PeriodicDecomposition:
    parts: list[tuple[Subgroup, np.ndarray]]

    def total(self) -> np.ndarray:
        return sum(t for _, t in self.parts)

    def min_entry(self) -> float:
        return min(float(t.min()) for _, t in self.parts)

    def to_json(self) -> dict:
        return {"parts": [{"subgroup": H.to_json(),
                           "elements": [list(e) for e in H.elements],
                           "table": t.tolist()} for H, t in self.parts]}


@dataclass(frozen=True)
class MembershipResult:
    outcome: LPOutcome
    states: list[LabeledPureState]
    witness: np.ndarray | None = None
    parts: PeriodicDecomposition | None = None

    @property
    def feasible(self) -> bool:
        return self.outcome.feasible


def _orbit_indices(G: GroupSpec, H: Subgroup, perp: Subgroup):
    x = np.arange(G.order)
    rows = G.add_table[np.ix_(x, list(H.indices))]       # (|G|, |H|)
    cols = G.add_table[np.ix_(x, list(perp.indices))]    # (|G|, |H^perp|)
    return rows, cols


def periodic_average(G: GroupSpec, Q, H: Subgroup, perp: Subgroup | None = None) -> np.ndarray:
    """Orthogonal projection onto the H x H^perp-periodic tables (orbit average)."""
    perp = annihilator(G, H) if perp is None else perp
    Q = np.asarray(Q, dtype=float)
    rows, cols = _orbit_indices(G, H, perp)
    # average over g + H first, then chi + H^perp
    by_row = Q[rows].mean(axis=1)
    return by_row[:, cols].mean(axis=2)


def is_periodic(G: GroupSpec, Q, H: Subgroup, perp: Subgroup | None = None, tol: float = 0.0) -> bool:
    perp = annihilator(G, H) if perp is None else perp
    Q = np.asarray(Q)
    x = np.arange(G.order)
    for h in H.indices:
        if np.abs(Q[G.add_table[x, h]] - Q).max() > tol:
            return False
    for k in perp.indices:
        if np.abs(Q[:, G.add_table[x, k]] - Q).max() > tol:
            return False
    return True


def membership_problem(G: GroupSpec, rho, states=None) -> tuple[LPProblem, list[LabeledPureState]]:
    states = pure_positive_states(G) if states is None else states
    Q = kd_lower(G, rho)
    if np.abs(Q.imag).max() > 1e-9:
        raise ValueError("state has a non-real KD distribution; it cannot lie in the hull")
    E = eta_family(G, states).T                       # (|G|^2, n_states)
    A = np.vstack([E, np.ones((1, E.shape[1]))])
    b = np.concatenate([Q.real.ravel(), [1.0]])
    return LPProblem(A, b), states


def group_weights(G: GroupSpec, states, weights) -> PeriodicDecomposition:
    """Collect ``sum lambda * eta`` per subgroup into one periodic part each."""
    parts: dict[tuple, list] = {}
    for s, w in zip(states, weights):
        key = s.subgroup.indices
        if key not in parts:
            parts[key] = [s.subgroup, annihilator(G, s.subgroup), np.zeros((G.order, G.order))]
        parts[key][2] += w * eta(G, s.subgroup, s.g0, s.chi0, parts[key][1])
    return PeriodicDecomposition([(H, t) for H, _, t in parts.values()])


def membership_conv_pure(G: GroupSpec, rho, states=None) -> MembershipResult:
    """Decide whether rho is a convex mixture of pure KD-positive states.

    Feasible outcomes are checked by rebuilding rho from the weighted
    projectors and by regrouping the weights into nonnegative periodic parts.
    Infeasible outcomes carry a witness table W with ``<W, eta> >= 0`` for
    every pure state and ``<W, Q[rho]> < 0``.
    """
    rho = np.asarray(rho, dtype=complex)
    problem, states = membership_problem(G, rho, states)
    out = lp_feasibility(problem)
    Q = kd_lower(G, rho).real
    if out.feasible:
        recon = sum(w * s.projector for s, w in zip(states, out.weights) if w != 0)
        err = np.abs(recon - rho).max()
        if err >= FEAS_TOL:
            raise LPCertificateError(f"mixture reconstructs rho only to {err:.3e}")
        parts = group_weights(G, states, out.weights)
        if parts.min_entry() < -CERT_TOL or np.abs(parts.total() - Q).max() >= FEAS_TOL:
            raise LPCertificateError("regrouped weights are not a nonnegative periodic decomposition")
        for H, t in parts.parts:
            if not is_periodic(G, t, H, tol=1e-12):
                raise LPCertificateError(f"part for {H} is not periodic")
        return MembershipResult(out, states, parts=parts)
    y = out.certificate
    N = G.order
    # fold the normalization row into the table: every eta and Q[rho] sum to 1
    W = -(y[:-1].reshape(N, N) + y[-1])
    pairings = eta_family(G, states) @ W.ravel()
    rho_pair = float(np.sum(W * Q))
    if pairings.min() < -CERT_TOL or rho_pair >= -FEAS_TOL:
        raise LPCertificateError(
            f"witness fails: min pure pairing {pairings.min():.3e}, state pairing {rho_pair:.3e}")
    return MembershipResult(out, states, witness=W)


def frobenius_pairing(W, Q) -> complex:
    """``sum conj(W) * Q``."""
    return complex(np.sum(np.conj(np.asarray(W)) * np.asarray(Q)))


def decompose_into_periodic(G: GroupSpec, Q, family: list[Subgroup], ridge: float = 1e-12,
                            tol: float = 1e-9) -> PeriodicDecomposition:
    """Write Q as a sum of H x H^perp-periodic parts over the given subgroups.

    If Q already lies in a single P_H of the family, the first such H gets all
    of Q.  Otherwise the parts are the least-squares solution (normal
    equations with a small ridge) in the eta^H coordinates, so they are
    periodic by construction.
    """
    Q = np.asarray(Q)
    if np.iscomplexobj(Q):
        if np.abs(Q.imag).max() > 1e-10:
            raise ValueError("decomposition needs a real table")
        Q = Q.real
    N = G.order
    for i, H in enumerate(family):
        if is_periodic(G, Q, H, tol=tol):
            avg = periodic_average(G, Q, H)
            return PeriodicDecomposition([(K, avg if j == i else np.zeros((N, N)))
                                          for j, K in enumerate(family)])
    blocks, labels = [], []
    for H in family:
        perp = annihilator(G, H)
        cols = []
        for g0 in coset_representatives(G, H):
            for chi0 in coset_representatives(G, perp):
                cols.append(N * eta(G, H, g0, chi0, perp).ravel())
        blocks.append(np.array(cols).T)
        labels.append((H, perp, len(cols)))
    M = np.hstack(blocks)
    x = np.linalg.solve(M.T @ M + ridge * np.eye(M.shape[1]), M.T @ Q.ravel())
    parts, start = [], 0
    for (H, perp, k), block in zip(labels, blocks):
        parts.append((H, (block @ x[start:start + k]).reshape(N, N)))
        start += k
    dec = PeriodicDecomposition(parts)
    resid = np.abs(dec.total() - Q).max()
    if resid > tol:
        raise ValueError(f"table is not in the span of the given periodic spaces (residual {resid:.3e})")
    return dec


def subgroup_chain(G: GroupSpec) -> list[Subgroup]:
    """All subgroups of G in increasing order; raises if they do not form a chain."""
    subs = all_subgroups(G)
    if not is_chain(subs):
        raise ValueError(f"the subgroups of {G} do not form a chain")
    return subs


def greedy_nonnegative_repair(G: GroupSpec, f, parts: PeriodicDecomposition,
                              tol: float = 1e-9) -> PeriodicDecomposition:
    """Replace a sign-mixed decomposition along a subgroup chain by a nonnegative one.

    Level by level: keep ``f_i(g, k) - min_{s in G_{i+1}} f_i(g + s, k)`` at level
    i and push the subtracted minimum, which is periodic for the next level,
    into ``f_{i+1}``.
    """
    f = np.asarray(f, dtype=float)
    if f.min() < -1e-10:
        raise ValueError(f"input table has a negative entry {f.min():.3e}")
    chain = [H for H, _ in parts.parts]
    for a, b in zip(chain, chain[1:]):
        if not a <= b:
            raise ValueError("parts are not indexed by an increasing subgroup chain")
    if np.abs(parts.total() - f).max() > tol:
        raise ValueError("parts do not sum to the input table")
    work = [np.array(t, dtype=float) for _, t in parts.parts]
    x = np.arange(G.order)
    out = []
    for i, H in enumerate(chain):
        fi = work[i]
        if i + 1 < len(chain):
            nxt = chain[i + 1]
            shifted = fi[G.add_table[np.ix_(x, list(nxt.indices))]]   # (|G|, |G_{i+1}|, |K|)
            floor = shifted.min(axis=1)
            kept = fi - floor
            work[i + 1] = work[i + 1] + floor
        else:
            kept = fi
        out.append((H, kept))
    dec = PeriodicDecomposition(out)
    if dec.min_entry() < -1e-10:
        raise ArithmeticError(f"repair left a negative entry {dec.min_entry():.3e}")
    if np.abs(dec.total() - f).max() > tol:
        raise ArithmeticError("repaired parts do not re-sum to the input")
    return dec


def chain_decomposition(G: GroupSpec, rho) -> PeriodicDecomposition:
    """Nonnegative periodic decomposition of Q[rho] for a group with a subgroup chain."""
    chain = subgroup_chain(G)
    Q = kd_lower(G, rho)
    parts = decompose_into_periodic(G, Q, chain)
    return greedy_nonnegative_repair(G, Q.real, parts)


def mixture(states, weights) -> np.ndarray:
    return sum(w * projector(s.vector) for s, w in zip(states, weights))
