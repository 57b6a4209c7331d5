"""Dense two-phase simplex with Bland's rule.

``lp_feasibility`` decides whether ``{x >= 0 : A x = b}`` is nonempty and
returns either a feasible point or a Farkas certificate ``y`` with
``y^T A <= 0`` and ``y^T b > 0``.  Both outcomes are re-verified before they
are returned.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FEAS_TOL = 1e-8
CERT_TOL = 1e-10
PIVOT_TOL = 1e-11
OPT_TOL = 1e-12


class LPCertificateError(ArithmeticError):
    """A solver outcome failed its own certificate check."""


class LPCyclingError(RuntimeError):
    pass


@dataclass(frozen=True)
class LPProblem:
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if A.shape[0] != b.shape[0]:
            raise ValueError(f"A has {A.shape[0]} rows but b has {b.shape[0]} entries")
        if A.shape[0] < 1 or A.shape[1] < 1:
            raise ValueError("LP needs at least one row and one column")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("LP data must be finite")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class LPOutcome:
    feasible: bool
    weights: np.ndarray | None = None
    certificate: np.ndarray | None = None
    pivots: int = 0

    def to_json(self) -> dict:
        if self.feasible:
            return {"status": "feasible", "weights": self.weights.tolist()}
        return {"status": "infeasible", "certificate": self.certificate.tolist()}


class _Tableau:
    """Rows ``[B^{-1} A | B^{-1}]`` with right-hand side and a basis list."""

    def __init__(self, A: np.ndarray, b: np.ndarray):
        m, n = A.shape
        self.m, self.n = m, n
        self.T = np.hstack([A, np.eye(m)])
        self.rhs = b.copy()
        self.basis = list(range(n, n + m))
        self.pivots = 0

    def pivot(self, r: int, j: int):
        T = self.T
        piv = T[r, j]
        T[r] /= piv
        self.rhs[r] /= piv
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.rhs -= col * self.rhs[r]
        T[:, j] = 0.0
        T[r, j] = 1.0
        self.basis[r] = j
        self.pivots += 1

    def run(self, cost: np.ndarray, allowed: np.ndarray, max_pivots: int):
        """Minimize ``cost . x`` over columns in ``allowed`` with Bland's rule."""
        while True:
            cb = cost[self.basis]
            y = cb @ self.T[:, self.n:]  # c_B B^{-1}
            reduced = cost - y @ self.T_orig
            candidates = np.flatnonzero((reduced < -OPT_TOL) & allowed)
            if candidates.size == 0:
                return y
            j = int(candidates[0])  # Bland: lowest index entering
            colj = self.T[:, j]
            rows = np.flatnonzero(colj > PIVOT_TOL)
            if rows.size == 0:
                raise ArithmeticError("unbounded direction in a bounded LP")
            ratios = self.rhs[rows] / colj[rows]
            best = ratios.min()
            tied = rows[ratios <= best + 1e-14 * max(1.0, abs(best))]
            # Bland: among ties leave the basic variable with the lowest index
            r = int(min(tied, key=lambda i: self.basis[i]))
            self.pivot(r, j)
            if self.pivots > max_pivots:
                raise LPCyclingError(f"simplex exceeded {max_pivots} pivots")


def simplex(A, b, c=None, max_pivots: int = 50_000):
    """Minimize ``c . x`` subject to ``A x = b``, ``x >= 0``.

    Returns ``(x, y, status)`` where status is ``"optimal"`` or
    ``"infeasible"``; for an infeasible problem ``y`` is a Farkas certificate.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    sign = np.where(b < 0, -1.0, 1.0)
    As = A * sign[:, None]
    bs = b * sign
    tab = _Tableau(As, bs)
    tab.T_orig = np.hstack([As, np.eye(m)])
    phase1_cost = np.concatenate([np.zeros(n), np.ones(m)])
    allowed = np.ones(n + m, dtype=bool)
    y1 = tab.run(phase1_cost, allowed, max_pivots)
    infeas = float(phase1_cost[tab.basis] @ tab.rhs)
    x = np.zeros(n + m)
    x[tab.basis] = tab.rhs
    if infeas > FEAS_TOL * max(1.0, np.abs(bs).max()):
        return x[:n], y1 * sign, "infeasible", tab.pivots
    # drive zero-level artificials out of the basis where possible
    for r, var in enumerate(list(tab.basis)):
        if var >= n:
            row = np.abs(tab.T[r, :n])
            if row.size and row.max() > 1e-9:
                tab.pivot(r, int(np.argmax(row)))
    if c is not None:
        cost = np.concatenate([np.asarray(c, dtype=float), np.zeros(m)])
        allowed = np.concatenate([np.ones(n, dtype=bool), np.zeros(m, dtype=bool)])
        # artificials stuck in the basis sit on redundant rows and stay at zero
        tab.run(cost, allowed, max_pivots)
    x = np.zeros(n + m)
    x[tab.basis] = tab.rhs
    return x[:n], None, "optimal", tab.pivots


def lp_feasibility(p: LPProblem) -> LPOutcome:
    """Find ``x >= 0`` with ``A x = b`` or a Farkas certificate of infeasibility."""
    scale = np.abs(p.b).max()
    scale = 1.0 if scale == 0 else scale
    x, y, status, pivots = simplex(p.A / scale, p.b / scale)
    if status == "optimal":
        x = np.maximum(x, 0.0)
        resid = np.abs(p.A @ x - p.b).max()
        if resid >= FEAS_TOL:
            raise LPCertificateError(f"feasible point has residual {resid:.3e}")
        return LPOutcome(True, weights=x, pivots=pivots)
    yA = y @ p.A
    yb = float(y @ p.b)
    if yA.max() > CERT_TOL or yb <= FEAS_TOL:
        raise LPCertificateError(
            f"Farkas certificate fails: max(y^T A) = {yA.max():.3e}, y^T b = {yb:.3e}")
    return LPOutcome(False, certificate=y, pivots=pivots)
