"""Acceptance criteria, one test each.

Each test records a PASS/FAIL line that the terminal summary prints at the
end of the run (see conftest.py).
"""
import subprocess
import sys

import numpy as np
import pytest

from kd_abelian.counterexamples import rho_lambda, z2z2_constants, z6_constants
from kd_abelian.groups import all_subgroups, groups_up_to, make_group
from kd_abelian.hull import greedy_nonnegative_repair, is_periodic, membership_conv_pure, subgroup_chain
from kd_abelian.kd import (kd_lower, kd_lower_inverse, kd_translate, kd_upper, kd_upper_inverse,
                           overlap, random_density, random_operator, weyl_conjugate)
from kd_abelian.linalg import hermitian_eigenvalues
from kd_abelian.lp import LPCertificateError
from kd_abelian.positivity import check_kd_positive, condsar_nullity, eta_family, eta_rank, pure_positive_states

from builders import random_mixture, sign_mixed_chain_instance
from conftest import IDENTITY_GROUPS, record

# LP outcomes produced by criteria 4-6, tallied for criterion 7
LP_TALLY = {"instances": 0, "failures": 0}


def checked_membership(G, rho, states=None):
    LP_TALLY["instances"] += 1
    try:
        return membership_conv_pure(G, rho, states)
    except LPCertificateError:
        LP_TALLY["failures"] += 1
        raise


def test_criterion_1_pure_state_counts():
    bad = []
    if len(pure_positive_states(make_group([6]))) != 24:
        bad.append("Z6")
    if len(pure_positive_states(make_group([2, 2]))) != 20:
        bad.append("Z2xZ2")
    worst_neg, worst_imag = 0.0, 0.0
    groups = groups_up_to(16)
    for G in groups:
        states = pure_positive_states(G)
        if len(states) != G.order * len(all_subgroups(G)):
            bad.append(str(G))
        for s in states:
            Q = kd_lower(G, s.projector)
            worst_neg = min(worst_neg, Q.real.min())
            worst_imag = max(worst_imag, np.abs(Q.imag).max())
    ok = not bad and worst_neg >= -1e-10 and worst_imag <= 1e-10
    record("1 pure-state counts", ok,
           f"{len(groups)} groups, min KD {worst_neg:.1e}, max |Im| {worst_imag:.1e}, mismatches {bad}")
    assert ok


def test_criterion_2_representation_identities():
    rng = np.random.default_rng(2)
    worst = 0.0
    for orders in IDENTITY_GROUPS:
        G = make_group(orders)
        for _ in range(100):
            C, D = random_operator(G, rng), random_operator(G, rng)
            rho = random_density(G, rng)
            Q = kd_lower(G, rho)
            g0 = G.elements[rng.integers(G.order)]
            chi0 = G.elements[rng.integers(G.order)]
            U = G.char_table / np.sqrt(G.order)
            errs = [
                abs(overlap(G, C, D) - np.trace(C.conj().T @ D)),
                abs(np.sum(kd_upper(G, C).conj() * kd_lower(G, D)) - np.trace(C.conj().T @ D)),
                np.abs(Q.sum(axis=1) - np.diag(rho)).max(),
                np.abs(Q.sum(axis=0) - np.diag(U.conj().T @ rho @ U)).max(),
                np.abs(kd_lower_inverse(G, kd_lower(G, C)) - C).max(),
                np.abs(kd_upper_inverse(G, kd_upper(G, C)) - C).max(),
                np.abs(kd_lower(G, weyl_conjugate(G, rho, g0, chi0)) - kd_translate(G, Q, g0, chi0)).max(),
            ]
            worst = max(worst, max(errs))
    ok = worst <= 1e-10
    record("2 representation identities", ok, f"max error {worst:.1e} over 100 instances x {len(IDENTITY_GROUPS)} groups")
    assert ok


def test_criterion_3_kdr_dimension_dual_oracle():
    groups = [G for G in groups_up_to(12)]
    mismatches = [(str(G), eta_rank(G), condsar_nullity(G)) for G in groups
                  if eta_rank(G) != condsar_nullity(G)]
    ok = not mismatches
    record("3 V_KDr dimension", ok, f"{len(groups)} groups, mismatches {mismatches}")
    assert ok


def test_criterion_4_z6_counterexample():
    const = z6_constants()
    G = const.group
    a = const.tables["alpha"]
    qstar, qalpha = const.tables["qstar"], const.tables["qalpha"]
    pairing = float(np.sum(qstar * qalpha))
    target = (3 - 3 * a) / (3 * a + 1)
    states = pure_positive_states(G)
    pure = min(float(np.sum(qstar * kd_lower(G, s.projector).real)) for s in states)
    rho = kd_lower_inverse(G, qalpha)
    report = check_kd_positive(G, rho)
    mem = checked_membership(G, rho, states)
    witness_ok = False
    if not mem.feasible:
        W = mem.witness
        witness_ok = ((eta_family(G, states) @ W.ravel()).min() >= -1e-10
                      and float(np.sum(W * qalpha)) < -1e-8)
    ok = (abs(pairing - target) < 1e-9 and len(states) == 24 and pure >= -1e-10
          and report.is_state and report.verdict and not mem.feasible and witness_ok)
    record("4 Z6 counterexample", ok,
           f"pairing {pairing:.10f} vs {target:.10f}, min pure pairing {pure:.2e}, "
           f"KD-positive {report.verdict}, LP {'Feasible' if mem.feasible else 'Infeasible'}")
    assert ok


def test_criterion_5_z2z2_counterexample():
    const = z2z2_constants()
    G = const.group
    V = const.tables["vstar"]
    states = pure_positive_states(G)
    fro = np.trace(V.conj().T @ V).real
    tr = np.trace(V).real
    best = max(np.vdot(s.vector, V @ s.vector).real for s in states)
    lines = [abs(np.trace(rho_lambda(const, l) @ V).real - (0.45 + 0.6 * l)) for l in (0.0, 0.01, 0.05)]
    rho = rho_lambda(const, 0.05)
    min_ev = hermitian_eigenvalues(rho)[0]
    min_kd = kd_lower(G, rho).real.min()
    mem = checked_membership(G, rho, states)
    ok = (abs(fro - 1.05) < 1e-12 and abs(tr - 1) < 1e-12 and best <= 0.45 + 1e-10
          and max(lines) < 1e-10 and min_ev >= -1e-9 and min_kd >= -1e-10 and not mem.feasible)
    record("5 Z2xZ2 counterexample", ok,
           f"Tr V*V {fro:.12f}, Tr V {tr:.12f}, max pure {best:.12f}, min eig {min_ev:.3e}, "
           f"min KD {min_kd:.3e}, LP {'Feasible' if mem.feasible else 'Infeasible'}")
    assert ok


def test_criterion_6_prime_power_groups():
    rng = np.random.default_rng(6)
    summary = []
    ok = True
    for orders in [(4,), (8,), (9,)]:
        G = make_group(orders)
        states = pure_positive_states(G)
        feasible = 0
        for i in range(500):
            # every third sample keeps only a few states with skewed weights
            rho, _ = random_mixture(G, rng, states, sparse=(i % 3 == 0))
            res = checked_membership(G, rho, states)
            if res.feasible:
                recon = sum(w * s.projector for s, w in zip(states, res.outcome.weights))
                feasible += np.abs(recon - rho).max() < 1e-8
        chain = subgroup_chain(G)
        repaired = 0
        for _ in range(200):
            f, parts = sign_mixed_chain_instance(G, chain, rng, states)
            out = greedy_nonnegative_repair(G, f, parts)
            repaired += (out.min_entry() >= -1e-10 and np.abs(out.total() - f).max() <= 1e-9
                         and all(is_periodic(G, t, H, tol=1e-9) for H, t in out.parts))
        ok &= feasible == 500 and repaired == 200
        summary.append(f"{G}: {feasible}/500 feasible, {repaired}/200 repaired")
    record("6 prime-power groups", bool(ok), "; ".join(summary))
    assert ok


def test_criterion_7_lp_self_verification():
    # runs after criteria 4-6 in file order; on its own it exercises the same LP instances
    if LP_TALLY["instances"] == 0:
        pytest.skip("run together with criteria 4-6")
    ok = LP_TALLY["failures"] == 0
    record("7 LP self-verification", ok,
           f"{LP_TALLY['instances']} LP outcomes, {LP_TALLY['failures']} certificate failures")
    assert ok


def test_criterion_8_determinism():
    cmd = [sys.executable, "-m", "kd_abelian", "verify-paper", "all", "--seed", "7"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    ok = first.returncode == 0 and first.stdout == second.stdout and len(first.stdout) > 0
    record("8 determinism", ok, f"{len(first.stdout)} bytes, identical {first.stdout == second.stdout}, "
                                f"exit {first.returncode}")
    assert ok
