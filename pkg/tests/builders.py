"""Random instance builders shared by the hull and acceptance tests."""
import numpy as np

from kd_abelian.groups import annihilator
from kd_abelian.hull import PeriodicDecomposition, group_weights, mixture, periodic_average
from kd_abelian.kd import kd_lower
from kd_abelian.positivity import check_kd_positive, pure_positive_states


def random_mixture(G, rng, states=None, sparse=False):
    """A convex mixture of pure positive states; ``sparse`` keeps a few and pushes weight to one."""
    states = pure_positive_states(G) if states is None else states
    w = np.zeros(len(states))
    if sparse:
        k = int(rng.integers(1, 4))
        pick = rng.choice(len(states), size=k, replace=False)
        w[pick] = rng.dirichlet(np.full(k, 0.3))
    else:
        w = rng.dirichlet(np.ones(len(states)))
    return mixture(states, w), w


def sign_mixed_chain_instance(G, chain, rng, states=None):
    """A nonnegative f with a decomposition along ``chain`` whose parts have mixed signs.

    Start from the grouped weights of a random mixture, then move a table that
    is periodic for two neighbouring levels from one part to the other.
    """
    states = pure_positive_states(G) if states is None else states
    _, w = random_mixture(G, rng, states, sparse=bool(rng.integers(2)))
    grouped = {H.indices: t for H, t in group_weights(G, states, w).parts}
    N = G.order
    parts = [grouped.get(H.indices, np.zeros((N, N))).copy() for H in chain]
    f = sum(parts)
    for i in range(len(chain) - 1):
        shared = periodic_average(G, rng.normal(size=(N, N)), chain[i + 1], annihilator(G, chain[i]))
        shared *= 2 * np.abs(f).max() / max(np.abs(shared).max(), 1e-300)
        parts[i] += shared
        parts[i + 1] -= shared
    return f, PeriodicDecomposition(list(zip(chain, parts)))


def kd_positive_near_identity(G, rng, states=None, max_tries=10_000):
    """Rejection-sample a KD-positive density near I/|G|.

    The perturbation is a random real (sign-mixed) combination of pure
    positive projectors with its trace removed, so the KD table stays real
    but membership in the hull is not built in.
    """
    states = pure_positive_states(G) if states is None else states
    N = G.order
    for _ in range(max_tries):
        D = mixture(states, rng.normal(size=len(states)))
        D = D - np.trace(D).real * np.eye(N) / N
        t = rng.uniform(0, 3) / max(np.abs(kd_lower(G, D)).max() * N * N, 1e-300)
        rho = np.eye(N) / N + t * D
        if check_kd_positive(G, rho).verdict:
            return rho
    raise RuntimeError("no KD-positive sample found")


def kd_real(G, rho):
    return kd_lower(G, rho).real
