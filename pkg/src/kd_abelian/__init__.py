"""Kirkwood-Dirac quasiprobabilities for the Fourier transform of finite abelian groups."""
from .groups import (GroupSpec, Subgroup, add, all_subgroups, annihilator, char_eval,
                     coset_representatives, make_group)
from .hull import (PeriodicDecomposition, decompose_into_periodic, greedy_nonnegative_repair,
                   membership_conv_pure, periodic_average)
from .kd import (fourier, inverse_fourier, kd_lower, kd_lower_inverse, kd_translate, kd_upper,
                 overlap, weyl_apply)
from .linalg import hermitian_eigenvalues
from .lp import LPOutcome, LPProblem, lp_feasibility
from .positivity import (LabeledPureState, PositivityReport, check_kd_positive, condsar_residual,
                         eta, kdr_space_dimension, pure_positive_states)

__version__ = "0.1.0"
