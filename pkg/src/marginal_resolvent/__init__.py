"""Exact and numerical tools for the product of two marginals of a Gaussian random tensor."""

from .balanced import balanced_curve, balanced_density, balanced_moments, mp_resolvent, s_transform_chain
from .elimination import SpectralCurve, build_system, eliminate_to_eta, eta_to_sextic, reference_sextic
from .maps import EdgeTypedMap, MomentTable, Permutation, enumerate_moment
from .montecarlo import empirical_moments, empirical_spectrum, marginals, sample_tensor
from .petals import extract_moments, solve_petal_system, transfer_matrix_check
from .resolvent import DensityCurve, density, moments_from_curve, support_endpoints, track_branch

__version__ = "0.1.0"
