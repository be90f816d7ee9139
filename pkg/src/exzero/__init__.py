"""Exceptional-zero cup products: cyclotomic trace sums against p-adic closed forms."""
from .characters import DirichletChar, check_exceptional, enumerate_characters, is_exceptional, teichmuller_char, theta_from_chi
from .cyclotomic import CycloElt, GaloisElement, gauss_sum, partial_trace_p
from .eisenstein import TruncatedSeries, eisenstein_coeff, g_theta_series, specialize, xi_theta
from .errors import (
    BudgetError,
    DomainError,
    ExzeroError,
    HypothesisError,
    PoleError,
    PrecisionError,
    UndeterminedError,
)
from .lvalues import dirichlet_L_at_0, kubota_leopoldt, l_invariant, lp_derivative_at_0, pair_ring
from .padic import KappaChoice, PadicInt, padic_log, teichmuller
from .reciprocity import CupProductValue, cup_ell, cup_p, cup_value, trace_sum_closed_form, trace_sum_exact
from .unramified import UnramifiedElt, UnramifiedRing, unramified_ring

__version__ = "0.1.0"
