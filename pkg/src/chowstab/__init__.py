"""Exact stability certificates for projective hypersurfaces and Chow-form
supports, with companion threshold bounds and discriminant tools.

Everything is exact: big integers, rationals, and prime fields; the LP core
is an all-rational simplex, so verdicts are certificates rather than
numerics.
"""

from .cycles import LiftReport, lift_support, multiple_cycle, sum_cycles, \
    transfer_check
from .discriminants import ExtensionField, ProjPoint, QuarticST, \
    cyclic_critical_exponent, discriminant_binary, quartic_st, \
    quartic_st_generic, singular_locus_enumerate, smoothness_binary, \
    sylvester_resultant
from .errors import ChowstabError, ParseError, PreconditionError
from .fields import FP, QQ, ZZ, Domain, PrimeFieldElem, Rational, \
    domain_from_tag, is_prime
from .poly import Poly, apply_matrix, euler_residual, parse_poly, \
    partial_derivative, poly_mul, reduce_mod_p, support, weighted_multiplicity
from .stability import BracketSupport, SearchBudget, StabilityCertificate, \
    Verdict, WeightVector, bracket_from_hypersurface, destab_search, \
    lee_ratio, lp_membership_maxmin, mu_bracket, mu_hypersurface, \
    numerical_identity_check, torus_certificate
from .thresholds import INFINITY, LeeOutcome, LeeVerdict, ThresholdInterval, \
    WeightAssignment, blowup_discrepancy, fpt_interval, fpt_nu, \
    lct_bound_optimize, lct_upper_bound, lee_verdict

__version__ = "0.1.0"

__all__ = [
    "BracketSupport", "ChowstabError", "Domain", "ExtensionField", "FP",
    "INFINITY", "LeeOutcome", "LeeVerdict", "LiftReport", "ParseError",
    "Poly", "PreconditionError", "PrimeFieldElem", "ProjPoint", "QQ",
    "QuarticST", "Rational", "SearchBudget", "StabilityCertificate",
    "ThresholdInterval", "Verdict", "WeightAssignment", "WeightVector", "ZZ",
    "apply_matrix", "blowup_discrepancy", "bracket_from_hypersurface",
    "cyclic_critical_exponent", "destab_search", "discriminant_binary",
    "domain_from_tag", "euler_residual", "fpt_interval", "fpt_nu",
    "is_prime", "lct_bound_optimize", "lct_upper_bound", "lee_ratio",
    "lee_verdict", "lift_support", "lp_membership_maxmin", "mu_bracket",
    "mu_hypersurface", "multiple_cycle", "numerical_identity_check",
    "parse_poly", "partial_derivative", "poly_mul", "quartic_st",
    "quartic_st_generic", "reduce_mod_p", "singular_locus_enumerate",
    "smoothness_binary", "sum_cycles", "support", "sylvester_resultant",
    "torus_certificate", "transfer_check", "weighted_multiplicity",
]
