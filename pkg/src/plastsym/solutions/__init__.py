"""Exact and quadrature-grade solutions of the yield-limit system."""
from .callables import (BUILTIN_CALLABLES, SmoothFn, arcsin_half, cn_bump,
                        exp_decay, identity, poly, resolve_callable)
from .elliptic import jacobi_cn, jacobi_cn_sn_dn, jacobi_dn, jacobi_sn
from .families import (FAMILIES, ConvergenceError, Domain, SingularityError,
                       Solution, family_parameters, make_solution,
                       solve_b1_implicit)
from .profile import (BranchError, QuadratureError, SimilarityProfile,
                      adaptive_quadrature, conserved_phase,
                      first_integral_denominator, quad_Phi, quad_Psi,
                      quad_cos2J, relation_residual, similarity_J)
from .reduced import reduced_system_residual

__all__ = [
    "BUILTIN_CALLABLES", "SmoothFn", "arcsin_half", "cn_bump", "exp_decay",
    "identity", "poly", "resolve_callable",
    "jacobi_cn", "jacobi_cn_sn_dn", "jacobi_dn", "jacobi_sn",
    "FAMILIES", "ConvergenceError", "Domain", "SingularityError", "Solution",
    "family_parameters", "make_solution", "solve_b1_implicit",
    "BranchError", "QuadratureError", "SimilarityProfile",
    "adaptive_quadrature", "conserved_phase", "first_integral_denominator",
    "quad_Phi", "quad_Psi", "quad_cos2J", "relation_residual", "similarity_J",
    "reduced_system_residual",
]
