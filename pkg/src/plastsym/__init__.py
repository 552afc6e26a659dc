"""Symmetry algebra, exact solutions and die geometry for planar ideal
plasticity at yield."""
from .fieldcore import (K, DomainError, FeedVelocity, FieldJet,
                        NearStagnationError, PlasticState,
                        characteristic_slopes, numeric_jet,
                        plasticity_limit_slope, pde_residual)

__all__ = [
    "K", "DomainError", "FeedVelocity", "FieldJet", "NearStagnationError",
    "PlasticState", "characteristic_slopes", "numeric_jet",
    "plasticity_limit_slope", "pde_residual",
    "__version__",
]

__version__ = "0.1.0"
