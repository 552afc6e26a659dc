"""Constraint PDEs for the two infinite families of symmetries.

Beyond the named generators, the system admits X1 = xi(sigma, theta) d/dx
+ eta(sigma, theta) d/dy for any (xi, eta) solving a pair of quasilinear
first-order PDEs, and X2 = phi d/du + psi d/dv for (phi, psi) solving the
companion pair with opposite sign.  Four of the named translations/boosts
are particular cases of each family, which pins the transcription.
"""
from __future__ import annotations

import numpy as np

from .._dual import Dual, cos, sin, value


def _grad2(f, sigma: float, theta: float):
    s, t = Dual.seed([sigma, theta])
    out = f(s, t)
    if isinstance(out, Dual):
        return value(out.grad[0]), value(out.grad[1])
    return 0.0, 0.0


def verify_infinite_family(which: str, f1, f2,
                           sigma_range=(-2.0, 2.0),
                           theta_range=(-1.5, 1.5),
                           n: int = 20) -> float:
    """Max residual of the two constraint PDEs on an n-by-n grid.

    which = "X1": f1, f2 are the x/y coefficients (xi, eta) and must satisfy
        xi_sigma = cos2t * xi_theta + sin2t * eta_theta
        xi_theta = cos2t * xi_sigma + sin2t * eta_sigma
    which = "X2": f1, f2 are the u/v coefficients (phi, psi) and must satisfy
        phi_sigma = -(cos2t * phi_theta + sin2t * psi_theta)
        phi_theta = -(cos2t * phi_sigma + sin2t * psi_sigma)
    """
    if which not in ("X1", "X2"):
        raise ValueError(f"unknown family {which!r}")
    sign = 1.0 if which == "X1" else -1.0
    worst = 0.0
    for sg in np.linspace(*sigma_range, n):
        for th in np.linspace(*theta_range, n):
            f1_s, f1_t = _grad2(f1, sg, th)
            f2_s, f2_t = _grad2(f2, sg, th)
            c2, s2 = np.cos(2 * th), np.sin(2 * th)
            r1 = f1_s - sign * (c2 * f1_t + s2 * f2_t)
            r2 = f1_t - sign * (c2 * f1_s + s2 * f2_s)
            worst = max(worst, abs(r1), abs(r2))
    return worst


def x1_case(name: str):
    """(xi, eta) pairs of the named generators lying in the X1 family."""
    return {
        "P1": (lambda s, t: 1.0, lambda s, t: 0.0),
        "P2": (lambda s, t: 0.0, lambda s, t: 1.0),
        "B3": (lambda s, t: s + sin(2 * t) * 0.5,
               lambda s, t: cos(2 * t) * (-0.5)),
        "B4": (lambda s, t: cos(2 * t) * (-0.5),
               lambda s, t: s - sin(2 * t) * 0.5),
    }[name]


def x2_case(name: str):
    """(phi, psi) pairs of the named generators lying in the X2 family."""
    return {
        "P3": (lambda s, t: 1.0, lambda s, t: 0.0),
        "P4": (lambda s, t: 0.0, lambda s, t: 1.0),
        "B5": (lambda s, t: s - sin(2 * t) * 0.5,
               lambda s, t: cos(2 * t) * 0.5),
        "B6": (lambda s, t: cos(2 * t) * 0.5,
               lambda s, t: s + sin(2 * t) * 0.5),
    }[name]
