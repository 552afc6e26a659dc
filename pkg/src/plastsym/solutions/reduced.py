"""Residuals of the symmetry-reduced equations behind the families.

These checks run one level below the assembled fields: they verify the
reduced relations themselves, so a failure separates "the reduction is
wrong" from "the reconstruction is wrong".

B1_REDUCED        the four governing equations restricted to the
                  constant-speed implicit ansatz, as functions of the
                  ray variable; they must vanish for every profile T.
K_XI_PDE          the quasilinear second-order operator that the
                  stream-potential ansatz xi = (x^2 + eps y^2)/2 must
                  annihilate; eps = +1 solves it everywhere, eps = -1
                  only off the coordinate quadrant diagonal.
SIM_SIGMA_SYSTEM  the pressure pair of the winding similarity branch:
                  finite differences of the reconstructed pressure are
                  compared with its closed gradient forms, plus a mixed
                  partial compatibility check.
"""
from __future__ import annotations

import math

import numpy as np

from ..fieldcore import K
from .callables import SmoothFn, arcsin_half, resolve_callable
from .profile import SimilarityProfile, quad_cos2J


def _b1_reduced(xi: float, T: SmoothFn, c1: float) -> np.ndarray:
    t = T.value(xi)
    tp = T.d1(xi)
    F, G = c1 * math.cos(t), c1 * math.sin(t)
    Fp, Gp = -G * tp, F * tp
    s2, cs2 = math.sin(2 * t), math.cos(2 * t)
    e1 = F * tp - (cs2 * F + s2 * G) * tp
    e2 = G * tp - (s2 * F - cs2 * G) * tp
    e3 = (G * Fp + F * Gp) * s2 + (F * Fp - G * Gp) * cs2
    e4 = F * Fp + G * Gp
    return np.array([e1, e2, e3, e4])


def _k_xi_pde(point, eps: float) -> np.ndarray:
    x, y = point
    xi = 0.5 * (x * x + eps * y * y)
    xi_x, xi_y = x, eps * y
    xi_xx, xi_yy, xi_xy = 1.0, eps, 0.0
    eta2 = (x * x + y * y) ** 2
    D = eta2 - 4.0 * xi * xi
    sq = math.sqrt(max(D, 0.0))
    t1 = (xi_xx - xi_yy) * ((eta2 - 4 * xi * xi)
                            * (xi * (x * x - y * y) - x * y * sq))
    t2 = -((4 * x * y * xi + (x * x - y * y) * sq)
           / (x * y * sq - (x * x - y * y) * xi)) * xi_xy
    t3 = eta2 * ((x + y) * xi_x - (x - y) * xi_y) \
        * ((x - y) * xi_x + (x + y) * xi_y)
    t4 = -4.0 * eta2 * xi * (x * xi_x + y * xi_y - xi)
    return np.array([t1 + t2 + t3 + t4])


def _sim_sigma_system(point, profile: SimilarityProfile,
                      c3: float = 0.0, h: float = 1e-5) -> np.ndarray:
    x, y = point
    c1 = profile.c1

    def sigma(px, py):
        xi = py / px
        J = profile.J(xi)
        C = quad_cos2J(1.0, xi, profile, epsabs=1e-12, limit=200)
        return (K * (xi * math.cos(2 * J) - math.sin(2 * J)
                     - 2 * c1 * math.log(px)) - K * C + c3)

    def grad(px, py):
        xi = py / px
        J = profile.J(xi)
        Jp = profile.J_prime(xi)
        s2, cs2 = math.sin(2 * J), math.cos(2 * J)
        gx = (2 * K / px) * (s2 - xi * cs2) * Jp
        gy = -(2 * K / px) * (xi * s2 + cs2) * Jp
        return gx, gy

    hh = h * max(1.0, abs(x), abs(y))
    fd_x = (sigma(x + hh, y) - sigma(x - hh, y)) / (2 * hh)
    fd_y = (sigma(x, y + hh) - sigma(x, y - hh)) / (2 * hh)
    gx, gy = grad(x, y)
    # curl of the closed gradient forms; zero iff the pair is compatible
    hc = 1e-4 * max(1.0, abs(x), abs(y))
    gx_y = (grad(x, y + hc)[0] - grad(x, y - hc)[0]) / (2 * hc)
    gy_x = (grad(x + hc, y)[1] - grad(x - hc, y)[1]) / (2 * hc)
    return np.array([fd_x - gx, fd_y - gy, gx_y - gy_x])


def reduced_system_residual(family: str, arg, **kw) -> np.ndarray:
    """Residual vector of one reduced relation.

    B1_REDUCED:       arg is the ray variable; kw T (callable or spec
                      string, default the arcsine profile), c1.
    K_XI_PDE:         arg is (x, y); kw eps selects the ansatz sign.
    SIM_SIGMA_SYSTEM: arg is (x, y); kw profile is a SimilarityProfile,
                      optional c3 pressure shift and FD step h.
    """
    key = str(family).upper()
    if key == "B1_REDUCED":
        T = kw.pop("T", None)
        if T is None:
            T = arcsin_half()
        elif isinstance(T, str):
            T = resolve_callable(T)
        c1 = float(kw.pop("c1", 1.0))
        if kw:
            raise ValueError(f"unknown B1_REDUCED options: {sorted(kw)}")
        return _b1_reduced(float(arg), T, c1)
    if key == "K_XI_PDE":
        eps = float(kw.pop("eps", 1.0))
        if kw:
            raise ValueError(f"unknown K_XI_PDE options: {sorted(kw)}")
        return _k_xi_pde(arg, eps)
    if key == "SIM_SIGMA_SYSTEM":
        profile = kw.pop("profile")
        return _sim_sigma_system(arg, profile, **kw)
    raise ValueError(f"unknown reduced system {family!r}")
