"""Jacobi elliptic functions via the arithmetic-geometric mean.

The descending Landen ladder evaluates cn, sn and dn to near machine
precision for modulus rho with 0 <= rho^2 < 1.  Arguments are first
reduced to [0, K] using the quarter period K = pi / (2 agm(1, rho')),
which keeps the backward phase recursion well conditioned however large
the argument is.
"""
from __future__ import annotations

import math

from ..fieldcore import DomainError

_MAX_LADDER = 64


def _ladder(m: float) -> tuple[list[float], list[float]]:
    """AGM scales a_i and half-differences c_i for parameter m = rho^2."""
    a, b = 1.0, math.sqrt(1.0 - m)
    avals, cvals = [a], [math.sqrt(m)]
    while abs(cvals[-1]) > 1e-17 and len(avals) < _MAX_LADDER:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        avals.append(a)
        cvals.append(c)
    return avals, cvals


def jacobi_cn_sn_dn(chi: float, rho: float) -> tuple[float, float, float]:
    """All three Jacobi functions (cn, sn, dn) at argument chi.

    Raises DomainError unless 0 <= rho^2 < 1; the degenerate modulus
    rho = 0 returns the circular limit (cos, sin, 1).
    """
    m = rho * rho
    if not 0.0 <= m < 1.0:
        raise DomainError(f"elliptic modulus rho={rho!r} needs 0 <= rho^2 < 1")
    if m < 1e-16:
        return math.cos(chi), math.sin(chi), 1.0

    avals, cvals = _ladder(m)
    n = len(avals) - 1
    quarter = math.pi / (2.0 * avals[n])

    # Reduce |chi| mod 4K to [0, K]; sn is odd, the two reflections flip
    # sn(4K - u) = -sn(u) and cn(2K - u) = -cn(u), dn is unchanged.
    u = math.fmod(abs(chi), 4.0 * quarter)
    sn_sign = 1.0 if chi >= 0.0 else -1.0
    if u > 2.0 * quarter:
        u = 4.0 * quarter - u
        sn_sign = -sn_sign
    cn_sign = 1.0
    if u > quarter:
        u = 2.0 * quarter - u
        cn_sign = -1.0

    phi = (2.0 ** n) * avals[n] * u
    phi_prev = phi
    for i in range(n, 0, -1):
        s = min(1.0, max(-1.0, cvals[i] / avals[i] * math.sin(phi)))
        phi_prev = phi
        phi = 0.5 * (phi + math.asin(s))
    sn, cn = math.sin(phi), math.cos(phi)
    spread = math.cos(phi_prev - phi)
    if abs(spread) > 1e-12:
        dn = cn / spread
    else:
        dn = math.sqrt(max(1.0 - m * sn * sn, 0.0))
    return cn_sign * cn, sn_sign * sn, dn


def jacobi_cn(chi: float, rho: float) -> float:
    """cn(chi, rho); bounded by [-1, 1] for real arguments."""
    return jacobi_cn_sn_dn(chi, rho)[0]


def jacobi_sn(chi: float, rho: float) -> float:
    return jacobi_cn_sn_dn(chi, rho)[1]


def jacobi_dn(chi: float, rho: float) -> float:
    return jacobi_cn_sn_dn(chi, rho)[2]
