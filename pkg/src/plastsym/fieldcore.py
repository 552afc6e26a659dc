"""Physical state, PDE residual and boundary-ODE slopes for planar ideal
plasticity at the yield limit.

The governing first-order system couples the mean pressure sigma, the
principal-direction angle theta and the velocity components (u, v):

    sigma_x - (theta_x cos 2theta + theta_y sin 2theta) = 0
    sigma_y - (theta_x sin 2theta - theta_y cos 2theta) = 0
    (u_y + v_x) sin 2theta + (u_x - v_y) cos 2theta      = 0
    u_x + v_y                                            = 0

with the yield constant k normalized to 1/2 (sigma is k-scaled, so the
factor 2k multiplying the angle gradient is exactly 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

K = 0.5  # yield constant; fixed by normalization, not a runtime parameter

_INF_SLOPE = math.inf


class DomainError(ValueError):
    """Raised when an evaluation leaves the region where fields are defined."""


class NearStagnationError(ValueError):
    """Feed velocity nearly equals material velocity; the limit ODE slope
    (V0 - v)/(U0 - u) is not usable and the caller must switch to an
    arc-length parametrization."""


@dataclass(frozen=True)
class PlasticState:
    """Pointwise values of the four unknown fields."""

    sigma: float
    theta: float
    u: float
    v: float

    def as_array(self) -> np.ndarray:
        return np.array([self.sigma, self.theta, self.u, self.v], dtype=float)

    def normalized(self) -> "PlasticState":
        """Report theta in the principal branch (-pi/2, pi/2].

        Only for output boundaries; residuals and finite differences must
        see the raw continuous angle.
        """
        t = math.remainder(self.theta, math.pi)
        if t <= -math.pi / 2:
            t += math.pi
        elif t > math.pi / 2:
            t -= math.pi
        return PlasticState(self.sigma, t, self.u, self.v)


@dataclass(frozen=True)
class FieldJet:
    """A state together with its first derivatives in x and y."""

    state: PlasticState
    d_x: PlasticState
    d_y: PlasticState

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.state.as_array()))
                    and np.all(np.isfinite(self.d_x.as_array()))
                    and np.all(np.isfinite(self.d_y.as_array())))


@dataclass(frozen=True)
class FeedVelocity:
    """Rigid feed (or extraction) velocity of the undeformed material."""

    U0: float
    V0: float

    def __post_init__(self):
        if self.U0 == 0.0 and self.V0 == 0.0:
            raise ValueError("feed velocity must be nonzero")


def pde_residual(jet: FieldJet) -> np.ndarray:
    """Left-hand sides of the four governing equations at one point.

    Written exactly in the form above, without trigonometric rewriting, so
    that any sign or argument error in a candidate solution shows up as a
    nonzero residual instead of cancelling silently.
    """
    if not jet.is_finite():
        raise DomainError("jet has non-finite entries")
    th = jet.state.theta
    c2, s2 = math.cos(2 * th), math.sin(2 * th)
    dx, dy = jet.d_x, jet.d_y
    r_a = dx.sigma - (dx.theta * c2 + dy.theta * s2)
    r_b = dy.sigma - (dx.theta * s2 - dy.theta * c2)
    r_c = (dy.u + dx.v) * s2 + (dx.u - dy.v) * c2
    r_d = dx.u + dy.v
    return np.array([r_a, r_b, r_c, r_d])


def numeric_jet(field, point, h: float = 1e-4) -> FieldJet:
    """Fallback jet oracle: 4th-order central differences of `field`.

    `field` maps (x, y) to a PlasticState.  The step is scaled by
    max(1, |x|, |y|) so relative accuracy survives far from the origin.
    """
    x, y = point
    hh = h * max(1.0, abs(x), abs(y))

    def arr(px, py):
        s = field(px, py)
        a = s.as_array()
        if not np.all(np.isfinite(a)):
            raise DomainError(f"stencil point ({px}, {py}) left the domain")
        return a

    f0 = arr(x, y)
    fx = (-arr(x + 2 * hh, y) + 8 * arr(x + hh, y)
          - 8 * arr(x - hh, y) + arr(x - 2 * hh, y)) / (12 * hh)
    fy = (-arr(x, y + 2 * hh) + 8 * arr(x, y + hh)
          - 8 * arr(x, y - hh) + arr(x, y - 2 * hh)) / (12 * hh)
    return FieldJet(PlasticState(*f0), PlasticState(*fx), PlasticState(*fy))


def characteristic_slopes(theta: float) -> tuple[float, float]:
    """Slip-line slopes (tan theta, -cot theta).

    The second slope is returned as +/-inf when theta is a multiple of pi;
    infinities are values here, not errors, because the slip-line tracer
    integrates through verticals in arc length.
    """
    t = math.tan(theta)
    s = math.sin(theta)
    if abs(s) < 1e-15:
        return t, _INF_SLOPE
    return t, -math.cos(theta) / s


def plasticity_limit_slope(point, feed: FeedVelocity, field) -> float:
    """dy/dx of the plasticity-limit curve: (V0 - v)/(U0 - u)."""
    x, y = point
    s = field(x, y)
    du = feed.U0 - s.u
    if abs(du) < 1e-12:
        raise NearStagnationError(
            f"feed minus material x-velocity is {du:.3e} at ({x}, {y})")
    return (feed.V0 - s.v) / du
