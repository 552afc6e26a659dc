"""Solution families of the yield-limit system with hand-differentiated jets.

Every family returns analytic first derivatives alongside the state, so
residual gates measure the formulas themselves rather than finite
difference noise; the numeric jet of `fieldcore` is kept as an
independent cross-check, never as the primary derivative source.

Velocity fields built on the slanted-ray variable xi = y/x come in two
kinds: closed forms, and quadrature-grade forms whose values need the
profile integrals Phi, Psi or the cos 2J antiderivative.  Quadrature
enters values only; the derivative formulas close under the first
integral, which is what keeps the residual gates tight.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

import numpy as np

from ..fieldcore import K, DomainError, FieldJet, PlasticState
from .callables import (SmoothFn, arcsin_half, exp_decay, identity, poly,
                        resolve_callable)
from .profile import (SimilarityProfile, quad_Phi, quad_Psi, quad_cos2J)

FAMILIES = ("RIGID", "B1_IMPLICIT", "K_PIS",
            "SIM_C1Z_ADD_A", "SIM_C1Z_ADD_B",
            "SIM_C1Z_MUL_A", "SIM_C1Z_MUL_B", "SIM_C1Z_MUL_C",
            "SIM_C1NZ_ADD_A", "SIM_C1NZ_ADD_B",
            "SIM_C1NZ_MUL_A", "SIM_C1NZ_MUL_B")

# quadrature settings for family-internal integrals; tighter than the
# public default so the numeric-jet cross check is not quadrature bound
_QEPS = 1e-12
_QLIMIT = 200


class ConvergenceError(RuntimeError):
    """Newton iteration for an implicit velocity failed to converge."""

    def __init__(self, message: str, residual: float = math.nan):
        super().__init__(message)
        self.residual = residual


class SingularityError(RuntimeError):
    """Evaluation point sits on (or numerically at) a limit envelope where
    the implicit relation degenerates."""


@dataclass(frozen=True)
class Domain:
    """Where a family is defined, plus a sampler for its interior."""

    description: str
    contains: Callable[[float, float], bool] = field(repr=False)
    sample: Callable[[int, np.random.Generator], np.ndarray] = field(repr=False)


@dataclass(frozen=True)
class Solution:
    """One member of a family: fields, their jets, and a usable domain."""

    family: str
    params: Mapping[str, object]
    domain: Domain = field(repr=False)
    jet_fn: Callable[[float, float], FieldJet] = field(repr=False)
    profile: SimilarityProfile | None = field(default=None, repr=False)

    def eval(self, x: float, y: float) -> FieldJet:
        if not self.domain.contains(x, y):
            raise DomainError(
                f"({x:g}, {y:g}) is outside the {self.family} domain: "
                f"{self.domain.description}")
        return self.jet_fn(float(x), float(y))

    def state(self, x: float, y: float) -> PlasticState:
        return self.eval(x, y).state

    def sample_domain(self, n: int, seed: int = 42) -> np.ndarray:
        rng = np.random.default_rng(seed)
        return self.domain.sample(n, rng)


def _jet(sigma, theta, u, v, sx, tx, ux, vx, sy, ty, uy, vy) -> FieldJet:
    jet = FieldJet(PlasticState(sigma, theta, u, v),
                   PlasticState(sx, tx, ux, vx),
                   PlasticState(sy, ty, uy, vy))
    if not jet.is_finite():
        raise DomainError("field values are not finite here")
    return jet


def _take(family: str, params, spec) -> dict:
    """Normalize a raw parameter mapping against (name, kind, default)."""
    src = dict(params or {})
    out = {}
    for name, kind, default in spec:
        raw = src.pop(name, default)
        if kind == "float":
            out[name] = float(raw)
        else:
            out[name] = resolve_callable(raw) if isinstance(raw, str) else raw
            if not isinstance(out[name], SmoothFn):
                raise ValueError(
                    f"{family} parameter {name} must be a callable spec")
    if src:
        raise ValueError(f"unknown {family} parameters: {sorted(src)}")
    return out


def _rejection_sample(n, rng, draw, ok, max_factor: int = 200) -> np.ndarray:
    pts = []
    for _ in range(max_factor * n):
        x, y = draw(rng)
        if ok(x, y):
            pts.append((x, y))
            if len(pts) == n:
                return np.array(pts)
    raise RuntimeError("domain sampler failed to fill the request")


# -- uniform motion ------------------------------------------------------

def _build_rigid(params) -> Solution:
    p = _take("RIGID", params, [
        ("sigma0", "float", 0.0), ("theta0", "float", 0.0),
        ("b1", "float", 0.0), ("b2", "float", 0.0), ("b3", "float", 0.0)])
    s0, t0, b1, b2, b3 = (p[k] for k in ("sigma0", "theta0", "b1", "b2", "b3"))

    def jet_fn(x, y):
        return _jet(s0, t0, b1 * y + b2, -b1 * x + b3,
                    0.0, 0.0, 0.0, -b1,
                    0.0, 0.0, b1, 0.0)

    dom = Domain("entire plane",
                 lambda x, y: True,
                 lambda n, rng: rng.uniform(-2.0, 2.0, (n, 2)))
    return Solution("RIGID", MappingProxyType(p), dom, jet_fn)


# -- implicit constant-speed field ----------------------------------------

def solve_b1_implicit(x: float, y: float, T: SmoothFn, c1: float,
                      guess: tuple[float, float] | None = None,
                      tol: float = 1e-12, max_iter: int = 50
                      ) -> tuple[float, float]:
    """Solve u = c1 cos T(ux + vy), v = c1 sin T(ux + vy) by damped Newton.

    Backtracking halves the step (up to 20 times) whenever a candidate
    leaves T's domain or fails to reduce the residual, which lets the
    arcsine-type T recover from overshoot past |argument| = 1.
    """
    if guess is None:
        t0 = T.value(0.0)
        guess = (c1 * math.cos(t0), c1 * math.sin(t0))
    u, v = guess

    def residual(u, v):
        t = T.value(u * x + v * y)
        return np.array([u - c1 * math.cos(t), v - c1 * math.sin(t)])

    f = residual(u, v)
    if not np.all(np.isfinite(f)):
        raise ConvergenceError("initial guess is outside the domain of T")
    for _ in range(max_iter):
        err = float(np.max(np.abs(f)))
        if err < tol:
            return u, v
        xi = u * x + v * y
        t, tp = T.value(xi), T.d1(xi)
        st, ct = math.sin(t), math.cos(t)
        j11 = 1.0 + x * tp * c1 * st
        j12 = y * tp * c1 * st
        j21 = -x * tp * c1 * ct
        j22 = 1.0 - y * tp * c1 * ct
        det = j11 * j22 - j12 * j21
        if not math.isfinite(det) or abs(det) < 1e-14:
            raise SingularityError(
                f"implicit velocity Jacobian is singular at ({x:g}, {y:g})")
        du = (f[0] * j22 - f[1] * j12) / det
        dv = (j11 * f[1] - j21 * f[0]) / det
        lam = 1.0
        for _ in range(20):
            fn = residual(u - lam * du, v - lam * dv)
            if np.all(np.isfinite(fn)) and float(np.max(np.abs(fn))) < err:
                break
            lam *= 0.5
        else:
            raise ConvergenceError(
                f"backtracking stalled at ({x:g}, {y:g})", err)
        u, v = u - lam * du, v - lam * dv
        f = fn
    raise ConvergenceError(
        f"no convergence after {max_iter} iterations at ({x:g}, {y:g})",
        float(np.max(np.abs(f))))


def _build_b1(params) -> Solution:
    p = _take("B1_IMPLICIT", params, [
        ("c1", "float", 1.0), ("c2", "float", 0.0),
        ("T", "fn", arcsin_half())])
    c1, c2, T = p["c1"], p["c2"], p["T"]
    if c1 == 0.0:
        raise ValueError("B1_IMPLICIT needs a nonzero speed c1")

    # warm start from the last solved neighbor: tracers query dense point
    # sequences, and the implicit root is unique in a small neighborhood,
    # so reusing it is a pure speedup; distant queries fall back to ray
    # continuation from the origin
    near = 0.05 / abs(c1)
    last: list = [None]

    def uv(x, y):
        if last[0] is not None:
            px, py, pu, pv = last[0]
            if math.hypot(x - px, y - py) < near:
                try:
                    g = solve_b1_implicit(x, y, T, c1, guess=(pu, pv))
                    last[0] = (x, y, g[0], g[1])
                    return g
                except (ConvergenceError, SingularityError):
                    pass
        t0 = T.value(0.0)
        g = (c1 * math.cos(t0), c1 * math.sin(t0))
        lam, step = 0.0, 0.125
        while lam < 1.0:
            nxt = min(1.0, lam + step)
            try:
                g2 = solve_b1_implicit(nxt * x, nxt * y, T, c1, guess=g)
            except (ConvergenceError, SingularityError):
                # the branch bends quickly here; shorten the ray step
                step *= 0.5
                if step < 1e-3:
                    raise
                continue
            lam, g = nxt, g2
            step = min(0.25, 1.6 * step)
        last[0] = (x, y, g[0], g[1])
        return g

    def jet_fn(x, y):
        try:
            u, v = uv(x, y)
        except (ConvergenceError, SingularityError) as exc:
            raise DomainError(
                f"implicit velocity solve failed at ({x:g}, {y:g}): {exc}"
            ) from exc
        xi = u * x + v * y
        t, tp = T.value(xi), T.d1(xi)
        D = 1.0 - tp * (y * u - x * v)
        if abs(D) < 1e-10:
            raise DomainError(
                f"({x:g}, {y:g}) lies on the limit envelope of the "
                "implicit field")
        xix, xiy = u / D, v / D
        return _jet(t + c2, t, u, v,
                    tp * xix, tp * xix, -v * tp * xix, u * tp * xix,
                    tp * xiy, tp * xiy, -v * tp * xiy, u * tp * xiy)

    def contains(x, y):
        try:
            jet_fn(x, y)
        except DomainError:
            return False
        return True

    def sample(n, rng):
        def draw(rng):
            psi = rng.uniform(-math.pi, math.pi)
            r = rng.uniform(0.02, 0.75) / abs(c1)
            return r * math.cos(psi), r * math.sin(psi)
        return _rejection_sample(n, rng, draw, contains)

    dom = Domain("where the implicit solve converges off the limit envelope",
                 contains, sample)
    return Solution("B1_IMPLICIT", MappingProxyType(p), dom, jet_fn)


# -- radial pressure with swirl -------------------------------------------

def _build_k_pis(params) -> Solution:
    p = _take("K_PIS", params, [(f"c{i}", "float", 0.0) for i in range(1, 6)])
    c1, c2, c3, c4, c5 = (p[f"c{i}"] for i in range(1, 6))

    def jet_fn(x, y):
        eta = x * x + y * y
        if eta < 1e-12:
            raise DomainError("the origin is a singular point")
        theta = math.atan2(y, x) - math.pi / 4.0
        sigma = -0.5 * math.log(eta) + c1
        u = c2 * x / eta + c3 * y + c4
        v = c2 * y / eta - c3 * x + c5
        e2 = eta * eta
        return _jet(sigma, theta, u, v,
                    -x / eta, -y / eta,
                    c2 * (y * y - x * x) / e2, -2 * c2 * x * y / e2 - c3,
                    -y / eta, x / eta,
                    -2 * c2 * x * y / e2 + c3, c2 * (x * x - y * y) / e2)

    def sample(n, rng):
        r = rng.uniform(0.3, 1.8, n)
        phi = rng.uniform(-math.pi + 0.25, math.pi - 0.25, n)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi)])

    dom = Domain("plane minus the origin",
                 lambda x, y: x * x + y * y > 1e-12, sample)
    return Solution("K_PIS", MappingProxyType(p), dom, jet_fn)


# -- slanted-ray families with constant pressure gradient removed ---------
# shared base: theta is the polar angle mod pi, sigma winds oppositely

def _slant_base(x, y, shift):
    eta = x * x + y * y
    if eta < 1e-12:
        raise DomainError("the origin is a singular point")
    theta = 0.5 * math.atan2(2 * x * y, x * x - y * y)
    sigma = shift - math.atan2(y, x)
    return eta, sigma, theta, y / eta, -x / eta, -y / eta, x / eta


def _slant_sampler(extra_ok=None, quadrant=False):
    def sample(n, rng):
        def draw(rng):
            r = rng.uniform(0.35, 1.9)
            if quadrant:
                phi = rng.uniform(0.1, 1.45)
            else:
                phi = rng.uniform(-math.pi + 0.2, math.pi - 0.2)
            return r * math.cos(phi), r * math.sin(phi)

        def ok(x, y):
            if abs(x) < 0.1 * max(1.0, abs(y)):
                return False
            return extra_ok is None or extra_ok(x, y)
        return _rejection_sample(n, rng, draw, ok)
    return sample


def _extends_across_axis(uv_of) -> bool:
    """True when the velocity pair has matching finite limits from both
    sides of x = 0, making the ray-variable singularity removable."""
    try:
        for yy in (0.7, -0.7):
            left = uv_of(-1e-9, yy)
            right = uv_of(1e-9, yy)
            vals = np.array(left + right, dtype=float)
            if not np.all(np.isfinite(vals)):
                return False
            if (abs(left[0] - right[0]) > 1e-6
                    or abs(left[1] - right[1]) > 1e-6):
                return False
    except (ArithmeticError, ValueError, OverflowError):
        return False
    return True


def _slant_domain(uv_of, quadrant=False, extra_ok=None) -> tuple[Domain, bool]:
    extendable = (not quadrant) and _extends_across_axis(uv_of)
    if quadrant:
        desc = "open first quadrant away from both axes"

        def contains(x, y):
            return (x > 1e-6 and y > 1e-6 and y / x > 0.05
                    and (extra_ok is None or extra_ok(x, y)))
    elif extendable:
        desc = "plane minus the origin (axis crossing is removable)"

        def contains(x, y):
            return x * x + y * y > 1e-12 and (extra_ok is None
                                              or extra_ok(x, y))
    else:
        desc = "plane minus the origin and the vertical axis"

        def contains(x, y):
            return (x * x + y * y > 1e-12
                    and abs(x) > 1e-6 * max(1.0, abs(y))
                    and (extra_ok is None or extra_ok(x, y)))
    return Domain(desc, contains, _slant_sampler(extra_ok, quadrant)), extendable


def _clamped(x, y, extendable):
    """Step an exact x = 0 hit off the axis when the limit exists there."""
    if extendable and x == 0.0:
        return 1e-12 * max(1.0, abs(y))
    return x


def _build_c1z_add_a(params) -> Solution:
    p = _take("SIM_C1Z_ADD_A", params, [
        ("c2", "float", 0.0), ("c3", "float", 0.25), ("F", "fn", identity())])
    c2, c3, F = p["c2"], p["c3"], p["F"]

    def uv_of(x, y):
        xi = y / x
        fp = F.d1(xi)
        return (-c3 * y + fp, c3 * x + xi * fp - F.value(xi))

    dom, extendable = _slant_domain(uv_of)

    def jet_fn(x, y):
        x = _clamped(x, y, extendable)
        eta, sigma, theta, sx, sy, tx, ty = _slant_base(x, y, c2)
        xi = y / x
        xix, xiy = -y / (x * x), 1.0 / x
        fp, fpp = F.d1(xi), F.d2(xi)
        u = -c3 * y + fp
        v = c3 * x + xi * fp - F.value(xi)
        return _jet(sigma, theta, u, v,
                    sx, tx, fpp * xix, c3 + xi * fpp * xix,
                    sy, ty, -c3 + fpp * xiy, xi * fpp * xiy)

    return Solution("SIM_C1Z_ADD_A", MappingProxyType(p), dom, jet_fn)


def _build_c1z_add_b(params) -> Solution:
    p = _take("SIM_C1Z_ADD_B", params, [
        ("c2", "float", 0.0), ("c3", "float", 0.0), ("c4", "float", 0.0),
        ("H", "fn", exp_decay(1.0, 1.0)), ("K", "fn", identity())])
    c2, c3, c4, H, Kf = p["c2"], p["c3"], p["c4"], p["H"], p["K"]

    def uv_of(x, y):
        xi = y / x
        eta = x * x + y * y
        kp = Kf.d1(xi)
        return (kp - y * H.value(eta) + c3,
                xi * kp - Kf.value(xi) + x * H.value(eta) + c4)

    dom, extendable = _slant_domain(uv_of)

    def jet_fn(x, y):
        x = _clamped(x, y, extendable)
        eta, sigma, theta, sx, sy, tx, ty = _slant_base(x, y, c2)
        xi = y / x
        xix, xiy = -y / (x * x), 1.0 / x
        h, hp = H.value(eta), H.d1(eta)
        kp, kpp = Kf.d1(xi), Kf.d2(xi)
        u = kp - y * h + c3
        v = xi * kp - Kf.value(xi) + x * h + c4
        return _jet(sigma, theta, u, v,
                    sx, tx,
                    kpp * xix - 2 * x * y * hp,
                    xi * kpp * xix + h + 2 * x * x * hp,
                    sy, ty,
                    kpp * xiy - h - 2 * y * y * hp,
                    xi * kpp * xiy + 2 * x * y * hp)

    return Solution("SIM_C1Z_ADD_B", MappingProxyType(p), dom, jet_fn)


def _build_c1z_mul_a(params) -> Solution:
    from .profile import adaptive_quadrature

    p = _take("SIM_C1Z_MUL_A", params, [
        ("c2", "float", 0.0), ("c3", "float", 0.0), ("c4", "float", 0.0),
        ("P", "fn", exp_decay(1.0, 0.5)), ("Q", "fn", poly(0.0, 0.0, 0.5))])
    c2, c3, c4, P, Q = p["c2"], p["c3"], p["c4"], p["P"], p["Q"]
    # Q'(s)/s is integrable through s = 0 only when Q'(0) = 0; otherwise
    # the family lives in one quadrant of the ray variable
    quadrant = abs(Q.d1(0.0)) > 1e-13

    def ray_integrand(s):
        if s == 0.0:
            return Q.d2(0.0)
        return Q.d1(s) / s

    def W(xi):
        return adaptive_quadrature(ray_integrand, 1.0, xi,
                                   epsabs=_QEPS, limit=_QLIMIT)

    def uv_of(x, y):
        xi = y / x
        eta = x * x + y * y
        return (y * P.value(eta) + W(xi) + c3,
                Q.value(xi) - x * P.value(eta) + c4)

    dom, extendable = _slant_domain(uv_of, quadrant=quadrant)

    def jet_fn(x, y):
        x = _clamped(x, y, extendable)
        eta, sigma, theta, sx, sy, tx, ty = _slant_base(x, y, c2)
        xi = y / x
        xix, xiy = -y / (x * x), 1.0 / x
        pv, pp = P.value(eta), P.d1(eta)
        qp = Q.d1(xi)
        ray = ray_integrand(xi)
        u = y * pv + W(xi) + c3
        v = Q.value(xi) - x * pv + c4
        return _jet(sigma, theta, u, v,
                    sx, tx,
                    2 * x * y * pp + ray * xix,
                    qp * xix - pv - 2 * x * x * pp,
                    sy, ty,
                    pv + 2 * y * y * pp + ray * xiy,
                    qp * xiy - 2 * x * y * pp)

    return Solution("SIM_C1Z_MUL_A", MappingProxyType(p), dom, jet_fn)


def _build_c1z_mul_b(params) -> Solution:
    from .profile import adaptive_quadrature

    p = _take("SIM_C1Z_MUL_B", params, [
        ("c2", "float", 0.0), ("c3", "float", 0.0), ("F", "fn", identity())])
    c2, c3, F = p["c2"], p["c3"], p["F"]

    def V(xi):
        return adaptive_quadrature(lambda s: s * F.d1(s), 1.0, xi,
                                   epsabs=_QEPS, limit=_QLIMIT)

    def uv_of(x, y):
        xi = y / x
        return (F.value(xi), V(xi) + c3)

    dom, extendable = _slant_domain(uv_of)

    def jet_fn(x, y):
        x = _clamped(x, y, extendable)
        eta, sigma, theta, sx, sy, tx, ty = _slant_base(x, y, c2)
        xi = y / x
        xix, xiy = -y / (x * x), 1.0 / x
        fp = F.d1(xi)
        return _jet(sigma, theta, F.value(xi), V(xi) + c3,
                    sx, tx, fp * xix, xi * fp * xix,
                    sy, ty, fp * xiy, xi * fp * xiy)

    return Solution("SIM_C1Z_MUL_B", MappingProxyType(p), dom, jet_fn)


def _build_c1z_mul_c(params) -> Solution:
    raw = dict(params or {})
    if "c4" in raw:
        c4 = float(raw.pop("c4"))
        c3 = float(raw.get("c3", 1.0))
        if c4 != c3:
            raise ValueError(
                "SIM_C1Z_MUL_C closes only when c4 equals c3; the split "
                "constants do not satisfy the incompressibility equation")
    p = _take("SIM_C1Z_MUL_C", raw, [
        ("c2", "float", 0.0), ("c3", "float", 1.0), ("omega2", "float", 1.0)])
    c2, c3, s = p["c2"], p["c3"], 0.5 * p["omega2"]

    def jet_fn(x, y):
        eta, sigma, theta, sx, sy, tx, ty = _slant_base(x, y, c2)
        E = eta ** s
        Ep = s * eta ** (s - 1.0)
        return _jet(sigma, theta, c3 * y * E, -c3 * x * E,
                    sx, tx,
                    2 * c3 * x * y * Ep, -c3 * E - 2 * c3 * x * x * Ep,
                    sy, ty,
                    c3 * E + 2 * c3 * y * y * Ep, -2 * c3 * x * y * Ep)

    def sample(n, rng):
        r = rng.uniform(0.35, 1.9, n)
        phi = rng.uniform(-math.pi + 0.2, math.pi - 0.2, n)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi)])

    dom = Domain("plane minus the origin",
                 lambda x, y: x * x + y * y > 1e-12, sample)
    return Solution("SIM_C1Z_MUL_C", MappingProxyType(p), dom, jet_fn)


# -- slanted-ray families with winding pressure (c1 != 0) ------------------

def _sim_c1nz_parts(profile, c1, c3, x, y):
    """State and gradient pieces shared by every c1 != 0 family."""
    if x < 1e-6 or y < 1e-6:
        raise DomainError("the winding-pressure branch needs x > 0, y > 0")
    xi = y / x
    lo, hi = profile.span
    if not (lo + 0.02 <= xi <= hi - 0.02):
        raise DomainError(
            f"ray variable {xi:g} is outside the cached branch "
            f"[{lo + 0.02:g}, {hi - 0.02:g}]")
    J = profile.J(xi)
    Jp = profile.J_prime(xi)
    s2, cs2 = math.sin(2 * J), math.cos(2 * J)
    C = quad_cos2J(1.0, xi, profile, epsabs=_QEPS, limit=_QLIMIT)
    sigma = K * (xi * cs2 - s2 - 2 * c1 * math.log(x)) - K * C + c3
    Sp = -2 * K * (xi * s2 + cs2) * Jp
    xix, xiy = -xi / x, 1.0 / x
    return (xi, J, Jp, s2, cs2, xix, xiy, sigma,
            Sp * xix - 2 * K * c1 / x, Sp * xiy, Jp * xix, Jp * xiy)


def _c1nz_domain(profile) -> Domain:
    def contains(x, y):
        if x < 1e-6 or y < 1e-6:
            return False
        lo, hi = profile.span
        return lo + 0.02 <= y / x <= hi - 0.02

    def sample(n, rng):
        lo, hi = profile.span
        xs = rng.uniform(0.75, 2.1, n)
        xis = rng.uniform(lo + 0.05, hi - 0.05, n)
        return np.column_stack([xs, xis * xs])

    return Domain("first quadrant within the cached profile branch",
                  contains, sample)


def _c1nz_params(family, params, extra):
    spec = [("c1", "float", 1.25), ("c2", "float", 0.0),
            ("c3", "float", 0.0)] + extra
    p = _take(family, params, spec)
    if p["c1"] == 0.0 or abs(abs(p["c1"]) - 1.0) < 1e-12:
        raise ValueError(f"{family} needs c1 != 0 with |c1| != 1")
    return p


def _build_c1nz_add_a(params) -> Solution:
    p = _c1nz_params("SIM_C1NZ_ADD_A", params, [
        ("c4", "float", 0.25), ("c5", "float", 1.0), ("c6", "float", 0.5),
        ("c7", "float", 0.0), ("c8", "float", 0.0)])
    c1, c3 = p["c1"], p["c3"]
    c4, c5, c6, c7, c8 = (p[k] for k in ("c4", "c5", "c6", "c7", "c8"))
    profile = SimilarityProfile(c1, p["c2"])

    def jet_fn(x, y):
        (xi, J, Jp, s2, cs2, xix, xiy,
         sigma, sgx, sgy, thx, thy) = _sim_c1nz_parts(profile, c1, c3, x, y)
        Phi = quad_Phi(1.0, xi, profile, epsabs=_QEPS, limit=_QLIMIT)
        Psi = quad_Psi(1.0, xi, profile, epsabs=_QEPS, limit=_QLIMIT)
        u = (-c5 / (2 * c1) * cs2 + c6 / c1 * Phi
             + c6 * math.log(y) - c4 * y + c7)
        v = (c5 * math.log(x) + c4 * x + c5 / c1 * Psi
             - c6 / (2 * c1) * cs2 + c8)
        u_xi = (c5 / c1) * s2 * Jp + (c6 / (c1 * xi)) * s2 * Jp
        v_xi = (c5 / c1) * xi * s2 * Jp + (c6 / c1) * s2 * Jp
        return _jet(sigma, J, u, v,
                    sgx, thx, u_xi * xix, v_xi * xix + c5 / x + c4,
                    sgy, thy, u_xi * xiy + c6 / y - c4, v_xi * xiy)

    return Solution("SIM_C1NZ_ADD_A", MappingProxyType(p),
                    _c1nz_domain(profile), jet_fn, profile=profile)


def _build_c1nz_add_b(params) -> Solution:
    p = _c1nz_params("SIM_C1NZ_ADD_B", params, [
        ("c4", "float", 1.0), ("c5", "float", 0.0), ("c6", "float", 0.0)])
    c1, c3, c5, c6 = p["c1"], p["c3"], p["c5"], p["c6"]
    A = p["c4"] * (c1 + 1.0)
    profile = SimilarityProfile(c1, p["c2"])

    def jet_fn(x, y):
        (xi, J, Jp, s2, cs2, xix, xiy,
         sigma, sgx, sgy, thx, thy) = _sim_c1nz_parts(profile, c1, c3, x, y)
        Phi = quad_Phi(1.0, xi, profile, epsabs=_QEPS, limit=_QLIMIT)
        u = A * math.log(y) + (A / c1) * Phi + c5
        v = -(A / (2 * c1)) * cs2 + c6
        u_xi = (A / (c1 * xi)) * s2 * Jp
        v_xi = (A / c1) * s2 * Jp
        return _jet(sigma, J, u, v,
                    sgx, thx, u_xi * xix, v_xi * xix,
                    sgy, thy, u_xi * xiy + A / y, v_xi * xiy)

    return Solution("SIM_C1NZ_ADD_B", MappingProxyType(p),
                    _c1nz_domain(profile), jet_fn, profile=profile)


def _build_c1nz_mul_a(params) -> Solution:
    p = _c1nz_params("SIM_C1NZ_MUL_A", params, [
        ("c4", "float", 1.0), ("c5", "float", 0.25), ("c6", "float", 0.0),
        ("c7", "float", 0.0)])
    c1, c3 = p["c1"], p["c3"]
    c4, c5, c6, c7 = (p[k] for k in ("c4", "c5", "c6", "c7"))
    profile = SimilarityProfile(c1, p["c2"])

    def jet_fn(x, y):
        (xi, J, Jp, s2, cs2, xix, xiy,
         sigma, sgx, sgy, thx, thy) = _sim_c1nz_parts(profile, c1, c3, x, y)
        Phi = quad_Phi(1.0, xi, profile, epsabs=_QEPS, limit=_QLIMIT)
        u = 2 * c4 * Phi + c5 * y + 2 * c1 * c4 * math.log(y) + c6
        v = -c5 * x - c4 * cs2 + c7
        u_xi = 2 * c4 * s2 * Jp / xi
        v_xi = 2 * c4 * s2 * Jp
        return _jet(sigma, J, u, v,
                    sgx, thx, u_xi * xix, v_xi * xix - c5,
                    sgy, thy, u_xi * xiy + c5 + 2 * c1 * c4 / y, v_xi * xiy)

    return Solution("SIM_C1NZ_MUL_A", MappingProxyType(p),
                    _c1nz_domain(profile), jet_fn, profile=profile)


def _build_c1nz_mul_b(params) -> Solution:
    p = _c1nz_params("SIM_C1NZ_MUL_B", params, [
        ("c4", "float", 1.0), ("c5", "float", 0.0), ("c6", "float", 0.0)])
    c1, c3, c4, c5, c6 = (p[k] for k in ("c1", "c3", "c4", "c5", "c6"))
    profile = SimilarityProfile(c1, p["c2"])

    def jet_fn(x, y):
        (xi, J, Jp, s2, cs2, xix, xiy,
         sigma, sgx, sgy, thx, thy) = _sim_c1nz_parts(profile, c1, c3, x, y)
        Phi = quad_Phi(1.0, xi, profile, epsabs=_QEPS, limit=_QLIMIT)
        u = -c4 * math.log(y) - (c4 / c1) * Phi + c5
        v = (c4 / (2 * c1)) * cs2 + c6
        u_xi = -(c4 / (c1 * xi)) * s2 * Jp
        v_xi = -(c4 / c1) * s2 * Jp
        return _jet(sigma, J, u, v,
                    sgx, thx, u_xi * xix, v_xi * xix,
                    sgy, thy, u_xi * xiy - c4 / y, v_xi * xiy)

    return Solution("SIM_C1NZ_MUL_B", MappingProxyType(p),
                    _c1nz_domain(profile), jet_fn, profile=profile)


_BUILDERS = {
    "RIGID": _build_rigid,
    "B1_IMPLICIT": _build_b1,
    "K_PIS": _build_k_pis,
    "SIM_C1Z_ADD_A": _build_c1z_add_a,
    "SIM_C1Z_ADD_B": _build_c1z_add_b,
    "SIM_C1Z_MUL_A": _build_c1z_mul_a,
    "SIM_C1Z_MUL_B": _build_c1z_mul_b,
    "SIM_C1Z_MUL_C": _build_c1z_mul_c,
    "SIM_C1NZ_ADD_A": _build_c1nz_add_a,
    "SIM_C1NZ_ADD_B": _build_c1nz_add_b,
    "SIM_C1NZ_MUL_A": _build_c1nz_mul_a,
    "SIM_C1NZ_MUL_B": _build_c1nz_mul_b,
}


def make_solution(family: str, params: Mapping | None = None) -> Solution:
    """Build a family member; omitted parameters take family defaults."""
    key = str(family).upper()
    if key not in _BUILDERS:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    return _BUILDERS[key](params)


def family_parameters(family: str) -> dict:
    """Default parameter mapping for a family (callables by name)."""
    sol = make_solution(family, {})
    out = {}
    for k, v in sol.params.items():
        out[k] = v.name if isinstance(v, SmoothFn) else v
    return out
