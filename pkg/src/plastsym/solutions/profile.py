"""Similarity profile J(xi) for the slanted-ray symmetry variable xi = y/x.

An angle field of the form theta = J(y/x) solves the pressure pair of the
governing system exactly when J obeys the first integral

    ((xi^2 - 1) sin 2J + 2 xi cos 2J) J'(xi) = c1.

For c1 != 0 the integral curves satisfy a closed implicit relation: with
w = c1 tan(arctan xi - J) - 1,

    w / mu = tan(mu (c2 - J) / c1),   mu = sqrt(c1^2 - 1),  c1^2 > 1,
    w / mu = tanh(mu (J - c2) / c1),  mu = sqrt(1 - c1^2),  c1^2 < 1.

(A quotient form of this relation that is sometimes quoted instead fails
the first-integral drift test; ERRATA.md records the discrepancy.)

A profile holds a dense monotone cache of (xi, J) samples built by
predictor-corrector continuation from an anchor root at xi = 1, stopping
short of folds where the first-integral denominator vanishes.  Point
queries interpolate a guess from the cache and polish it by Newton on
the relation, so every returned J satisfies the relation to roundoff.
For |c1| << 1 the tanh branch saturates and the relation degenerates; in
that regime the cache is seeded from the closed-form envelope root
J = arctan(xi) - arctan((1 + mu)/c1) instead of continuation.
"""
from __future__ import annotations

import math
import threading

import numpy as np
from scipy.integrate import quad


class BranchError(RuntimeError):
    """Requested xi is outside the cached branch, or the Newton polish
    lost the branch; callers may extend() the cache by continuation."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature could not meet the requested tolerance.

    Carries the best value and the achieved error estimate.
    """

    def __init__(self, message: str, value: float, estimate: float):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


def first_integral_denominator(xi: float, J: float) -> float:
    """(xi^2 - 1) sin 2J + 2 xi cos 2J; zero on fold (envelope) curves."""
    return (xi * xi - 1.0) * math.sin(2.0 * J) + 2.0 * xi * math.cos(2.0 * J)


def relation_residual(J: float, xi: float, c1: float, c2: float) -> float:
    """Residual of the implicit relation defining J(xi)."""
    w = c1 * math.tan(math.atan(xi) - J) - 1.0
    if c1 * c1 > 1.0:
        mu = math.sqrt(c1 * c1 - 1.0)
        return w / mu - math.tan(mu * (c2 - J) / c1)
    mu = math.sqrt(1.0 - c1 * c1)
    return w / mu - math.tanh(mu * (J - c2) / c1)


def conserved_phase(J: float, xi: float, c1: float) -> float:
    """Antiderivative form of the relation; constant along integral curves
    (modulo pi*c1/mu wraps on the tan branch), which makes it the robust
    drift test near poles of the tan form."""
    w = c1 * math.tan(math.atan(xi) - J) - 1.0
    if c1 * c1 > 1.0:
        mu = math.sqrt(c1 * c1 - 1.0)
        return J + (c1 / mu) * math.atan(w / mu)
    mu = math.sqrt(1.0 - c1 * c1)
    return J - (c1 / (2.0 * mu)) * math.log(abs((mu + w) / (mu - w)))


class SimilarityProfile:
    """Cached branch of J(xi) for fixed constants (c1, c2), c1 != 0.

    The cache is built eagerly over `span` (trimmed at folds); `extend`
    appends to it under a lock, so readers always see a consistent
    snapshot and evaluation is pure.
    """

    _SCAN = np.linspace(-1.55, 1.55, 4001)
    _FOLD_SLOPE = 50.0  # |J'| above this means a fold is too close

    def __init__(self, c1: float, c2: float = 0.0,
                 span: tuple[float, float] = (0.25, 4.0),
                 anchor_xi: float = 1.0, anchor_J: float | None = None,
                 step: float = 2e-3):
        if c1 == 0.0 or abs(abs(c1) - 1.0) < 1e-12:
            raise ValueError("similarity profile needs c1 != 0 and |c1| != 1")
        if not span[0] < anchor_xi < span[1]:
            raise ValueError("anchor_xi must lie inside span")
        self.c1 = float(c1)
        self.c2 = float(c2)
        self._step = float(step)
        self._lock = threading.Lock()

        anchor = self._anchor_root(anchor_xi, anchor_J)
        mu = math.sqrt(max(1.0 - c1 * c1, 0.0))
        self._saturated = (c1 * c1 < 1.0
                           and abs(mu * (anchor - self.c2) / c1) > 20.0)
        nodes = self._continue_branch(anchor_xi, anchor, span)
        if len(nodes) < 8:
            raise BranchError(
                f"branch through (xi={anchor_xi}, J={anchor:.6f}) folds "
                "immediately; no usable cache")
        xis, js = zip(*nodes)
        steps = np.diff(js)
        if steps.size and not (np.all(steps > 0) or np.all(steps < 0)):
            raise BranchError("cached branch is not monotone; fold crossed")
        self._xis = np.asarray(xis)
        self._js = np.asarray(js)

    # -- construction ---------------------------------------------------

    def _relation(self, J: float, xi: float) -> float:
        return relation_residual(J, xi, self.c1, self.c2)

    def _anchor_root(self, xi0: float, hint: float | None) -> float:
        vals = np.array([self._relation(J, xi0) for J in self._SCAN])
        roots = []
        for i in range(len(self._SCAN) - 1):
            a, b = vals[i], vals[i + 1]
            if not (np.isfinite(a) and np.isfinite(b)) or a * b >= 0:
                continue
            lo, hi = self._SCAN[i], self._SCAN[i + 1]
            for _ in range(60):  # plain bisection; the scan grid is dense
                mid = 0.5 * (lo + hi)
                fm = self._relation(mid, xi0)
                if not math.isfinite(fm):
                    break
                if vals[i] * fm <= 0:
                    hi = mid
                else:
                    lo = mid
            r = 0.5 * (lo + hi)
            # reject sign flips across tan poles and fold points
            if (abs(self._relation(r, xi0)) < 1e-9
                    and abs(first_integral_denominator(xi0, r)) > 1e-9):
                roots.append(r)
        if not roots:
            raise BranchError(
                f"no branch anchor at xi={xi0} for c1={self.c1}, c2={self.c2}")
        if hint is None:
            return roots[0]
        return min(roots, key=lambda r: abs(r - hint))

    def _envelope_guess(self, xi: float) -> float:
        mu = math.sqrt(1.0 - self.c1 * self.c1)
        return math.atan(xi) - math.atan((1.0 + mu) / self.c1)

    def _polish(self, xi: float, guess: float,
                max_iter: int = 60) -> tuple[float, float, float]:
        """Newton on the relation; returns (J, residual, last step)."""
        J = guess
        f = self._relation(J, xi)
        step = math.inf
        for _ in range(max_iter):
            if not math.isfinite(f):
                break
            df = (self._relation(J + 1e-8, xi) - f) / 1e-8
            if df == 0.0 or not math.isfinite(df):
                break
            step = f / df
            J -= step
            f = self._relation(J, xi)
            if abs(f) < 1e-13 or abs(step) < 1e-15:
                break
        return J, f, step

    def _accepted(self, f: float, step: float) -> bool:
        # saturated tanh branches bottom out near 1e-11 in the relation;
        # step convergence then certifies the root at float granularity
        return math.isfinite(f) and (abs(f) <= 1e-12 or abs(step) < 1e-14)

    def _continue_branch(self, xi0: float, J0: float,
                         span: tuple[float, float]) -> list[tuple[float, float]]:
        table = {xi0: J0}
        for stop, sgn in ((span[1], 1.0), (span[0], -1.0)):
            xi, J = xi0, J0
            h = sgn * self._step
            while (sgn > 0 and xi + h <= stop) or (sgn < 0 and xi + h >= stop):
                xi_n = xi + h
                if self._saturated:
                    pred = self._envelope_guess(xi_n)
                else:
                    d = first_integral_denominator(xi, J)
                    if d == 0.0 or abs(self.c1 / d) > self._FOLD_SLOPE:
                        break
                    pred = J + h * self.c1 / d
                J_n, f, last = self._polish(xi_n, pred)
                if not self._accepted(f, last) or abs(J_n - pred) > 0.2:
                    break
                xi, J = xi_n, J_n
                table[xi] = J
        return sorted(table.items())

    # -- queries ----------------------------------------------------------

    @property
    def span(self) -> tuple[float, float]:
        return float(self._xis[0]), float(self._xis[-1])

    @property
    def cache(self) -> tuple[np.ndarray, np.ndarray]:
        return self._xis.copy(), self._js.copy()

    def relation_residual_at(self, xi: float, J: float) -> float:
        return self._relation(J, xi)

    def J(self, xi: float) -> float:
        xis, js = self._xis, self._js
        if not xis[0] <= xi <= xis[-1]:
            raise BranchError(
                f"xi={xi:g} outside the cached branch [{xis[0]:g}, "
                f"{xis[-1]:g}]; extend() the profile to continue")
        guess = float(np.interp(xi, xis, js))
        J, f, step = self._polish(xi, guess)
        if not self._accepted(f, step) or abs(J - guess) > 0.1:
            raise BranchError(f"Newton polish lost the branch at xi={xi:g}")
        return J

    def J_prime(self, xi: float) -> float:
        """dJ/dxi from the first integral; exact given the root J(xi)."""
        return self.c1 / first_integral_denominator(xi, self.J(xi))

    def J_second(self, xi: float) -> float:
        J = self.J(xi)
        den = first_integral_denominator(xi, J)
        jp = self.c1 / den
        s2, c2v = math.sin(2.0 * J), math.cos(2.0 * J)
        den_xi = 2.0 * xi * s2 + 2.0 * c2v
        den_J = 2.0 * (xi * xi - 1.0) * c2v - 4.0 * xi * s2
        return -(den_xi + den_J * jp) * jp / den

    def phase_drift(self, xi: float) -> float:
        """Distance of the conserved phase at (xi, J(xi)) from its anchor
        value; the first-integral constancy measure used by the checks."""
        q = conserved_phase(self.J(xi), xi, self.c1)
        q0 = conserved_phase(self._js[0], float(self._xis[0]), self.c1)
        d = abs(q - q0)
        if self.c1 * self.c1 > 1.0:
            wrap = math.pi * self.c1 / math.sqrt(self.c1 * self.c1 - 1.0)
            d = d % abs(wrap)
            d = min(d, abs(wrap) - d)
        return d

    def extend(self, xi_lo: float | None = None,
               xi_hi: float | None = None) -> tuple[float, float]:
        """Continue the cache outward as far as folds allow; returns the
        achieved span."""
        with self._lock:
            lo = self.span[0] if xi_lo is None else min(xi_lo, self.span[0])
            hi = self.span[1] if xi_hi is None else max(xi_hi, self.span[1])
            nodes = dict(zip(self._xis.tolist(), self._js.tolist()))
            for stop, sgn, edge in ((hi, 1.0, -1), (lo, -1.0, 0)):
                xi = float(self._xis[edge])
                J = float(self._js[edge])
                h = sgn * self._step
                while (sgn > 0 and xi + h <= stop) or (sgn < 0 and xi + h >= stop):
                    xi_n = xi + h
                    if self._saturated:
                        pred = self._envelope_guess(xi_n)
                    else:
                        d = first_integral_denominator(xi, J)
                        if d == 0.0 or abs(self.c1 / d) > self._FOLD_SLOPE:
                            break
                        pred = J + h * self.c1 / d
                    J_n, f, last = self._polish(xi_n, pred)
                    if not self._accepted(f, last) or abs(J_n - pred) > 0.2:
                        break
                    xi, J = xi_n, J_n
                    nodes[xi] = J
            items = sorted(nodes.items())
            self._xis = np.array([p[0] for p in items])
            self._js = np.array([p[1] for p in items])
        return self.span


def similarity_J(xi: float, profile: SimilarityProfile) -> float:
    """Root J(xi) of the profile's implicit relation on the cached branch."""
    return profile.J(xi)


def adaptive_quadrature(fn, a: float, b: float,
                        epsabs: float = 1e-10, limit: int = 60) -> float:
    """Adaptive Gauss-Kronrod integral of fn over [a, b] to absolute
    tolerance epsabs; raises QuadratureError when the estimate misses it."""
    if a == b:
        return 0.0
    out = quad(fn, a, b, epsabs=epsabs, epsrel=1e-13, limit=limit,
               full_output=True)
    value, estimate = float(out[0]), float(out[1])
    if len(out) > 3 or estimate > max(epsabs, abs(value) * 1e-12):
        raise QuadratureError(
            f"quadrature over [{a:g}, {b:g}] achieved only {estimate:.3e} "
            f"(requested {epsabs:.0e})", value, estimate)
    return value


def _check_phi_interval(xi0: float, xi1: float) -> None:
    if min(xi0, xi1) <= 0.0 <= max(xi0, xi1):
        raise ValueError("integration interval must exclude xi = 0")


def quad_Phi(xi0: float, xi1: float, profile: SimilarityProfile,
             epsabs: float = 1e-10, limit: int = 60) -> float:
    """Integral of sin(2 J(t)) J'(t) / t between xi0 and xi1."""
    _check_phi_interval(xi0, xi1)
    return adaptive_quadrature(
        lambda t: math.sin(2.0 * profile.J(t)) * profile.J_prime(t) / t,
        xi0, xi1, epsabs, limit)


def quad_Psi(xi0: float, xi1: float, profile: SimilarityProfile,
             epsabs: float = 1e-10, limit: int = 60) -> float:
    """Integral of t sin(2 J(t)) J'(t) between xi0 and xi1."""
    return adaptive_quadrature(
        lambda t: t * math.sin(2.0 * profile.J(t)) * profile.J_prime(t),
        xi0, xi1, epsabs, limit)


def quad_cos2J(xi0: float, xi1: float, profile: SimilarityProfile,
               epsabs: float = 1e-10, limit: int = 60) -> float:
    """Integral of cos(2 J(t)) between xi0 and xi1; the quadrature term
    of the similarity pressure."""
    return adaptive_quadrature(lambda t: math.cos(2.0 * profile.J(t)),
                               xi0, xi1, epsabs, limit)
