"""Registry of smooth one-variable functions with two exact derivatives.

Several solution families take arbitrary profile functions (named T, F,
H, K, P or Q) as parameters.  Each registry entry bundles the value with
its first and second derivatives so the families can ship exact jets
instead of finite differences.  Entries are constructible from compact
text such as ``cn_bump(12.566,0.5)``, which is the form the command line
and config files use.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

from .elliptic import jacobi_cn_sn_dn


@dataclass(frozen=True)
class SmoothFn:
    """A scalar function together with analytic d/dt and d2/dt2."""

    name: str
    value: Callable[[float], float]
    d1: Callable[[float], float]
    d2: Callable[[float], float]

    def __call__(self, t: float) -> float:
        return self.value(t)

    def is_affine(self, probes=(-1.7, 0.3, 2.4)) -> bool:
        """True when the second derivative vanishes at the probe points;
        lets domain predicates drop singular sets that an affine profile
        makes removable."""
        return all(self.d2(t) == 0.0 for t in probes)


def identity() -> SmoothFn:
    return SmoothFn("identity", lambda t: t, lambda t: 1.0, lambda t: 0.0)


def arcsin_half() -> SmoothFn:
    """T(s) = arcsin(s) / 2.

    Outside |s| <= 1 the value is nan rather than an exception so that
    implicit solvers can reject a trial step and backtrack.
    """

    def val(s: float) -> float:
        if abs(s) > 1.0:
            return math.nan
        return 0.5 * math.asin(s)

    def d1(s: float) -> float:
        r = 1.0 - s * s
        if r <= 0.0:
            return math.nan
        return 0.5 / math.sqrt(r)

    def d2(s: float) -> float:
        r = 1.0 - s * s
        if r <= 0.0:
            return math.nan
        return 0.5 * s / r ** 1.5

    return SmoothFn("arcsin_half", val, d1, d2)


def cn_bump(b: float = 4.0 * math.pi, rho: float = 0.5) -> SmoothFn:
    """F(t) = cn(g(t), rho) with g(t) = 1 / (1 + cosh(arctan(b t))).

    A single smooth bump: g tends to the same constant as t -> +-inf, so
    F flattens away from the origin; larger b narrows the bump.
    """
    m = rho * rho

    def parts(t: float) -> tuple[float, float, float]:
        a = math.atan(b * t)
        q = 1.0 + b * b * t * t
        ap = b / q
        app = -2.0 * b ** 3 * t / (q * q)
        h = 1.0 + math.cosh(a)
        g = 1.0 / h
        gp = -math.sinh(a) * ap / h ** 2
        gpp = (-(math.cosh(a) * ap * ap + math.sinh(a) * app) / h ** 2
               + 2.0 * math.sinh(a) ** 2 * ap * ap / h ** 3)
        return g, gp, gpp

    def val(t: float) -> float:
        return jacobi_cn_sn_dn(parts(t)[0], rho)[0]

    def d1(t: float) -> float:
        g, gp, _ = parts(t)
        _, sn, dn = jacobi_cn_sn_dn(g, rho)
        return -sn * dn * gp

    def d2(t: float) -> float:
        g, gp, gpp = parts(t)
        cn, sn, dn = jacobi_cn_sn_dn(g, rho)
        cn1 = -sn * dn
        cn2 = -cn * dn * dn + m * sn * sn * cn
        return cn2 * gp * gp + cn1 * gpp

    return SmoothFn(f"cn_bump({_fmt(b)},{_fmt(rho)})", val, d1, d2)


def exp_decay(a: float = 1.0, s: float = 1.0) -> SmoothFn:
    """H(t) = a * exp(-s * t)."""
    return SmoothFn(f"exp_decay({_fmt(a)},{_fmt(s)})",
                    lambda t: a * math.exp(-s * t),
                    lambda t: -s * a * math.exp(-s * t),
                    lambda t: s * s * a * math.exp(-s * t))


def poly(*coeffs: float) -> SmoothFn:
    """Polynomial with ascending coefficients: poly(c0, c1, ...) =
    c0 + c1 t + c2 t^2 + ..."""
    c0 = tuple(float(c) for c in coeffs) or (0.0,)
    c1 = tuple(k * c for k, c in enumerate(c0))[1:] or (0.0,)
    c2 = tuple(k * c for k, c in enumerate(c1))[1:] or (0.0,)

    def horner(cs: tuple[float, ...]) -> Callable[[float], float]:
        def ev(t: float) -> float:
            r = 0.0
            for c in reversed(cs):
                r = r * t + c
            return r
        return ev

    name = "poly(" + ",".join(_fmt(c) for c in c0) + ")"
    return SmoothFn(name, horner(c0), horner(c1), horner(c2))


def _fmt(v: float) -> str:
    return format(v, "g")


BUILTIN_CALLABLES: dict[str, Callable[..., SmoothFn]] = {
    "identity": identity,
    "arcsin_half": arcsin_half,
    "cn_bump": cn_bump,
    "exp_decay": exp_decay,
    "poly": poly,
}

_CALL_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\((.*)\))?\s*$")


def resolve_callable(text: str) -> SmoothFn:
    """Build a registered SmoothFn from ``name`` or ``name(arg, ...)``."""
    m = _CALL_RE.match(text)
    if m is None:
        raise ValueError(f"unparseable callable spec {text!r}")
    name, argtext = m.group(1), m.group(2)
    factory = BUILTIN_CALLABLES.get(name)
    if factory is None:
        known = ", ".join(sorted(BUILTIN_CALLABLES))
        raise ValueError(f"unknown callable {name!r} (known: {known})")
    args: list[float] = []
    if argtext is not None and argtext.strip():
        for tok in argtext.split(","):
            try:
                args.append(float(tok))
            except ValueError as exc:
                raise ValueError(
                    f"bad numeric argument {tok.strip()!r} in {text!r}") from exc
    return factory(*args)
