"""Curve tracing in plastic-flow fields.

All three tracers integrate a unit tangent field with classical RK4, so
a step advances exactly one arc length ds; the slope forms dy/dx = v/u,
(V0 - v)/(U0 - u) and tan(theta) / -cot(theta) are recovered as the
direction of the tangent, which keeps vertical tangents and u = 0
crossings regular.  A trace stops at the domain boundary, at stagnation
of its driving vector, or after n_steps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from ..fieldcore import DomainError, FeedVelocity, NearStagnationError
from ..solutions import Solution

KINDS = ("flowline", "limit", "sliplineA", "sliplineB", "contour", "vector")

_STAG_SPEED = 1e-8


class _Stagnant(Exception):
    """Internal stop signal: the driving vector fell below _STAG_SPEED."""


@dataclass(frozen=True, eq=False)
class Polyline:
    """An ordered open chain of points with a role tag and provenance."""

    points: np.ndarray
    kind: str
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
            raise ValueError("a polyline needs at least two (x, y) points")
        if self.kind not in KINDS:
            raise ValueError(f"unknown polyline kind {self.kind!r}")
        seg = np.hypot(*np.diff(pts, axis=0).T)
        if np.any(seg == 0.0):
            raise ValueError("consecutive polyline points must be distinct")
        ds = self.meta.get("ds") if self.meta else None
        if ds and float(np.max(seg)) > 2.0 * float(ds):
            raise ValueError("point spacing exceeds twice the nominal step")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "meta", MappingProxyType(dict(self.meta)))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def start(self) -> tuple[float, float]:
        return float(self.points[0, 0]), float(self.points[0, 1])

    @property
    def end(self) -> tuple[float, float]:
        return float(self.points[-1, 0]), float(self.points[-1, 1])

    def arclength(self) -> float:
        return float(np.sum(np.hypot(*np.diff(self.points, axis=0).T)))

    def reversed(self) -> "Polyline":
        return Polyline(self.points[::-1].copy(), self.kind, dict(self.meta))


def _march(unit_rhs, start, ds, n_steps):
    """RK4 arc-length march; the committed point is always probed first,
    so a trace never ends on a point outside the domain."""
    x, y = float(start[0]), float(start[1])
    k1 = unit_rhs(x, y)
    pts = [(x, y)]
    for _ in range(int(n_steps)):
        try:
            k2 = unit_rhs(x + 0.5 * ds * k1[0], y + 0.5 * ds * k1[1])
            k3 = unit_rhs(x + 0.5 * ds * k2[0], y + 0.5 * ds * k2[1])
            k4 = unit_rhs(x + ds * k3[0], y + ds * k3[1])
            nx = x + ds * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]) / 6.0
            ny = y + ds * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]) / 6.0
            nk = unit_rhs(nx, ny)
        except (DomainError, _Stagnant):
            break
        x, y, k1 = nx, ny, nk
        pts.append((x, y))
    return np.array(pts)


def _flow_rhs(s: Solution, direction: float):
    sgn = 1.0 if direction >= 0 else -1.0

    def rhs(x, y):
        st = s.state(x, y)
        sp = math.hypot(st.u, st.v)
        if sp < _STAG_SPEED:
            raise _Stagnant
        return sgn * st.u / sp, sgn * st.v / sp
    return rhs


def _limit_rhs(s: Solution, feed: FeedVelocity, direction: float):
    sgn = 1.0 if direction >= 0 else -1.0

    def rhs(x, y):
        st = s.state(x, y)
        ru, rv = feed.U0 - st.u, feed.V0 - st.v
        sp = math.hypot(ru, rv)
        if sp < _STAG_SPEED:
            raise _Stagnant
        return sgn * ru / sp, sgn * rv / sp
    return rhs


def _slip_rhs(s: Solution, branch: str, direction: float):
    # theta is a mod-pi direction field; keep the tangent sign continuous
    # along the march so pi jumps in theta do not fold the curve back
    sgn = 1.0 if direction >= 0 else -1.0
    prev: list = [None]

    def rhs(x, y):
        th = s.state(x, y).theta
        if branch == "A":
            t = (math.cos(th), math.sin(th))
        else:
            t = (-math.sin(th), math.cos(th))
        if prev[0] is None:
            t = (sgn * t[0], sgn * t[1])
        elif t[0] * prev[0][0] + t[1] * prev[0][1] < 0.0:
            t = (-t[0], -t[1])
        prev[0] = t
        return t
    return rhs


def _run(rhs, start, ds, n_steps, kind, meta, stag_msg):
    try:
        pts = _march(rhs, start, ds, n_steps)
    except _Stagnant:
        raise NearStagnationError(stag_msg) from None
    if len(pts) < 2:
        raise NearStagnationError(stag_msg)
    return Polyline(pts, kind, meta)


def trace_flow_line(s: Solution, start, ds: float = 1e-3,
                    n_steps: int = 100_000, direction: float = 1.0,
                    kind: str = "flowline") -> Polyline:
    """March along the velocity field (u, v) from `start`."""
    meta = {"start": (float(start[0]), float(start[1])), "ds": float(ds),
            "family": s.family, "parametrization": "arc-length",
            "direction": 1.0 if direction >= 0 else -1.0}
    return _run(_flow_rhs(s, direction), start, ds, n_steps, kind, meta,
                f"velocity stagnates at the start point {tuple(start)}")


def trace_plasticity_limit(s: Solution, feed: FeedVelocity, start,
                           ds: float = 1e-3, n_steps: int = 100_000,
                           direction: float = 1.0) -> Polyline:
    """March along the relative velocity (U0 - u, V0 - v) from `start`."""
    meta = {"start": (float(start[0]), float(start[1])), "ds": float(ds),
            "family": s.family, "parametrization": "arc-length",
            "feed": (feed.U0, feed.V0),
            "direction": 1.0 if direction >= 0 else -1.0}
    return _run(_limit_rhs(s, feed, direction), start, ds, n_steps,
                "limit", meta,
                f"feed equals the material velocity at {tuple(start)}")


def trace_slip_line(s: Solution, start, branch: str = "A",
                    ds: float = 1e-3, n_steps: int = 100_000,
                    direction: float = 1.0) -> Polyline:
    """March along a characteristic direction: branch A has slope
    tan(theta), branch B the orthogonal -cot(theta)."""
    if branch not in ("A", "B"):
        raise ValueError("slip-line branch must be 'A' or 'B'")
    meta = {"start": (float(start[0]), float(start[1])), "ds": float(ds),
            "family": s.family, "parametrization": "arc-length",
            "branch": branch, "direction": 1.0 if direction >= 0 else -1.0}
    return _run(_slip_rhs(s, branch, direction), start, ds, n_steps,
                f"slipline{branch}", meta, "empty slip line")


def _tangency(poly: Polyline, vector_at) -> float:
    pts = poly.points
    worst = 0.0
    for i in range(1, len(pts) - 1):
        tx, ty = pts[i + 1] - pts[i - 1]
        wx, wy = vector_at(pts[i, 0], pts[i, 1])
        cross = abs(tx * wy - ty * wx)
        dot = abs(tx * wx + ty * wy)
        worst = max(worst, math.atan2(cross, dot))
    return worst


def flowline_tangency_error(poly: Polyline, s: Solution) -> float:
    """Largest angle (rad) between interior secants and the velocity."""
    def vec(x, y):
        st = s.state(x, y)
        return st.u, st.v
    return _tangency(poly, vec)


def limit_tangency_error(poly: Polyline, s: Solution,
                         feed: FeedVelocity) -> float:
    """Largest angle (rad) between interior secants and (U0 - u, V0 - v)."""
    def vec(x, y):
        st = s.state(x, y)
        return feed.U0 - st.u, feed.V0 - st.v
    return _tangency(poly, vec)
