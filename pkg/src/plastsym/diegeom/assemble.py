"""Extrusion-die assembly: two contour flow lines closed off by the
entry and exit plasticity limits.

The die walls are flow lines, so material slides along them; the limit
curves bound the plastic region at the mouth and at the output.
Assembly traces every curve from its seed in both directions, cuts each
limit at its first transversal crossing with each contour, and cuts the
contours between their two limit crossings.  The result is oriented
canonically (contours run entry to exit, limits inner to outer), which
makes the assembled coordinates independent of trace direction.

A limit seed may itself lie on a contour (one figure of the source
reuses a contour seed as a limit seed); that contact then counts as the
limit's endpoint on that contour and the trace only has to reach the
other one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from ..fieldcore import FeedVelocity
from ..solutions import Solution
from .trace import Polyline, _flow_rhs, _limit_rhs, _march, _Stagnant

SNAP = 1e-3  # one order below the quoted two-decimal seed precision
_MIN_SIN = 1e-3  # tangential grazes below this do not count as crossings


class AssemblyError(RuntimeError):
    """A limit curve failed to reach both contours; reports the gap."""


@dataclass(frozen=True)
class DiePlan:
    """Seeds and velocities that pin one die configuration.

    `contour_steps` optionally caps each wall trace separately; a wall
    that closes on itself must stay below one revolution per direction
    so that positions along it remain unambiguous.
    """

    contour_seeds: tuple[tuple[float, float], tuple[float, float]]
    feed: FeedVelocity
    extract: FeedVelocity
    entry_seed: tuple[float, float]
    exit_seed: tuple[float, float]
    ds: float = 1e-3
    n_steps: int = 100_000
    contour_steps: tuple[int, int] | None = None


@dataclass(frozen=True, eq=False)
class DieGeometry:
    """Assembled die: wall contours plus entry/exit plasticity limits."""

    inner: Polyline
    outer: Polyline
    entry_limit: Polyline
    exit_limit: Polyline
    feed: FeedVelocity
    extract: FeedVelocity

    def __post_init__(self):
        walls = np.vstack([self.inner.points, self.outer.points])
        tree = cKDTree(walls)
        for lim in (self.entry_limit, self.exit_limit):
            for end in (lim.points[0], lim.points[-1]):
                d, _ = tree.query(end)
                if d > SNAP:
                    raise AssemblyError(
                        f"limit endpoint {tuple(end)} misses the contours "
                        f"by {d:.3e} (snap tolerance {SNAP})")

    def polylines(self) -> list[Polyline]:
        return [self.inner, self.outer, self.entry_limit, self.exit_limit]


class _Contact(NamedTuple):
    chain_idx: int      # index on the probing chain just before the cut
    point: np.ndarray   # crossing point
    param: float        # position along the contour, segment + fraction


def _dedupe(pts) -> np.ndarray:
    out = [np.asarray(pts[0], float)]
    for p in pts[1:]:
        if math.hypot(*(np.asarray(p) - out[-1])) > 1e-12:
            out.append(np.asarray(p, float))
    return np.array(out)


def _two_sided(rhs_factory, seed, ds, n_steps):
    """March from the seed both ways and stitch one chain through it."""
    try:
        fwd = _march(rhs_factory(+1.0), seed, ds, n_steps)
    except _Stagnant:
        fwd = np.array([[seed[0], seed[1]]], dtype=float)
    try:
        bwd = _march(rhs_factory(-1.0), seed, ds, n_steps)
    except _Stagnant:
        bwd = np.array([[seed[0], seed[1]]], dtype=float)
    pts = np.vstack([bwd[::-1], fwd[1:]])
    if len(pts) < 2:
        raise AssemblyError(f"trace from {tuple(seed)} could not move")
    return pts, len(bwd) - 1  # seed position within the chain


def _seg_cross(p0, p1, q0, q1):
    """Crossing of segments p and q: (point, t_on_q, sin_angle) or None.

    Parameters may spill half a step outside [0, 1] because both chains
    are discretized at finite ds.
    """
    dp, dq = p1 - p0, q1 - q0
    den = dp[0] * dq[1] - dp[1] * dq[0]
    norm = math.hypot(*dp) * math.hypot(*dq)
    if norm == 0.0 or abs(den) / norm < _MIN_SIN:
        return None
    rel = q0 - p0
    t_p = (rel[0] * dq[1] - rel[1] * dq[0]) / den
    t_q = (rel[0] * dp[1] - rel[1] * dp[0]) / den
    if not (-0.5 <= t_p <= 1.5 and -0.5 <= t_q <= 1.5):
        return None
    return p0 + t_p * dp, t_q, abs(den) / norm


def _first_contact(chain, contour, tree, ds, skip: float = 0.0,
                   crossings_only: bool = False):
    """First transversal crossing of `chain` with `contour`, walking the
    chain from its head; returns (contact | None, closest approach).

    With `crossings_only` a grazing pass (close approach that never
    cuts through) does not count; a limit that leaves its anchor wall
    at a shallow angle grazes it for a few steps without crossing.
    """
    d, j = tree.query(chain)
    start = int(math.ceil(skip / ds))
    gap = float(np.min(d[start:])) if start < len(d) else math.inf
    radius = max(SNAP, 1.6 * ds)
    for i in np.nonzero(d <= radius)[0]:
        if i < start:
            continue
        ci = max(0, int(i) - 1)
        p0, p1 = chain[ci], chain[min(ci + 1, len(chain) - 1)]
        jj0 = max(0, int(j[i]) - 3)
        for jj in range(jj0, min(len(contour) - 1, int(j[i]) + 3)):
            hit = _seg_cross(p0, p1, contour[jj], contour[jj + 1])
            if hit is not None:
                pt, t_q, _ = hit
                return _Contact(int(i), pt,
                                jj + min(max(t_q, 0.0), 1.0)), gap
        if not crossings_only and d[i] <= SNAP:
            # grazing pass: snap to the projection
            jj = min(int(j[i]), len(contour) - 2)
            q0, q1 = contour[jj], contour[jj + 1]
            dq = q1 - q0
            L2 = float(dq @ dq)
            t = 0.0 if L2 == 0.0 else float(
                np.clip((chain[i] - q0) @ dq / L2, 0.0, 1.0))
            return _Contact(int(i), q0 + t * dq, jj + t), gap
    return None, gap


def _project_seed(seed, contour, tree):
    p = np.asarray(seed, dtype=float)
    d, j = tree.query(p)
    if d > SNAP:
        return None
    jj = min(int(j), len(contour) - 2)
    q0, q1 = contour[jj], contour[jj + 1]
    dq = q1 - q0
    L2 = float(dq @ dq)
    t = 0.0 if L2 == 0.0 else float(np.clip((p - q0) @ dq / L2, 0.0, 1.0))
    return _Contact(0, q0 + t * dq, jj + t)


def _cut_chain(chain, end_idx, end_point):
    pts = list(chain[:end_idx + 1]) + [np.asarray(end_point, float)]
    return _dedupe(pts)


def _cut_contour(contour, c_from: _Contact, c_to: _Contact):
    """Sub-chain of a contour between two crossings, oriented from the
    first to the second."""
    s0, s1 = c_from.param, c_to.param
    if abs(s0 - s1) < 1e-12:
        raise AssemblyError(
            "entry and exit limits cut the contour at the same point")
    if s0 < s1:
        mid = contour[int(math.floor(s0)) + 1:int(math.floor(s1)) + 1]
    else:
        mid = contour[int(math.floor(s1)) + 1:int(math.floor(s0)) + 1][::-1]
    pts = _dedupe([np.asarray(c_from.point)] + list(mid)
                  + [np.asarray(c_to.point)])
    if len(pts) < 2:
        raise AssemblyError("contour cut collapsed to a point")
    return pts


def _limit_between(s, feed, seed, inner, outer, trees, plan):
    """Trace a plasticity limit from `seed`, trimmed to run from the
    inner contour to the outer one."""
    chain, seed_idx = _two_sided(
        lambda d: _limit_rhs(s, feed, d), seed, plan.ds, plan.n_steps)
    halves = (chain[seed_idx:], chain[seed_idx::-1])
    contours = {"inner": (inner, trees[0]), "outer": (outer, trees[1])}
    seed_on = {k: _project_seed(seed, c, t)
               for k, (c, t) in contours.items()}
    anchored = [k for k, v in seed_on.items() if v is not None]
    if len(anchored) == 2:
        raise AssemblyError(
            f"limit seed {tuple(seed)} touches both contours")

    contacts: dict[str, _Contact] = {}
    if anchored:
        anchor = anchored[0]
        other = "outer" if anchor == "inner" else "inner"
        chosen = None
        gap = math.inf
        for half in halves:
            firsts = {}
            for name, (cont, tree) in contours.items():
                c, g = _first_contact(half, cont, tree, plan.ds,
                                      skip=2.5 * plan.ds,
                                      crossings_only=(name == anchor))
                firsts[name] = c
                if name == other:
                    gap = min(gap, g)
            fo = firsts[other]
            if fo is None:
                continue
            fa = firsts[anchor]
            if fa is not None and fa.chain_idx < fo.chain_idx:
                continue  # re-crosses the anchor before reaching `other`
            if chosen is None or fo.chain_idx < chosen[1].chain_idx:
                chosen = (half, fo)
        if chosen is None:
            raise AssemblyError(
                f"limit from {tuple(seed)} never reaches the {other} "
                f"contour; closest approach {gap:.3e}")
        half, fo = chosen
        piece = _cut_chain(half, fo.chain_idx, fo.point)
        apt = np.asarray(seed_on[anchor].point)
        if math.hypot(*(piece[0] - apt)) > 1e-12:
            piece = np.vstack([[apt], piece])
        contacts = {anchor: seed_on[anchor], other: fo}
        pts = piece if anchor == "inner" else piece[::-1]
    else:
        firsts = []
        gaps = {"inner": math.inf, "outer": math.inf}
        for half in halves:
            best = None
            for name, (cont, tree) in contours.items():
                c, g = _first_contact(half, cont, tree, plan.ds)
                gaps[name] = min(gaps[name], g)
                if c is not None and (best is None
                                      or c.chain_idx < best[1].chain_idx):
                    best = (name, c)
            firsts.append(best)
        hit_names = {f[0] for f in firsts if f is not None}
        if len(hit_names) < 2:
            missing = [k for k in ("inner", "outer") if k not in hit_names]
            raise AssemblyError(
                f"limit from {tuple(seed)} never reaches the "
                f"{' and '.join(missing)} contour(s); closest approach "
                + ", ".join(f"{k}: {gaps[k]:.3e}" for k in missing))
        pieces = {}
        for half, f in zip(halves, firsts):
            name, c = f
            if name in contacts and contacts[name].chain_idx <= c.chain_idx:
                continue
            pieces[name] = _cut_chain(half, c.chain_idx, c.point)
            contacts[name] = c
        pts = np.vstack([pieces["inner"][::-1], pieces["outer"][1:]])

    poly = Polyline(_dedupe(pts), "limit",
                    {"start": (float(seed[0]), float(seed[1])),
                     "ds": plan.ds, "family": s.family,
                     "parametrization": "arc-length",
                     "feed": (feed.U0, feed.V0)})
    return poly, contacts["inner"], contacts["outer"]


def assemble_die(s: Solution, plan: DiePlan,
                 flip_trace: bool = False) -> DieGeometry:
    """Trace and trim the full die geometry for one plan.

    `flip_trace` reverses the raw contour chains before trimming; the
    assembled coordinates must not depend on it (self-check knob for
    the trace-direction invariance property).
    """
    raw = []
    for i, seed in enumerate(plan.contour_seeds):
        steps = plan.contour_steps[i] if plan.contour_steps else plan.n_steps
        pts, _ = _two_sided(lambda d: _flow_rhs(s, d), seed, plan.ds, steps)
        raw.append(pts[::-1] if flip_trace else pts)
    inner_pts, outer_pts = raw
    trees = (cKDTree(inner_pts), cKDTree(outer_pts))

    entry, e_in, e_out = _limit_between(
        s, plan.feed, plan.entry_seed, inner_pts, outer_pts, trees, plan)
    exit_, x_in, x_out = _limit_between(
        s, plan.extract, plan.exit_seed, inner_pts, outer_pts, trees, plan)

    meta = {"ds": plan.ds, "family": s.family,
            "parametrization": "arc-length"}
    inner = Polyline(_cut_contour(inner_pts, e_in, x_in), "contour",
                     dict(meta, seed=tuple(map(float, plan.contour_seeds[0]))))
    outer = Polyline(_cut_contour(outer_pts, e_out, x_out), "contour",
                     dict(meta, seed=tuple(map(float, plan.contour_seeds[1]))))
    return DieGeometry(inner, outer, entry, exit_, plan.feed, plan.extract)
