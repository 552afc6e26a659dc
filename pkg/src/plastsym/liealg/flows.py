"""One-parameter group flows of the generators and the graph-transform
symmetry check.

All named generators except K flow in closed form: the translations and
dilations trivially, L as a simultaneous rotation of (x, y), (u, v) and a
shift of theta, B1/B2 as shears (their source coefficients are constant
along their own flow), and B3-B6 as affine shifts because sigma and theta
are invariant along them.  K evolves (sigma, theta) hyperbolically, which
makes the remaining block a linear time-varying system; it is integrated
numerically together with its variational equations.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp

from ..fieldcore import DomainError, PlasticState, numeric_jet, pde_residual
from .generators import Generator, Point6


class FlowError(RuntimeError):
    """Numeric integration of a flow failed to reach the requested time."""


class _Divergence(RuntimeError):
    pass


def _closed_form(name: str, p: Point6, t: float) -> Point6 | None:
    x, y, s, th, u, v = p.as_array()
    if name == "P1":
        return Point6(x + t, y, s, th, u, v)
    if name == "P2":
        return Point6(x, y + t, s, th, u, v)
    if name == "P3":
        return Point6(x, y, s, th, u + t, v)
    if name == "P4":
        return Point6(x, y, s, th, u, v + t)
    if name == "P5":
        return Point6(x, y, s + t, th, u, v)
    if name == "D1":
        e = math.exp(t)
        return Point6(x * e, y * e, s, th, u * e, v * e)
    if name == "D2":
        e = math.exp(t)
        return Point6(x * e, y * e, s, th, u / e, v / e)
    if name == "L":
        c, sn = math.cos(t), math.sin(t)
        return Point6(x * c - y * sn, x * sn + y * c, s, th + t,
                      u * c - v * sn, u * sn + v * c)
    if name == "B1":
        return Point6(x - t * v, y + t * u, s, th, u, v)
    if name == "B2":
        return Point6(x, y, s, th, u + t * y, v - t * x)
    c2, s2 = math.cos(2 * th), math.sin(2 * th)
    if name == "B3":
        return Point6(x + t * (s + s2 / 2), y - (t / 2) * c2, s, th, u, v)
    if name == "B4":
        return Point6(x - (t / 2) * c2, y + t * (s - s2 / 2), s, th, u, v)
    if name == "B5":
        return Point6(x, y, s, th, u + t * (s - s2 / 2), v + (t / 2) * c2)
    if name == "B6":
        return Point6(x, y, s, th, u + (t / 2) * c2, v + t * (s + s2 / 2))
    return None


def _integrate(g: Generator, p: Point6, t: float,
               with_jacobian: bool) -> tuple[Point6, np.ndarray | None]:
    if t == 0.0:
        return p, np.eye(6) if with_jacobian else None

    if with_jacobian:
        def rhs(_, z):
            coords = list(z[:6])
            vals, jac = g.coefficients_and_jacobian(coords)
            j = np.array(jac, dtype=float)
            m = z[6:].reshape(6, 6)
            return np.concatenate([np.array(vals, dtype=float),
                                   (j @ m).ravel()])
        z0 = np.concatenate([p.as_array(), np.eye(6).ravel()])
    else:
        def rhs(_, z):
            return g.coefficients(Point6.from_array(z))
        z0 = p.as_array()

    sol = solve_ivp(rhs, (0.0, t), z0, method="RK45",
                    rtol=1e-11, atol=1e-12, dense_output=False)
    if not sol.success:
        raise FlowError(f"flow of {g.name} failed at t={t}: {sol.message}")
    z = sol.y[:, -1]
    if with_jacobian:
        return Point6.from_array(z[:6]), z[6:].reshape(6, 6)
    return Point6.from_array(z), None


def flow(g: Generator, p: Point6, t: float) -> Point6:
    """Point reached from p after time t along g."""
    cf = _closed_form(g.name, p, t)
    if cf is not None:
        return cf
    q, _ = _integrate(g, p, t, with_jacobian=False)
    return q


def _flow_jacobian(g: Generator, p: Point6, t: float) -> np.ndarray:
    """d(flow)/d(p), analytic for closed forms, variational for K."""
    name = g.name
    x, y, s, th, u, v = p.as_array()
    eye = np.eye(6)
    if name in ("P1", "P2", "P3", "P4", "P5"):
        return eye
    if name == "D1":
        e = math.exp(t)
        return np.diag([e, e, 1, 1, e, e])
    if name == "D2":
        e = math.exp(t)
        return np.diag([e, e, 1, 1, 1 / e, 1 / e])
    if name == "L":
        c, sn = math.cos(t), math.sin(t)
        j = np.eye(6)
        j[0, 0], j[0, 1], j[1, 0], j[1, 1] = c, -sn, sn, c
        j[4, 4], j[4, 5], j[5, 4], j[5, 5] = c, -sn, sn, c
        return j
    if name == "B1":
        j = np.eye(6)
        j[0, 5] = -t
        j[1, 4] = t
        return j
    if name == "B2":
        j = np.eye(6)
        j[4, 1] = t
        j[5, 0] = -t
        return j
    c2, s2 = math.cos(2 * th), math.sin(2 * th)
    if name == "B3":
        j = np.eye(6)
        j[0, 2] = t
        j[0, 3] = t * c2
        j[1, 3] = t * s2
        return j
    if name == "B4":
        j = np.eye(6)
        j[0, 3] = t * s2
        j[1, 2] = t
        j[1, 3] = -t * c2
        return j
    if name == "B5":
        j = np.eye(6)
        j[4, 2] = t
        j[4, 3] = -t * c2
        j[5, 3] = -t * s2
        return j
    if name == "B6":
        j = np.eye(6)
        j[4, 3] = -t * s2
        j[5, 2] = t
        j[5, 3] = t * c2
        return j
    _, jac = _integrate(g, p, t, with_jacobian=True)
    return jac


def _graph_point(solution, x: float, y: float) -> Point6:
    st = solution.eval(x, y).state
    return Point6(x, y, st.sigma, st.theta, st.u, st.v)


def symmetry_check(g: Generator, solution, t: float,
                   n_points: int = 12, seed: int = 42,
                   newton_tol: float = 1e-12, max_iter: int = 50) -> dict:
    """Transform a solution's graph by the flow of g and measure how well
    the transformed fields still satisfy the governing system.

    For each sample point (x', y') near the image of the solution's domain,
    a Newton solve finds the preimage (x, y) whose flowed graph point has
    base coordinates (x', y'); the flowed fiber values then define the
    transformed fields, whose jets feed the PDE residual.  Points where
    Newton diverges are excluded and counted.
    """
    pts = solution.sample_domain(n_points, seed=seed)

    def transformed(xp: float, yp: float) -> PlasticState:
        gx, gy = xp, yp  # initial guess: untransformed point
        for _ in range(max_iter):
            q = flow(g, _graph_point(solution, gx, gy), t)
            rx, ry = q.x - xp, q.y - yp
            if math.hypot(rx, ry) < newton_tol:
                return PlasticState(q.sigma, q.theta, q.u, q.v)
            jf = _flow_jacobian(g, _graph_point(solution, gx, gy), t)
            jet = solution.eval(gx, gy)
            # chain rule through the graph map (x,y) -> (x,y,sigma,...,v)
            gmap = np.zeros((6, 2))
            gmap[0, 0] = gmap[1, 1] = 1.0
            gmap[2] = [jet.d_x.sigma, jet.d_y.sigma]
            gmap[3] = [jet.d_x.theta, jet.d_y.theta]
            gmap[4] = [jet.d_x.u, jet.d_y.u]
            gmap[5] = [jet.d_x.v, jet.d_y.v]
            jxy = (jf @ gmap)[:2, :]
            try:
                dx, dy = np.linalg.solve(jxy, [rx, ry])
            except np.linalg.LinAlgError as exc:
                raise _Divergence from exc
            gx, gy = gx - dx, gy - dy
        raise _Divergence

    worst = 0.0
    excluded = 0
    for p in pts:
        base = flow(g, _graph_point(solution, p[0], p[1]), t)
        try:
            jet = numeric_jet(transformed, (base.x, base.y), h=1e-5)
            worst = max(worst, float(np.max(np.abs(pde_residual(jet)))))
        except (_Divergence, DomainError):
            excluded += 1
    return {"max_residual": worst, "tested": len(pts) - excluded,
            "excluded": excluded}
