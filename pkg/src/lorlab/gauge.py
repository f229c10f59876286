"""Gauge actions and conformal invariances.

Boundary-fixing gauge pairs (diffeomorphism plus potential) acting on
magnetic data, conformal rescaling of Lorentzian metrics, the cotangent
Hamiltonian flow on the null shell, and before/after invariance checks
of the scattering relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicSpline

from .errors import PreconditionError
from .fields import Array, CovectorField, ScalarField, _central_diff
from .geometry import RIEMANNIAN, BoundaryHypersurface, MetricField
from .scattering import scatter_batch
from .stationary import MagneticSystem, magnetic_scatter_batch


# ---------------------------------------------------------------------------
# gauge pairs on the base manifold
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaugePair:
    """Diffeomorphism psi of the base fixing the boundary together with
    a potential phi vanishing on the boundary."""

    dim: int
    psi: Callable[[Array], Array]
    psi_inv: Callable[[Array], Array]
    phi: ScalarField
    jac: Optional[Callable[[Array], Array]] = None   # [..., k, i] = d_i psi^k

    def jacobian(self, x: Array) -> Array:
        if self.jac is not None:
            return np.asarray(self.jac(np.asarray(x, float)), float)
        d = _central_diff(self.psi, x, (self.dim,))   # [..., i, k]
        return np.swapaxes(d, -1, -2)

    @staticmethod
    def identity(dim: int) -> "GaugePair":
        ident = lambda x: np.asarray(x, float)
        return GaugePair(dim=dim, psi=ident, psi_inv=ident,
                         phi=ScalarField.constant(0.0),
                         jac=lambda x: np.broadcast_to(
                             np.eye(dim), np.shape(x)[:-1] + (dim, dim)))


def apply_gauge(mag: MagneticSystem, pair: GaugePair) -> MagneticSystem:
    """Transformed data: h -> psi^* h, omega -> psi^* (omega + d phi)."""

    def new_h(x):
        J = pair.jacobian(x)
        hp = np.asarray(mag.base.func(pair.psi(np.asarray(x, float))), float)
        return np.einsum("...ki,...kl,...lj->...ij", J, hp, J)

    def new_omega(x):
        x = np.asarray(x, float)
        px = pair.psi(x)
        alpha = mag.omega(px) + pair.phi.gradient(px)
        return np.einsum("...k,...ki->...i", alpha, pair.jacobian(x))

    dom = mag.base.domain
    return MagneticSystem(
        base=MetricField(dim=mag.base.dim, signature=RIEMANNIAN, func=new_h,
                         domain=None if dom is None
                         else (lambda x: dom(pair.psi(np.asarray(x, float))))),
        omega=CovectorField(dim=mag.base.dim, func=new_omega))


def compose_gauge(p1: GaugePair, p2: GaugePair) -> GaugePair:
    """Pair whose action is the action of p1 followed by that of p2:
    psi = psi1 o psi2, phi = phi1 + phi2 o psi1^{-1}."""
    if p1.dim != p2.dim:
        raise ValueError("gauge pairs on different dimensions")

    def psi(x):
        return p1.psi(p2.psi(np.asarray(x, float)))

    def psi_inv(x):
        return p2.psi_inv(p1.psi_inv(np.asarray(x, float)))

    def phi_func(x):
        x = np.asarray(x, float)
        return p1.phi(x) + p2.phi(p1.psi_inv(x))

    jac = None
    if p1.jac is not None and p2.jac is not None:
        def jac(x):
            x = np.asarray(x, float)
            return np.einsum("...kl,...li->...ki",
                             p1.jacobian(p2.psi(x)), p2.jacobian(x))

    return GaugePair(dim=p1.dim, psi=psi, psi_inv=psi_inv,
                     phi=ScalarField(func=phi_func), jac=jac)


# ---------------------------------------------------------------------------
# conformal rescaling
# ---------------------------------------------------------------------------

def scale_metric(g: MetricField, c: ScalarField) -> MetricField:
    """Pointwise conformal multiple c * g with analytic partials when
    both factors provide them."""

    def func(x):
        return c(x)[..., None, None] * np.asarray(g.func(x), float)

    dfunc = None
    if g.dfunc is not None and c.grad is not None:
        def dfunc(x):
            x = np.asarray(x, float)
            gm = np.asarray(g.func(x), float)
            return (c.gradient(x)[..., :, None, None] * gm[..., None, :, :]
                    + c(x)[..., None, None, None] * g.partials(x))

    return MetricField(dim=g.dim, signature=g.signature, func=func,
                       dfunc=dfunc, domain=g.domain)


def pullback_metric(g: MetricField, psi: Callable[[Array], Array],
                    jac: Optional[Callable[[Array], Array]] = None,
                    domain=None) -> MetricField:
    """psi^* g as a matrix field (jac layout [..., k, i] = d_i psi^k)."""

    def jacobian(x):
        if jac is not None:
            return np.asarray(jac(np.asarray(x, float)), float)
        return np.swapaxes(_central_diff(psi, x, (g.dim,)), -1, -2)

    def func(x):
        x = np.asarray(x, float)
        J = jacobian(x)
        gp = np.asarray(g.func(psi(x)), float)
        return np.einsum("...ki,...kl,...lj->...ij", J, gp, J)

    return MetricField(dim=g.dim, signature=g.signature, func=func,
                       domain=domain)


# ---------------------------------------------------------------------------
# Hamiltonian flow on the cotangent bundle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HamiltonianPath:
    """Sampled flow of H = (1/2) c^{-1} g^{kl} xi_k xi_l restricted to
    the null shell H = 0."""

    sigma: Array
    x: Array                      # (M, dim)
    xi: Array                     # (M, dim)
    h_values: Array               # (M,)

    @property
    def h_drift(self) -> float:
        return float(np.abs(self.h_values - self.h_values[0]).max())


def hamiltonian_flow(g: MetricField, x0: Array, xi0: Array, sigma_max: float,
                     c: Optional[ScalarField] = None,
                     step: float = 1e-3) -> HamiltonianPath:
    """Integrate x' = c^{-1} g^{-1} xi, xi'_i = -(1/2) c^{-1}
    (d_i g^{kl}) xi_k xi_l, the null-shell reduction of the cotangent
    Hamiltonian vector field of the metric c * g.  A supplied factor c
    requires H(x0, xi0) = 0, where the reduction is valid."""
    x0 = np.asarray(x0, float)
    xi0 = np.asarray(xi0, float)
    scaled = c is not None
    if c is None:
        c = ScalarField.constant(1.0)
    h0 = 0.5 * float(xi0 @ np.linalg.inv(g.matrix(x0)) @ xi0) / float(c(x0))
    if scaled and abs(h0) > 1e-10 * max(1.0, float(xi0 @ xi0)):
        raise PreconditionError(
            f"scaled Hamiltonian flow requires the null shell (H = {h0:g})")

    def hval(x, xi):
        ginv = np.linalg.inv(g.matrix(x))
        cv = c(x)
        return 0.5 * np.einsum("...k,...kl,...l->...", xi, ginv, xi) / cv

    def rhs(state):
        x, xi = state[..., 0, :], state[..., 1, :]
        ginv = np.linalg.inv(g.matrix(x))
        cinv = 1.0 / c(x)
        dg = g.partials(x)
        # d_i g^{kl} = -(g^{-1} d_i g g^{-1})^{kl}
        dginv = -np.einsum("...ka,...iab,...bl->...ikl", ginv, dg, ginv)
        xdot = cinv[..., None] * np.einsum("...kl,...l->...k", ginv, xi)
        xidot = -0.5 * cinv[..., None] * np.einsum("...ikl,...k,...l->...i",
                                                   dginv, xi, xi)
        return np.stack([xdot, xidot], axis=-2)

    n = max(1, int(round(sigma_max / step)))
    h = sigma_max / n
    state = np.stack([x0, xi0])[None]
    xs = np.empty((n + 1,) + x0.shape)
    xis = np.empty_like(xs)
    xs[0], xis[0] = x0, xi0
    for i in range(n):
        k1 = rhs(state)
        k2 = rhs(state + 0.5 * h * k1)
        k3 = rhs(state + 0.5 * h * k2)
        k4 = rhs(state + h * k3)
        state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        xs[i + 1], xis[i + 1] = state[0, 0], state[0, 1]
    sigma = np.linspace(0.0, sigma_max, n + 1)
    return HamiltonianPath(sigma=sigma, x=xs, xi=xis,
                           h_values=np.array([hval(xs[i], xis[i])
                                              for i in range(n + 1)]))


# ---------------------------------------------------------------------------
# conformal reparametrization of lightlike geodesics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReparamReport:
    max_deviation: float
    alpha: Array                  # parameter change sampled on the s grid
    s: Array
    sigma_end: float


def conformal_reparam_check(g: MetricField, c: ScalarField, x0: Array,
                            xi0: Array, sigma_max: float,
                            step: float = 1e-3) -> ReparamReport:
    """The flow of the c-scaled Hamiltonian started on the null shell
    traces the unscaled flow under the parameter change alpha with
    alpha'(s) = 1 / c(x(alpha(s))), alpha(0) = 0; the covector is
    carried along unchanged."""
    base = hamiltonian_flow(g, x0, xi0, sigma_max, step=step)
    base_x = CubicSpline(base.sigma, base.x, axis=0)
    base_xi = CubicSpline(base.sigma, base.xi, axis=0)
    s_end = float(simpson(c(base.x), x=base.sigma))

    scaled = hamiltonian_flow(g, x0, xi0, s_end, c=c, step=step)
    s_grid = scaled.sigma
    hs = s_grid[1] - s_grid[0]
    alpha = np.empty_like(s_grid)
    alpha[0] = 0.0
    a = 0.0
    for i in range(s_grid.size - 1):
        k1 = 1.0 / float(c(base_x(a)))
        k2 = 1.0 / float(c(base_x(a + 0.5 * hs * k1)))
        k3 = 1.0 / float(c(base_x(a + 0.5 * hs * k2)))
        k4 = 1.0 / float(c(base_x(a + hs * k3)))
        a += (hs / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        alpha[i + 1] = a
    inside = alpha <= sigma_max
    dev = max(float(np.abs(scaled.x[inside] - base_x(alpha[inside])).max()),
              float(np.abs(scaled.xi[inside] - base_xi(alpha[inside])).max()))
    return ReparamReport(max_deviation=dev, alpha=alpha, s=s_grid,
                         sigma_end=sigma_max)


# ---------------------------------------------------------------------------
# invariance of the scattering data
# ---------------------------------------------------------------------------

def scattering_invariance(g1: MetricField, g2: MetricField,
                          U: BoundaryHypersurface, V: BoundaryHypersurface,
                          entries: Sequence[tuple[Array, Array]],
                          step: float = 1e-3,
                          max_sigma: float = 30.0) -> float:
    """Max discrepancy of the scattering data of two metrics over a set
    of boundary entries.  Exit projections are compared after matching
    the positive exit scale (the relation is homogeneous; conformal
    changes reparametrize the rays)."""
    xs = np.array([x for x, _ in entries], float)
    vs = np.array([v for _, v in entries], float)
    recs1 = scatter_batch(g1, U, V, xs, vs, step=step, max_sigma=max_sigma)
    recs2 = scatter_batch(g2, U, V, xs, vs, step=step, max_sigma=max_sigma)
    worst = 0.0
    for r1, r2 in zip(recs1, recs2):
        w1 = r1.w_proj / r1.w_proj[0]
        w2 = r2.w_proj / r2.w_proj[0]
        worst = max(worst, float(np.linalg.norm(r1.y - r2.y)),
                    float(np.linalg.norm(w1 - w2)))
    return worst


def magnetic_invariance(mag1: MagneticSystem, mag2: MagneticSystem,
                        S: BoundaryHypersurface,
                        entries: Sequence[tuple[Array, Array]],
                        step: float = 1e-3,
                        max_sigma: float = 30.0) -> float:
    """Max discrepancy of magnetic boundary data (exit point, exit
    projection, action) between two gauge-equivalent systems."""
    xs = np.array([x for x, _ in entries], float)
    us = np.array([u for _, u in entries], float)
    recs1 = magnetic_scatter_batch(mag1, S, xs, us, step=step,
                                   max_sigma=max_sigma)
    recs2 = magnetic_scatter_batch(mag2, S, xs, us, step=step,
                                   max_sigma=max_sigma)
    worst = 0.0
    for r1, r2 in zip(recs1, recs2):
        worst = max(worst,
                    float(np.linalg.norm(r1.y - r2.y)),
                    float(np.linalg.norm(r1.w_proj - r2.w_proj)),
                    abs(r1.action - r2.action))
    return worst
