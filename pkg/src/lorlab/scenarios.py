"""Ready-made geometries for experiments and tests.

Each scenario packages a Lorentzian metric with entry/exit boundary
hypersurfaces, and, where meaningful, the stationary block form and the
reduced magnetic system on the spatial base.  Entry generators produce
deterministic grids of admissible boundary data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .fields import Array, CovectorField, ScalarField
from .geometry import (LORENTZIAN, RIEMANNIAN, BoundaryHypersurface,
                       MetricField)
from .stationary import MagneticSystem, StationaryMetric


@dataclass(frozen=True)
class Scenario:
    name: str
    metric: MetricField
    entry_surface: BoundaryHypersurface
    exit_surface: BoundaryHypersurface
    stationary: Optional[StationaryMetric] = None
    magnetic: Optional[MagneticSystem] = None
    spatial_boundary: Optional[BoundaryHypersurface] = None
    params: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

def _constant_metric(dim: int, diag: Array, signature: str) -> MetricField:
    mat = np.diag(np.asarray(diag, float))

    def func(x):
        return np.broadcast_to(mat, np.shape(x)[:-1] + (dim, dim))

    def dfunc(x):
        return np.zeros(np.shape(x)[:-1] + (dim, dim, dim))

    return MetricField(dim=dim, signature=signature, func=func, dfunc=dfunc)


def _time_slice(level: float, dim: int, exterior_sign: float) -> BoundaryHypersurface:
    grad = np.zeros(dim)
    grad[0] = 1.0

    return BoundaryHypersurface(
        value=lambda x: np.asarray(x, float)[..., 0] - level,
        gradient=lambda x: np.broadcast_to(grad, np.shape(x)),
        causal_type="spacelike",
        exterior_sign=exterior_sign,
        chart=lambda a: np.concatenate([[level], np.asarray(a, float)]),
        chart_inverse=lambda x: np.asarray(x, float)[1:])


def _cylinder(radius: float = 1.0) -> BoundaryHypersurface:
    r2 = radius ** 2

    def value(x):
        x = np.asarray(x, float)
        return 0.5 * (x[..., 1] ** 2 + x[..., 2] ** 2 - r2)

    def gradient(x):
        x = np.asarray(x, float)
        g = np.zeros_like(x)
        g[..., 1] = x[..., 1]
        g[..., 2] = x[..., 2]
        return g

    def chart(a):                  # a = (t, theta)
        t, th = float(a[0]), float(a[1])
        return np.array([t, radius * np.cos(th), radius * np.sin(th)])

    def chart_inverse(x):
        x = np.asarray(x, float)
        return np.array([x[0], np.arctan2(x[2], x[1])])

    return BoundaryHypersurface(value=value, gradient=gradient,
                                causal_type="timelike", exterior_sign=1.0,
                                chart=chart, chart_inverse=chart_inverse)


def _circle(radius: float = 1.0) -> BoundaryHypersurface:
    r2 = radius ** 2

    def value(x):
        x = np.asarray(x, float)
        return 0.5 * (np.einsum("...i,...i->...", x, x) - r2)

    def chart(a):                  # a = (theta,)
        th = float(np.asarray(a, float).reshape(-1)[0])
        return np.array([radius * np.cos(th), radius * np.sin(th)])

    def chart_inverse(x):
        x = np.asarray(x, float)
        return np.array([np.arctan2(x[1], x[0])])

    return BoundaryHypersurface(value=value,
                                gradient=lambda x: np.asarray(x, float),
                                causal_type="timelike", exterior_sign=1.0,
                                chart=chart, chart_inverse=chart_inverse)


def _rotation_form(B: float) -> CovectorField:
    def func(x):
        x = np.asarray(x, float)
        om = np.empty_like(x)
        om[..., 0] = -0.5 * B * x[..., 1]
        om[..., 1] = 0.5 * B * x[..., 0]
        return om

    def jac(x):
        x = np.asarray(x, float)
        J = np.zeros(np.shape(x)[:-1] + (2, 2))
        J[..., 0, 1] = 0.5 * B
        J[..., 1, 0] = -0.5 * B
        return J

    return CovectorField(dim=2, func=func, jac=jac)


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------

def minkowski_slab(n_space: int = 2, thickness: float = 1.0) -> Scenario:
    dim = n_space + 1
    diag = np.ones(dim)
    diag[0] = -1.0
    return Scenario(
        name="minkowski_slab",
        metric=_constant_metric(dim, diag, LORENTZIAN),
        entry_surface=_time_slice(0.0, dim, exterior_sign=-1.0),
        exit_surface=_time_slice(thickness, dim, exterior_sign=+1.0),
        params={"n_space": n_space, "thickness": thickness})


def product_disk() -> Scenario:
    cyl = _cylinder()
    h = _constant_metric(2, np.ones(2), RIEMANNIAN)
    m = StationaryMetric(lam=ScalarField.constant(1.0),
                         omega=CovectorField.zero(2), base=h)
    return Scenario(
        name="product_disk",
        metric=_constant_metric(3, np.array([-1.0, 1.0, 1.0]), LORENTZIAN),
        entry_surface=cyl, exit_surface=cyl,
        stationary=m, magnetic=MagneticSystem(base=h,
                                              omega=CovectorField.zero(2)),
        spatial_boundary=_circle(), params={})


def perturbed_product(amplitude: float = 0.1) -> Scenario:
    a = float(amplitude)

    def conf(xs):
        xs = np.asarray(xs, float)
        return 1.0 + a * np.exp(-np.einsum("...i,...i->...", xs, xs))

    def dconf(xs):
        xs = np.asarray(xs, float)
        bump = a * np.exp(-np.einsum("...i,...i->...", xs, xs))
        return -2.0 * xs * bump[..., None]

    def func(x):
        x = np.asarray(x, float)
        c = conf(x[..., 1:])
        g = np.zeros(x.shape[:-1] + (3, 3))
        g[..., 0, 0] = -1.0
        g[..., 1, 1] = c
        g[..., 2, 2] = c
        return g

    def dfunc(x):
        x = np.asarray(x, float)
        dc = dconf(x[..., 1:])     # (..., 2)
        dg = np.zeros(x.shape[:-1] + (3, 3, 3))
        for k in (1, 2):
            dg[..., k, 1, 1] = dc[..., k - 1]
            dg[..., k, 2, 2] = dc[..., k - 1]
        return dg

    def h_func(xs):
        c = conf(xs)
        return c[..., None, None] * np.broadcast_to(
            np.eye(2), np.shape(xs)[:-1] + (2, 2))

    def h_dfunc(xs):
        dc = dconf(xs)
        return dc[..., :, None, None] * np.broadcast_to(
            np.eye(2), np.shape(xs)[:-1] + (2, 2))

    h = MetricField(dim=2, signature=RIEMANNIAN, func=h_func, dfunc=h_dfunc)
    m = StationaryMetric(lam=ScalarField.constant(1.0),
                         omega=CovectorField.zero(2), base=h)
    cyl = _cylinder()
    return Scenario(
        name="perturbed_product",
        metric=MetricField(dim=3, signature=LORENTZIAN, func=func,
                           dfunc=dfunc),
        entry_surface=cyl, exit_surface=cyl,
        stationary=m,
        magnetic=MagneticSystem(base=h, omega=CovectorField.zero(2)),
        spatial_boundary=_circle(),
        params={"amplitude": a})


def stationary_rot(B: float = 0.2) -> Scenario:
    omega = _rotation_form(float(B))
    h = _constant_metric(2, np.ones(2), RIEMANNIAN)
    m = StationaryMetric(lam=ScalarField.constant(1.0), omega=omega, base=h)
    cyl = _cylinder()
    return Scenario(
        name="stationary_rot",
        metric=m.assembled,
        entry_surface=cyl, exit_surface=cyl,
        stationary=m, magnetic=MagneticSystem(base=h, omega=omega),
        spatial_boundary=_circle(),
        params={"B": float(B)})


_BUILDERS = {
    "minkowski_slab": minkowski_slab,
    "product_disk": product_disk,
    "perturbed_product": perturbed_product,
    "stationary_rot": stationary_rot,
}


def build(kind: str, **params) -> Scenario:
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise KeyError(f"unknown scenario {kind!r}; "
                       f"choose from {sorted(_BUILDERS)}") from None
    return builder(**params)


def available() -> list[str]:
    return sorted(_BUILDERS)


# ---------------------------------------------------------------------------
# deterministic boundary data grids
# ---------------------------------------------------------------------------

def scattering_entries(scenario: Scenario, n: int,
                       seed: int = 0) -> list[tuple[Array, Array]]:
    """Admissible (x, v') grid on the entry surface: projected entries
    with a lightlike inward completion, away from tangency."""
    rng = np.random.default_rng(seed)
    out = []
    if scenario.name == "minkowski_slab":
        ns = scenario.params["n_space"]
        for _ in range(n):
            x = np.zeros(ns + 1)
            x[1:] = rng.uniform(-0.5, 0.5, ns)
            v = rng.uniform(0.4, 1.4) * _unit(rng.normal(size=ns))
            out.append((x, np.concatenate([[0.0], v])))
        return out
    # cylinder entries: v' = dt + b * dtheta with |b| < 1
    for _ in range(n):
        th = rng.uniform(0.0, 2 * np.pi)
        t = rng.uniform(-0.5, 0.5)
        b = rng.uniform(-0.75, 0.75)
        x = np.array([t, np.cos(th), np.sin(th)])
        tang = np.array([0.0, -np.sin(th), np.cos(th)])
        v_full = np.concatenate([[1.0], b * tang[1:]])
        v_proj = _project_onto(scenario, x, v_full)
        out.append((x, v_proj))
    return out


def _unit(v: Array) -> Array:
    return v / np.linalg.norm(v)


def _project_onto(scenario: Scenario, x: Array, v: Array) -> Array:
    from .geometry import boundary_project
    return boundary_project(scenario.metric, scenario.entry_surface, x, v)


def magnetic_entries(scenario: Scenario, n: int,
                     seed: int = 0) -> list[tuple[Array, Array]]:
    """Sub-unit tangential entries (x, u') on the spatial boundary."""
    if scenario.spatial_boundary is None:
        raise ValueError(f"scenario {scenario.name} has no spatial boundary")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        th = rng.uniform(0.0, 2 * np.pi)
        b = rng.uniform(-0.75, 0.75)
        x = np.array([np.cos(th), np.sin(th)])
        tang = np.array([-np.sin(th), np.cos(th)])
        hm = scenario.magnetic.base.matrix(x)
        norm = np.sqrt(float(tang @ hm @ tang))
        out.append((x, (b / norm) * tang))
    return out


def rotation_bump_pair(eps: float = 0.15):
    """Boundary-fixing diffeomorphism of the unit disk: rotation by the
    radius-dependent angle eps*(1 - |x|^2)^2.  Radius is preserved, so
    the closed-form inverse rotates back by the same angle.  Packaged
    with a zero potential."""
    from .fields import ScalarField
    from .gauge import GaugePair

    def theta(x):
        x = np.asarray(x, float)
        r2 = np.einsum("...i,...i->...", x, x)
        return eps * (1.0 - r2) ** 2

    def rotate(x, sign):
        x = np.asarray(x, float)
        th = sign * theta(x)
        c, s = np.cos(th), np.sin(th)
        return np.stack([c * x[..., 0] - s * x[..., 1],
                         s * x[..., 0] + c * x[..., 1]], axis=-1)

    def jac(x):
        x = np.asarray(x, float)
        th = theta(x)
        c, s = np.cos(th), np.sin(th)
        r2 = np.einsum("...i,...i->...", x, x)
        dth = -4.0 * eps * (1.0 - r2)[..., None] * x      # d_i theta
        R = np.stack([np.stack([c, -s], axis=-1),
                      np.stack([s, c], axis=-1)], axis=-2)
        Rp = np.stack([np.stack([-s, -c], axis=-1),
                       np.stack([c, -s], axis=-1)], axis=-2)
        Rx = np.einsum("...kl,...l->...k", Rp, x)
        return R + Rx[..., :, None] * dth[..., None, :]

    return GaugePair(dim=2, psi=lambda x: rotate(x, +1.0),
                     psi_inv=lambda x: rotate(x, -1.0),
                     phi=ScalarField.constant(0.0), jac=jac)


def time_shift_pair(amplitude: float = 0.05):
    """Pure potential gauge pair on the unit disk: psi = id, phi a
    radial bump vanishing (with its tangential derivative) on the
    boundary circle."""
    from .fields import ScalarField
    from .gauge import GaugePair

    a = float(amplitude)

    def phi_func(x):
        x = np.asarray(x, float)
        r2 = np.einsum("...i,...i->...", x, x)
        return a * (1.0 - r2) ** 2

    def phi_grad(x):
        x = np.asarray(x, float)
        r2 = np.einsum("...i,...i->...", x, x)
        return -4.0 * a * (1.0 - r2)[..., None] * x

    base = GaugePair.identity(2)
    return GaugePair(dim=2, psi=base.psi, psi_inv=base.psi_inv,
                     phi=ScalarField(func=phi_func, grad=phi_grad),
                     jac=base.jac)


def conformal_bump(amplitude: float = 0.1) -> ScalarField:
    """Positive factor 1 + amplitude * exp(-|x|^2) on the spatial chart."""
    a = float(amplitude)

    def func(x):
        x = np.asarray(x, float)
        return 1.0 + a * np.exp(-np.einsum("...i,...i->...", x, x))

    def grad(x):
        x = np.asarray(x, float)
        return -2.0 * a * np.exp(
            -np.einsum("...i,...i->...", x, x))[..., None] * x

    return ScalarField(func=func, grad=grad, positive=True)


def null_pairs(scenario: Scenario, n: int, seed: int = 0,
               step: float = 1e-3) -> list[tuple[Array, Array]]:
    """Boundary pairs on the lightlike-connectivity set, produced by
    shooting admissible entries through the geometry."""
    from .scattering import scatter
    pairs = []
    for x, v_proj in scattering_entries(scenario, n, seed=seed):
        rec = scatter(scenario.metric, scenario.entry_surface,
                      scenario.exit_surface, x, v_proj, step=step,
                      max_sigma=30.0, keep_path=False)
        pairs.append((x, rec.y))
    return pairs
