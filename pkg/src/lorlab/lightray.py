"""Light ray transform of symmetric two-tensors, the symmetrized
covariant differential, and gauge-kernel verification helpers."""

from __future__ import annotations

import numpy as np
from scipy.integrate import simpson

from .errors import PreconditionError
from .fields import Array, CovectorField, ScalarField, SymTwoTensorField
from .geometry import GeodesicPath, MetricField, christoffel

LIGHTLIKE_TOL = 1e-8
UNIT_SPEED_TOL = 1e-8


def light_ray_transform(f: SymTwoTensorField, path: GeodesicPath,
                        lightlike_tol: float = LIGHTLIKE_TOL) -> float:
    """Integral of <f, gamma' x gamma'> along a lightlike geodesic,
    composite Simpson over the integrator's own samples."""
    if abs(path.speed_squared) > lightlike_tol:
        raise PreconditionError(
            f"path is not lightlike (speed squared {path.speed_squared:g})")
    vals = np.einsum("mij,mi,mj->m", f(path.x), path.v, path.v)
    return float(simpson(vals, x=path.sigma))


def sym_diff(v: CovectorField, g: MetricField) -> SymTwoTensorField:
    """Symmetrized covariant differential (v_{i;j} + v_{j;i}) / 2."""

    def func(x):
        dv = v.jacobian(x)                       # dv[..., i, j] = d_i v_j
        gamma = christoffel(g, x)
        corr = np.einsum("...kij,...k->...ij", gamma, v(x))
        return 0.5 * (dv + np.swapaxes(dv, -1, -2)) - corr

    return SymTwoTensorField(dim=g.dim, func=func)


def pairing_along(v: CovectorField, path: GeodesicPath) -> Array:
    """<v, gamma'> sampled along the path."""
    return np.einsum("mi,mi->m", v(path.x), path.v)


def ftc_residual(v: CovectorField, g: MetricField, path: GeodesicPath) -> float:
    """L(d^s v) minus the endpoint difference of <v, gamma'>."""
    transform = light_ray_transform(sym_diff(v, g), path)
    vals = pairing_along(v, path)
    return float(transform - (vals[-1] - vals[0]))


def kernel_potential_test(v: CovectorField, g: MetricField,
                          rays: list[GeodesicPath],
                          endpoint_tol: float = 1e-10) -> float:
    """Max |L(d^s v)| over rays, for v vanishing at every ray endpoint."""
    f = sym_diff(v, g)
    worst = 0.0
    for path in rays:
        ends = np.linalg.norm(v(path.x[[0, -1]]), axis=-1)
        if np.any(ends > endpoint_tol):
            raise PreconditionError(
                f"one-form does not vanish at a ray endpoint "
                f"(|v| = {ends.max():g})")
        worst = max(worst, abs(light_ray_transform(f, path)))
    return worst


def kernel_conformal_test(c: ScalarField, g: MetricField,
                          rays: list[GeodesicPath]) -> float:
    """Max |L(c*g)| over rays; the integrand vanishes pointwise."""
    f = SymTwoTensorField(dim=g.dim,
                          func=lambda x: c(x)[..., None, None] * g.func(x))
    return max(abs(light_ray_transform(f, path)) for path in rays)


def magnetic_linearized_transform(f: SymTwoTensorField, beta: CovectorField,
                                  path: GeodesicPath,
                                  unit_tol: float = UNIT_SPEED_TOL) -> float:
    """X-ray transform with a one-form term over a unit-speed base
    geodesic: integral of <f, x' x x'> + <beta, x'>."""
    if abs(path.speed_squared - 1.0) > unit_tol:
        raise PreconditionError(
            f"base path not unit speed (|x'|^2 = {path.speed_squared:g})")
    vals = (np.einsum("mij,mi,mj->m", f(path.x), path.v, path.v)
            + np.einsum("mi,mi->m", beta(path.x), path.v))
    return float(simpson(vals, x=path.sigma))
