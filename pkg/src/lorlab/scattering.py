"""The lightlike scattering relation between boundary hypersurfaces."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import PreconditionError, TangencyError
from .fields import Array
from .geometry import (BoundaryHypersurface, GeodesicPath, MetricField,
                       boundary_normal, boundary_project, geodesic_accel,
                       inner, integrate_flow_to_surface, integrate_geodesic,
                       lightlike_completion, TANGENCY_TOL)

UNIT_INDUCED = "unit_g_prime"
TIME_COMPONENT = "time_component"
REDUCED_MODES = (UNIT_INDUCED, TIME_COMPONENT)


@dataclass(frozen=True)
class ScatteringRecord:
    """One evaluation of the scattering relation.

    x, v_proj: entry point and projected entry direction (tangent to U);
    y, w_proj: exit point and projected exit direction (tangent to V);
    travel: exit value of the affine parameter in the normalization in
    which v_proj was supplied.
    """

    x: Array
    v_proj: Array
    y: Array
    w_proj: Array
    travel: float
    path: GeodesicPath | None = None


def scatter(g: MetricField, U: BoundaryHypersurface, V: BoundaryHypersurface,
            x: Array, v_proj: Array, step: float = 1e-3,
            max_sigma: float = 10.0, keep_path: bool = True) -> ScatteringRecord:
    """Shoot the lightlike geodesic with inward completion of v_proj from
    x in U to its first transversal intersection with V."""
    x = np.asarray(x, float)
    if abs(float(U.value(x))) > 1e-9:
        raise PreconditionError("entry point not on U")
    v = lightlike_completion(g, U, x, v_proj, orientation=-1.0)
    nu = boundary_normal(U, g, x)
    gm = g.matrix(x)
    if abs(float(v @ gm @ nu)) < TANGENCY_TOL * np.linalg.norm(v):
        raise TangencyError("entry ray tangent to U")
    path = integrate_geodesic(g, x, v, stop=V, step=step, max_sigma=max_sigma,
                              require_interior_first=U is V)
    y, w = path.end
    w_proj = boundary_project(g, V, y, w)
    return ScatteringRecord(x=x, v_proj=np.asarray(v_proj, float), y=y,
                            w_proj=w_proj, travel=float(path.sigma[-1]),
                            path=path if keep_path else None)


def scatter_batch(g: MetricField, U: BoundaryHypersurface,
                  V: BoundaryHypersurface, xs: Array, v_projs: Array,
                  step: float = 1e-3, max_sigma: float = 10.0,
                  keep_paths: bool = False) -> list[ScatteringRecord]:
    """Vectorized scatter over a grid of entries (one RK4 march for all)."""
    xs = np.atleast_2d(np.asarray(xs, float))
    v_projs = np.atleast_2d(np.asarray(v_projs, float))
    lifts = np.array([lightlike_completion(g, U, x, vp, orientation=-1.0)
                      for x, vp in zip(xs, v_projs)])
    accel = geodesic_accel(g)
    sols = integrate_flow_to_surface(accel, xs, lifts, V, step, max_sigma,
                                     require_interior_first=U is V)
    records = []
    for x, vp, (sigma, px, pv) in zip(xs, v_projs, sols):
        y, w = px[-1], pv[-1]
        w_proj = boundary_project(g, V, y, w)
        path = None
        if keep_paths:
            path = GeodesicPath(sigma=sigma, x=px, v=pv,
                                speed_squared=float(inner(g, x, pv[0], pv[0])))
        records.append(ScatteringRecord(x=x, v_proj=vp, y=y, w_proj=w_proj,
                                        travel=float(sigma[-1]), path=path))
    return records


def normalize(rec: ScatteringRecord, mode: str, g: MetricField) -> ScatteringRecord:
    """Rescale (v', w', travel) by one positive factor so the entry
    satisfies the reduced-mode constraint."""
    if mode not in REDUCED_MODES:
        raise ValueError(f"unknown reduced mode {mode!r}")
    if mode == TIME_COMPONENT:
        vt = float(rec.v_proj[0])
        if vt <= 0.0:
            raise PreconditionError("time component of entry not positive")
        a = 1.0 / vt
    else:
        q = float(inner(g, rec.x, rec.v_proj, rec.v_proj))
        if q == 0.0:
            raise PreconditionError("induced norm of entry vanishes")
        a = 1.0 / np.sqrt(abs(q))
    return replace(rec, v_proj=a * rec.v_proj, w_proj=a * rec.w_proj,
                   travel=rec.travel / a, path=None)
