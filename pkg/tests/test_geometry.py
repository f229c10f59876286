import numpy as np
import pytest

from lorlab import (LORENTZIAN, RIEMANNIAN, MetricField, NoLiftError,
                    StationaryMetric, boundary_normal, causal_classify,
                    christoffel, geodesic_accel, inner, integrate_geodesic,
                    lightlike_completion)
from lorlab.fields import CovectorField, ScalarField


def minkowski(dim=3):
    diag = np.ones(dim)
    diag[0] = -1.0

    def func(x):
        return np.broadcast_to(np.diag(diag), np.shape(x)[:-1] + (dim, dim))

    return MetricField(dim=dim, signature=LORENTZIAN, func=func,
                       dfunc=lambda x: np.zeros(
                           np.shape(x)[:-1] + (dim, dim, dim)))


def test_inner_minkowski_timelike_unit():
    g = minkowski()
    u = np.array([1.0, 0.0, 0.0])
    assert inner(g, np.zeros(3), u, u) == pytest.approx(-1.0)


def test_inner_stationary_example():
    om = CovectorField(dim=2,
                       func=lambda p: np.broadcast_to(np.array([0.3, 0.0]),
                                                      np.shape(p)))
    h = MetricField(dim=2, signature=RIEMANNIAN,
                    func=lambda p: np.broadcast_to(np.eye(2),
                                                   np.shape(p)[:-1] + (2, 2)))
    m = StationaryMetric(lam=ScalarField.constant(1.0), omega=om, base=h)
    v = np.array([1.0, 1.0, 0.0])
    assert inner(m.assembled, np.zeros(3), v, v) == pytest.approx(-0.69)


def test_christoffel_flat_vanishes():
    g = minkowski()
    gamma = christoffel(g, np.array([0.2, -0.4, 0.1]))
    assert np.abs(gamma).max() < 1e-14


def test_christoffel_conformal_disk_closed_form(rng):
    """FD Christoffel symbols of c(x)(dx^2+dy^2) against the conformal
    closed form with sigma = log(c)/2."""
    def c(p):
        p = np.asarray(p, float)
        return 1.0 + 0.3 * np.exp(-np.einsum("...i,...i->...", p, p))

    def dsigma(p):
        p = np.asarray(p, float)
        bump = 0.3 * np.exp(-np.einsum("...i,...i->...", p, p))
        dc = -2.0 * p * bump[..., None]
        return dc / (2.0 * c(p)[..., None])

    g = MetricField(dim=2, signature=RIEMANNIAN,
                    func=lambda p: c(p)[..., None, None] * np.eye(2))
    for _ in range(5):
        x = rng.uniform(-0.6, 0.6, 2)
        ds = dsigma(x)
        expected = np.zeros((2, 2, 2))
        for k in range(2):
            for i in range(2):
                for j in range(2):
                    expected[k, i, j] = ((i == k) * ds[j] + (j == k) * ds[i]
                                         - (i == j) * ds[k])
        assert np.abs(christoffel(g, x) - expected).max() < 1e-7


def test_geodesic_accel_flat_zero():
    g = minkowski()
    acc = geodesic_accel(g)
    a = acc(np.array([[0.0, 0.1, 0.2]]), np.array([[1.0, 0.5, -0.2]]))
    assert np.abs(a).max() < 1e-14


def test_causal_classification():
    g = minkowski()
    x = np.zeros(3)
    assert causal_classify(g, x, np.array([1.0, 0.0, 0.0])).tag == "timelike"
    assert causal_classify(g, x, np.array([0.0, 1.0, 0.0])).tag == "spacelike"
    assert causal_classify(g, x, np.array([1.0, 1.0, 0.0])).tag == "lightlike"


def test_boundary_normal_product_cylinder(product_disk):
    x = np.array([0.0, 1.0, 0.0])
    nu = boundary_normal(product_disk.entry_surface, product_disk.metric, x)
    assert np.allclose(nu, [0.0, 1.0, 0.0], atol=1e-12)


def test_boundary_normal_stationary_tilts(product_disk):
    om = CovectorField(dim=2,
                       func=lambda p: np.broadcast_to(np.array([0.3, 0.0]),
                                                      np.shape(p)))
    m = StationaryMetric(lam=ScalarField.constant(1.0), omega=om,
                         base=product_disk.magnetic.base)
    nu = boundary_normal(product_disk.entry_surface, m.assembled,
                         np.array([0.0, 1.0, 0.0]))
    assert np.allclose(nu, [-0.3, 1.0, 0.0], atol=1e-12)


def test_lightlike_completion_inward(product_disk):
    v = lightlike_completion(product_disk.metric, product_disk.entry_surface,
                             np.array([0.0, 1.0, 0.0]),
                             np.array([1.0, 0.0, 0.0]), orientation=-1)
    assert np.allclose(v, [1.0, -1.0, 0.0], atol=1e-12)
    assert inner(product_disk.metric, np.zeros(3), v, v) == pytest.approx(
        0.0, abs=1e-12)


def test_lightlike_completion_null_projection_raises(product_disk):
    # b = 1: the projected direction is already lightlike, so the only
    # completion is tangent to the boundary and is rejected
    x = np.array([0.0, 1.0, 0.0])
    tang = np.array([0.0, 0.0, 1.0])
    with pytest.raises(NoLiftError):
        lightlike_completion(product_disk.metric,
                             product_disk.entry_surface, x,
                             np.array([1.0, 0.0, 0.0]) + tang,
                             orientation=-1)


def test_integrate_straight_line_to_cylinder(product_disk):
    path = integrate_geodesic(product_disk.metric,
                              np.array([0.0, -1.0, 0.0]),
                              np.array([1.0, 1.0, 0.0]),
                              stop=product_disk.exit_surface, step=1e-3)
    y, w = path.end
    assert np.allclose(y, [2.0, 1.0, 0.0], atol=1e-9)
    assert np.allclose(w, [1.0, 1.0, 0.0], atol=1e-9)
    assert path.sigma[-1] == pytest.approx(2.0, abs=1e-9)


def test_integrate_homogeneity(product_disk):
    x0 = np.array([0.0, -1.0, 0.0])
    v0 = np.array([1.0, 0.8, 0.6])
    base = integrate_geodesic(product_disk.metric, x0, v0,
                              stop=product_disk.exit_surface, step=1e-3)
    for a in (0.5, 2.0, 10.0):
        scaled = integrate_geodesic(product_disk.metric, x0, a * v0,
                                    stop=product_disk.exit_surface,
                                    step=1e-3)
        assert np.allclose(scaled.end[0], base.end[0], rtol=1e-8, atol=1e-8)
        assert scaled.sigma[-1] * a == pytest.approx(base.sigma[-1],
                                                     rel=1e-8)


def test_speed_drift_on_curved_scenario(perturbed_product):
    path = integrate_geodesic(perturbed_product.metric,
                              np.array([0.0, -0.6, 0.2]),
                              np.array([1.1, 0.9, 0.35]), stop=1.0,
                              step=1e-3)
    assert path.speed_drift(perturbed_product.metric) < 1e-10


def test_rk4_endpoint_convergence(perturbed_product):
    x0 = np.array([0.0, -0.6, 0.2])
    v0 = np.array([1.1, 0.9, 0.35])
    ends = [integrate_geodesic(perturbed_product.metric, x0, v0, stop=1.0,
                               step=h).x[-1]
            for h in (1e-2, 5e-3, 2.5e-3)]
    e1 = np.linalg.norm(ends[0] - ends[1])
    e2 = np.linalg.norm(ends[1] - ends[2])
    assert np.log2(e1 / e2) > 3.7
