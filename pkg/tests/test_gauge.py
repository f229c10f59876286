import numpy as np
import pytest

from lorlab import (GaugePair, PreconditionError, apply_gauge, compose_gauge,
                    hamiltonian_flow, integrate_geodesic, pullback_metric,
                    scale_metric)
from lorlab import scenarios
from lorlab.fields import ScalarField
from lorlab.gauge import conformal_reparam_check, scattering_invariance


def grid(rng, n=40, lim=0.7):
    return rng.uniform(-lim, lim, (n, 2))


def test_jacobian_analytic_matches_fd(rng):
    pair = scenarios.rotation_bump_pair(0.15)
    fd_pair = GaugePair(dim=2, psi=pair.psi, psi_inv=pair.psi_inv,
                        phi=pair.phi)
    pts = grid(rng)
    assert np.abs(pair.jacobian(pts) - fd_pair.jacobian(pts)).max() < 1e-9


def test_inverse_round_trip(rng):
    pair = scenarios.rotation_bump_pair(0.15)
    pts = grid(rng)
    assert np.abs(pair.psi_inv(pair.psi(pts)) - pts).max() < 1e-12


def test_apply_gauge_pullback_property(stationary_rot, rng):
    mag = stationary_rot.magnetic
    pair = scenarios.rotation_bump_pair(0.1)
    gauged = apply_gauge(mag, pair)
    pts = grid(rng, n=10)
    J = pair.jacobian(pts)
    h_at = mag.base.matrix(pair.psi(pts))
    expected = np.einsum("...ki,...kl,...lj->...ij", J, h_at, J)
    assert np.abs(gauged.base.matrix(pts) - expected).max() < 1e-12


def test_compose_matches_sequential_application(stationary_rot, rng):
    mag = stationary_rot.magnetic
    p1 = scenarios.rotation_bump_pair(0.1)
    p2 = scenarios.time_shift_pair(0.05)
    composed = apply_gauge(mag, compose_gauge(p1, p2))
    sequential = apply_gauge(apply_gauge(mag, p1), p2)
    pts = grid(rng, n=20)
    assert np.abs(composed.base.matrix(pts)
                  - sequential.base.matrix(pts)).max() < 1e-10
    assert np.abs(composed.omega(pts) - sequential.omega(pts)).max() < 1e-10


def test_compose_two_time_shifts(rng):
    p1 = scenarios.time_shift_pair(0.05)
    p2 = scenarios.time_shift_pair(0.02)
    comp = compose_gauge(p1, p2)
    pts = grid(rng)
    assert np.abs(comp.phi(pts) - (p1.phi(pts) + p2.phi(pts))).max() < 1e-12
    assert np.abs(comp.psi(pts) - pts).max() < 1e-12


def test_compose_with_inverse_is_identity(rng):
    p = scenarios.rotation_bump_pair(0.12)
    inv = GaugePair(dim=2, psi=p.psi_inv, psi_inv=p.psi,
                    phi=ScalarField.constant(0.0))
    comp = compose_gauge(p, inv)
    pts = grid(rng)
    assert np.abs(comp.psi(pts) - pts).max() < 1e-8
    assert np.abs(comp.phi(pts)).max() < 1e-12


def test_compose_associative(rng):
    p1 = scenarios.rotation_bump_pair(0.08)
    p2 = scenarios.time_shift_pair(0.03)
    p3 = scenarios.rotation_bump_pair(0.05)
    left = compose_gauge(compose_gauge(p1, p2), p3)
    right = compose_gauge(p1, compose_gauge(p2, p3))
    pts = grid(rng)
    assert np.abs(left.psi(pts) - right.psi(pts)).max() < 1e-8
    assert np.abs(left.phi(pts) - right.phi(pts)).max() < 1e-8


def test_identity_is_neutral(stationary_rot, rng):
    mag = stationary_rot.magnetic
    gauged = apply_gauge(mag, GaugePair.identity(2))
    pts = grid(rng, n=10)
    assert np.abs(gauged.base.matrix(pts) - mag.base.matrix(pts)).max() < 1e-12
    assert np.abs(gauged.omega(pts) - mag.omega(pts)).max() < 1e-12


def test_pullback_metric_flat_rotation(product_disk, rng):
    pair = scenarios.rotation_bump_pair(0.1)
    pulled = pullback_metric(product_disk.magnetic.base, pair.psi,
                             jac=pair.jacobian)
    pts = grid(rng, n=10)
    J = pair.jacobian(pts)
    expected = np.einsum("...ki,...kj->...ij", J, J)
    assert np.abs(pulled.matrix(pts) - expected).max() < 1e-12


def test_hamiltonian_flow_matches_geodesic(perturbed_product):
    g = perturbed_product.metric
    x0 = np.array([0.0, -0.4, 0.1])
    gm = g.matrix(x0)
    vx = np.array([0.6, 0.5])
    v0 = np.concatenate([[np.sqrt(gm[1, 1] * (vx @ vx))], vx])
    xi0 = gm @ v0
    flow = hamiltonian_flow(g, x0, xi0, sigma_max=1.0, step=1e-3)
    path = integrate_geodesic(g, x0, v0, stop=1.0, step=1e-3)
    assert np.abs(flow.x[-1] - path.x[-1]).max() < 1e-8
    raised = np.linalg.solve(g.matrix(flow.x[-1]), flow.xi[-1])
    assert np.abs(raised - path.v[-1]).max() < 1e-8


def test_hamiltonian_constant_factor_halves_parameter(perturbed_product):
    g = perturbed_product.metric
    x0 = np.array([0.0, -0.4, 0.1])
    gm = g.matrix(x0)
    vx = np.array([0.6, 0.5])
    v0 = np.concatenate([[np.sqrt(gm[1, 1] * (vx @ vx))], vx])
    xi0 = gm @ v0
    base = hamiltonian_flow(g, x0, xi0, sigma_max=0.5, step=1e-3)
    scaled = hamiltonian_flow(g, x0, xi0, sigma_max=1.0,
                              c=ScalarField.constant(2.0), step=1e-3)
    assert np.abs(scaled.x[-1] - base.x[-1]).max() < 1e-8
    assert np.abs(scaled.xi[-1] - base.xi[-1]).max() < 1e-8


def test_hamiltonian_scaled_requires_null_shell(perturbed_product):
    g = perturbed_product.metric
    x0 = np.array([0.0, -0.4, 0.1])
    xi0 = g.matrix(x0) @ np.array([1.0, 0.0, 0.0])   # timelike
    with pytest.raises(PreconditionError):
        hamiltonian_flow(g, x0, xi0, sigma_max=0.5,
                         c=ScalarField.constant(2.0))


def test_reparam_alpha_monotone(product_disk):
    x0 = np.array([0.0, -0.5, 0.1])
    xi0 = product_disk.metric.matrix(x0) @ np.array([1.0, 0.8, 0.6])

    def cg(x):
        xs = np.asarray(x, float)[..., 1:]
        return 1.0 + 0.3 * np.exp(-np.einsum("...i,...i->...", xs, xs))

    rep = conformal_reparam_check(product_disk.metric,
                                  ScalarField(func=cg, positive=True), x0,
                                  xi0, sigma_max=0.6)
    assert rep.max_deviation < 1e-6
    assert (np.diff(rep.alpha) > 0).all()


def test_reparam_constant_rate(product_disk):
    x0 = np.array([0.0, -0.5, 0.1])
    xi0 = product_disk.metric.matrix(x0) @ np.array([1.0, 0.8, 0.6])
    rep = conformal_reparam_check(product_disk.metric,
                                  ScalarField.constant(4.0), x0, xi0,
                                  sigma_max=0.6)
    assert np.abs(rep.alpha - rep.s / 4.0).max() < 1e-9


def test_scale_metric_matches_manual(product_disk, rng):
    c = scenarios.conformal_bump(0.2)

    def cfull(x):
        return c(np.asarray(x, float)[..., 1:])

    def cgrad(x):
        x = np.asarray(x, float)
        out = np.zeros_like(x)
        out[..., 1:] = c.gradient(x[..., 1:])
        return out

    scaled = scale_metric(product_disk.metric,
                          ScalarField(func=cfull, grad=cgrad, positive=True))
    pts = np.concatenate([rng.uniform(-0.3, 0.3, (10, 1)),
                          grid(rng, n=10, lim=0.6)], axis=1)
    expected = cfull(pts)[..., None, None] * product_disk.metric.matrix(pts)
    assert np.abs(scaled.matrix(pts) - expected).max() < 1e-13


def test_invariance_of_identical_metrics(product_disk):
    entries = scenarios.scattering_entries(product_disk, 5, seed=21)
    dev = scattering_invariance(product_disk.metric, product_disk.metric,
                                product_disk.entry_surface,
                                product_disk.exit_surface, entries)
    assert dev < 1e-12
