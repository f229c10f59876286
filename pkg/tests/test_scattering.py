import numpy as np
import pytest

from lorlab import (TIME_COMPONENT, UNIT_INDUCED, NoLiftError, TangencyError,
                    inner, normalize, scatter, scatter_batch)
from lorlab import scenarios


def test_slab_straight_line_exit(slab):
    x = np.array([0.0, 0.2, -0.1])
    v_proj = np.array([0.0, 0.6, 0.0])
    rec = scatter(slab.metric, slab.entry_surface, slab.exit_surface, x,
                  v_proj)
    # lightlike completion has v_t = |v_spatial| = 0.6, so the exit point
    # is x + v / v_t evaluated at t = 1
    assert np.allclose(rec.y, [1.0, 1.2, -0.1], atol=1e-9)
    assert rec.travel == pytest.approx(1.0 / 0.6, abs=1e-8)
    assert abs(inner(slab.metric, rec.y, rec.w_proj + (rec.w_proj * 0),
                     rec.w_proj)) >= 0.0   # projection well-defined


def test_disk_chord_closed_form(product_disk):
    """Straight lightlike chords of the product cylinder: entry at angle
    zero with tangential fraction b exits where the line meets the unit
    circle again."""
    th = 0.0
    b = 0.4
    a = np.sqrt(1.0 - b * b)
    x = np.array([0.3, np.cos(th), np.sin(th)])
    tang = np.array([-np.sin(th), np.cos(th)])
    nu_out = np.array([np.cos(th), np.sin(th)])
    v_proj = np.array([1.0, b * tang[0], b * tang[1]])
    rec = scatter(product_disk.metric, product_disk.entry_surface,
                  product_disk.exit_surface, x, v_proj)
    d = b * tang - a * nu_out
    # line p(s) = x_sp + s d, |p| = 1 again at s = 2a (chord length)
    y_sp = x[1:] + 2.0 * a * d
    assert np.allclose(rec.y[1:], y_sp, atol=1e-8)
    assert rec.y[0] == pytest.approx(x[0] + 2.0 * a, abs=1e-8)
    assert rec.travel == pytest.approx(2.0 * a, abs=1e-8)


def test_scatter_homogeneity(product_disk):
    x = np.array([0.0, 1.0, 0.0])
    v_proj = np.array([1.0, 0.0, 0.3])
    base = scatter(product_disk.metric, product_disk.entry_surface,
                   product_disk.exit_surface, x, v_proj, keep_path=False)
    for a in (0.5, 2.0, 10.0):
        rec = scatter(product_disk.metric, product_disk.entry_surface,
                      product_disk.exit_surface, x, a * v_proj,
                      keep_path=False)
        assert np.allclose(rec.y, base.y, atol=1e-8)
        assert np.allclose(rec.w_proj, a * base.w_proj, rtol=1e-8,
                           atol=1e-10)


def test_scatter_grazing_entry_raises(product_disk):
    x = np.array([0.0, 1.0, 0.0])
    v_proj = np.array([1.0, 0.0, 1.0])      # |b| = 1: grazing entry
    with pytest.raises((TangencyError, NoLiftError)):
        scatter(product_disk.metric, product_disk.entry_surface,
                product_disk.exit_surface, x, v_proj)


def test_normalize_modes(product_disk):
    x = np.array([0.0, 1.0, 0.0])
    v_proj = np.array([1.0, 0.0, 0.3])
    rec = scatter(product_disk.metric, product_disk.entry_surface,
                  product_disk.exit_surface, x, v_proj, keep_path=False)
    rt = normalize(rec, TIME_COMPONENT, product_disk.metric)
    assert rt.w_proj[0] == pytest.approx(1.0, abs=1e-12)
    ru = normalize(rec, UNIT_INDUCED, product_disk.metric)
    again = normalize(ru, UNIT_INDUCED, product_disk.metric)
    assert np.allclose(ru.w_proj, again.w_proj, atol=1e-12)


def test_scatter_batch_matches_scalar(product_disk):
    entries = scenarios.scattering_entries(product_disk, 6, seed=3)
    xs = np.array([x for x, _ in entries])
    vs = np.array([v for _, v in entries])
    recs = scatter_batch(product_disk.metric, product_disk.entry_surface,
                         product_disk.exit_surface, xs, vs)
    for (x, v), rb in zip(entries, recs):
        rs = scatter(product_disk.metric, product_disk.entry_surface,
                     product_disk.exit_surface, x, v, keep_path=False)
        assert np.allclose(rb.y, rs.y, atol=1e-9)
        assert np.allclose(rb.w_proj, rs.w_proj, atol=1e-9)
        assert rb.travel == pytest.approx(rs.travel, abs=1e-9)


def test_entries_are_admissible(stationary_rot):
    entries = scenarios.scattering_entries(stationary_rot, 10, seed=5)
    for x, v in entries:
        assert abs(float(stationary_rot.entry_surface.value(x))) < 1e-9
        rec = scatter(stationary_rot.metric, stationary_rot.entry_surface,
                      stationary_rot.exit_surface, x, v, keep_path=True)
        assert rec.path.speed_drift(stationary_rot.metric) < 1e-8
