"""Property-based checks for the algebraic invariants that hold for
arbitrary inputs: bilinearity, homogeneity, and classification scaling."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from lorlab import GeodesicPath, causal_classify, inner, light_ray_transform
from lorlab.fields import SymTwoTensorField
from lorlab.geometry import LORENTZIAN, MetricField


def minkowski():
    return MetricField(
        dim=3, signature=LORENTZIAN,
        func=lambda x: np.broadcast_to(np.diag([-1.0, 1.0, 1.0]),
                                       np.shape(x)[:-1] + (3, 3)),
        dfunc=lambda x: np.zeros(np.shape(x)[:-1] + (3, 3, 3)))


finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)
nonzero_scale = st.floats(min_value=0.05, max_value=20.0)


@given(st.lists(finite, min_size=3, max_size=3),
       st.lists(finite, min_size=3, max_size=3),
       finite, finite)
@settings(max_examples=50, deadline=None)
def test_inner_is_bilinear(u, w, a, b):
    g = minkowski()
    x = np.zeros(3)
    u = np.array(u)
    w = np.array(w)
    lhs = inner(g, x, a * u + b * w, w)
    rhs = a * inner(g, x, u, w) + b * inner(g, x, w, w)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


@given(st.lists(finite, min_size=3, max_size=3), nonzero_scale)
@settings(max_examples=50, deadline=None)
def test_causal_class_scale_invariant(v, a):
    g = minkowski()
    v = np.array(v)
    x = np.zeros(3)
    base = causal_classify(g, x, v)
    scaled = causal_classify(g, x, a * v)
    if abs(inner(g, x, v, v)) > 1e-6 * max(1.0, float(v @ v)):
        assert scaled.tag == base.tag


@given(st.lists(finite, min_size=6, max_size=6), finite, finite)
@settings(max_examples=30, deadline=None)
def test_light_ray_transform_linear(entries, a, b):
    n = 801
    sigma = np.linspace(0.0, 1.0, n)
    x = np.stack([sigma, sigma, np.zeros(n)], axis=-1)
    v = np.tile([1.0, 1.0, 0.0], (n, 1))
    path = GeodesicPath(sigma=sigma, x=x, v=v, speed_squared=0.0)
    m1 = np.zeros((3, 3))
    m1[np.triu_indices(3)] = entries
    m1 = 0.5 * (m1 + m1.T)
    m2 = np.diag([1.0, -2.0, 0.5])

    def const(mat):
        return SymTwoTensorField(dim=3, func=lambda p: np.broadcast_to(
            mat, np.shape(p)[:-1] + (3, 3)))

    lhs = light_ray_transform(const(a * m1 + b * m2), path)
    rhs = (a * light_ray_transform(const(m1), path)
           + b * light_ray_transform(const(m2), path))
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs), abs(rhs))
