"""Closed-form field evaluators on a single coordinate chart.

Every evaluator is vectorized: a point argument of shape ``(..., dim)``
yields values with the same leading axes.  Derivative callables are
optional; when absent, central finite differences with a point-scaled
step are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import NotPositiveDefiniteError

Array = np.ndarray

FD_SCALE = 1e-5


def fd_step(x: Array) -> Array:
    """Finite-difference step 1e-5 * max(1, |x|), per point."""
    x = np.asarray(x, float)
    return FD_SCALE * np.maximum(1.0, np.linalg.norm(x, axis=-1))


def _central_diff(func, x: Array, value_shape: tuple[int, ...]) -> Array:
    """d_k func(x) by central differences; output (..., dim, *value_shape)."""
    x = np.asarray(x, float)
    dim = x.shape[-1]
    h = fd_step(x)[..., None]                      # (..., 1)
    eye = np.eye(dim)
    # stencil points (..., dim, 2, dim)
    xp = x[..., None, :] + h[..., None] * eye
    xm = x[..., None, :] - h[..., None] * eye
    fp = np.asarray(func(xp), float)
    fm = np.asarray(func(xm), float)
    denom = (2.0 * h).reshape(h.shape[:-1] + (1,) * (1 + len(value_shape)))
    return (fp - fm) / denom


@dataclass(frozen=True)
class ScalarField:
    """Scalar function on the chart, optionally with an analytic gradient."""

    func: Callable[[Array], Array]
    grad: Optional[Callable[[Array], Array]] = None
    positive: bool = False

    def __call__(self, x: Array) -> Array:
        val = np.asarray(self.func(np.asarray(x, float)), float)
        if self.positive and np.any(val <= 0.0):
            raise NotPositiveDefiniteError("scalar field declared positive is not")
        return val

    def gradient(self, x: Array) -> Array:
        if self.grad is not None:
            return np.asarray(self.grad(np.asarray(x, float)), float)
        return _central_diff(self.func, x, ())

    @staticmethod
    def constant(value: float) -> "ScalarField":
        c = float(value)
        return ScalarField(func=lambda x: np.full(np.shape(x)[:-1], c),
                           grad=lambda x: np.zeros(np.shape(x)),
                           positive=c > 0)


@dataclass(frozen=True)
class CovectorField:
    """One-form with components omega_j(x); jac[..., i, j] = d_i omega_j."""

    dim: int
    func: Callable[[Array], Array]
    jac: Optional[Callable[[Array], Array]] = None

    def __call__(self, x: Array) -> Array:
        return np.asarray(self.func(np.asarray(x, float)), float)

    def jacobian(self, x: Array) -> Array:
        if self.jac is not None:
            return np.asarray(self.jac(np.asarray(x, float)), float)
        return _central_diff(self.func, x, (self.dim,))

    def exterior_derivative(self, x: Array) -> Array:
        """(d omega)_ij = d_i omega_j - d_j omega_i."""
        J = self.jacobian(x)
        return J - np.swapaxes(J, -1, -2)

    @staticmethod
    def zero(dim: int) -> "CovectorField":
        return CovectorField(dim=dim,
                             func=lambda x: np.zeros(np.shape(x)),
                             jac=lambda x: np.zeros(np.shape(x) + (dim,)))


@dataclass(frozen=True)
class SymTwoTensorField:
    """Symmetric covariant two-tensor field f_ij(x)."""

    dim: int
    func: Callable[[Array], Array]

    def __call__(self, x: Array) -> Array:
        f = np.asarray(self.func(np.asarray(x, float)), float)
        return 0.5 * (f + np.swapaxes(f, -1, -2))

    @staticmethod
    def zero(dim: int) -> "SymTwoTensorField":
        return SymTwoTensorField(dim=dim,
                                 func=lambda x: np.zeros(np.shape(x) + (dim,)))
