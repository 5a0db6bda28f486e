"""Finite-difference stencils and Gauss-Legendre quadrature.

These are the first-principles tools the closed forms are checked against:
second-order central differences for the differential operators and
tensor-product Gauss-Legendre rules (composite along the guide axis) for
integrals. Everything is deterministic: fixed node sets, fixed summation
order, no adaptive branching.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import StencilOutOfBounds

Array = np.ndarray


@dataclass(frozen=True, slots=True)
class Stencil:
    """Symmetric central-difference stencil of a given step.

    order is fixed at 2: first derivatives are (f(u+h) - f(u-h)) / 2h.
    bounds, when given, is the closed interval the samples must stay in.
    """

    step: float
    bounds: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if not (self.step > 0.0) or not np.isfinite(self.step):
            raise ValueError("stencil step must be positive and finite")

    def offsets(self, u: float | Array) -> tuple[Array, Array]:
        """Sample points u-h and u+h, after a bounds check."""
        lo = np.asarray(u) - self.step
        hi = np.asarray(u) + self.step
        if self.bounds is not None:
            bmin, bmax = self.bounds
            if np.any(lo < bmin) or np.any(hi > bmax):
                raise StencilOutOfBounds(
                    f"step {self.step} around {u} leaves [{bmin}, {bmax}]"
                )
        return lo, hi


def _central(f_plus: Array, f_minus: Array, step: float) -> Array:
    return (f_plus - f_minus) / (2.0 * step)


def fd_dt(func: Callable[[float], Array], t: float, stencil: Stencil) -> Array:
    """Central time derivative of func(t)."""
    t_lo, t_hi = stencil.offsets(t)
    return _central(np.asarray(func(float(t_hi))), np.asarray(func(float(t_lo))), stencil.step)


def fd_grad(
    func: Callable[[Array, Array, Array], Array],
    x: Array,
    y: Array,
    z: Array,
    stencils: Sequence[Stencil],
) -> Array:
    """Gradient of a scalar field func(x, y, z); leading axis is the component."""
    sx, sy, sz = stencils
    x_lo, x_hi = sx.offsets(x)
    y_lo, y_hi = sy.offsets(y)
    z_lo, z_hi = sz.offsets(z)
    gx = _central(func(x_hi, y, z), func(x_lo, y, z), sx.step)
    gy = _central(func(x, y_hi, z), func(x, y_lo, z), sy.step)
    gz = _central(func(x, y, z_hi), func(x, y, z_lo), sz.step)
    return np.stack([gx, gy, gz])


def fd_div(
    func: Callable[[Array, Array, Array], Array],
    x: Array,
    y: Array,
    z: Array,
    stencils: Sequence[Stencil],
) -> Array:
    """Divergence of a vector field func(x, y, z) -> shape (3, ...)."""
    sx, sy, sz = stencils
    x_lo, x_hi = sx.offsets(x)
    y_lo, y_hi = sy.offsets(y)
    z_lo, z_hi = sz.offsets(z)
    dx = _central(func(x_hi, y, z)[0], func(x_lo, y, z)[0], sx.step)
    dy = _central(func(x, y_hi, z)[1], func(x, y_lo, z)[1], sy.step)
    dz = _central(func(x, y, z_hi)[2], func(x, y, z_lo)[2], sz.step)
    return dx + dy + dz


def fd_curl(
    func: Callable[[Array, Array, Array], Array],
    x: Array,
    y: Array,
    z: Array,
    stencils: Sequence[Stencil],
) -> Array:
    """Curl of a vector field func(x, y, z) -> shape (3, ...)."""
    sx, sy, sz = stencils
    x_lo, x_hi = sx.offsets(x)
    y_lo, y_hi = sy.offsets(y)
    z_lo, z_hi = sz.offsets(z)
    f_xhi = func(x_hi, y, z)
    f_xlo = func(x_lo, y, z)
    f_yhi = func(x, y_hi, z)
    f_ylo = func(x, y_lo, z)
    f_zhi = func(x, y, z_hi)
    f_zlo = func(x, y, z_lo)
    d_y = _central(f_yhi, f_ylo, sy.step)  # d/dy of all three components
    d_z = _central(f_zhi, f_zlo, sz.step)
    d_x = _central(f_xhi, f_xlo, sx.step)
    return np.stack(
        [
            d_y[2] - d_z[1],
            d_z[0] - d_x[2],
            d_x[1] - d_y[0],
        ]
    )


@dataclass(frozen=True, slots=True)
class QuadratureRule:
    """One-dimensional quadrature nodes and weights on a fixed interval."""

    nodes: Array
    weights: Array

    def __post_init__(self) -> None:
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-d and congruent")

    @property
    def count(self) -> int:
        return int(self.nodes.size)


def gauss_legendre(lo: float, hi: float, order: int) -> QuadratureRule:
    """order-point Gauss-Legendre rule mapped to [lo, hi]."""
    if order < 1:
        raise ValueError("quadrature order must be >= 1")
    xi, wi = np.polynomial.legendre.leggauss(int(order))
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return QuadratureRule(nodes=mid + half * xi, weights=half * wi)


def composite_gauss_legendre(lo: float, hi: float, panels: int, order: int) -> QuadratureRule:
    """Gauss-Legendre rule repeated over equal panels; exactness per panel
    decides the total accuracy, so many short panels handle oscillatory
    integrands."""
    if panels < 1:
        raise ValueError("panel count must be >= 1")
    edges = np.linspace(lo, hi, panels + 1)
    parts = [gauss_legendre(edges[i], edges[i + 1], order) for i in range(panels)]
    return QuadratureRule(
        nodes=np.concatenate([p.nodes for p in parts]),
        weights=np.concatenate([p.weights for p in parts]),
    )


def integrate(func: Callable[..., Array], rules: Sequence[QuadratureRule]) -> float:
    """Tensor-product integral of func(*grids) over the rules' intervals.

    func receives ij-indexed meshgrid arrays, one per rule, and must return
    the integrand on that grid. Axes are contracted in reverse order with
    np.add.reduce, a fixed deterministic order.
    """
    grids = np.meshgrid(*[r.nodes for r in rules], indexing="ij")
    values = np.asarray(func(*grids), dtype=float)
    if values.shape != grids[0].shape:
        raise ValueError("integrand shape does not match the quadrature grid")
    for axis in reversed(range(len(rules))):
        values = np.add.reduce(values * rules[axis].weights.reshape(
            (1,) * axis + (-1,) + (1,) * (values.ndim - axis - 1)
        ), axis=axis)
    return float(values)


def convergence_order(steps: Sequence[float], residuals: Sequence[float]) -> list[float]:
    """Observed orders log(r_i/r_{i+1}) / log(h_i/h_{i+1}) for successive pairs."""
    if len(steps) != len(residuals) or len(steps) < 2:
        raise ValueError("need matching step and residual sequences of length >= 2")
    orders = []
    for i in range(len(steps) - 1):
        if residuals[i + 1] == 0.0 or residuals[i] == 0.0:
            raise ValueError("zero residual: convergence order undefined")
        orders.append(
            float(np.log(residuals[i] / residuals[i + 1]) / np.log(steps[i] / steps[i + 1]))
        )
    return orders
