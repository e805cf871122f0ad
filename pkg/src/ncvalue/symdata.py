r"""Symmetry data: the noncommutative value of an observable at a state.

For a scalar function :math:`F` (``H_beta`` in the ``H`` chart, ``f_beta``
otherwise) the triplet holds

* ``f``    -- the value :math:`F`,
* ``X``    -- :math:`X_n = i\partial_n F`,
* ``Xbar`` -- :math:`\bar X_n = -i\partial_{\bar n} F`,
* ``K``    -- ``K[m, n]`` :math:`= K_{m\bar n} = -i\partial_m\partial_{\bar n} F`.

The product laws (:func:`sd_product_H`, :func:`sd_product_z`,
:func:`sd_product_w`) compose the values of two observables at one state into
the value of their operator product.
"""

from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from ._validation import check_same_dim
from .errors import DimensionMismatch, StateMismatch, ZeroVector
from .hilbert import ZERO_NORM2, PhysicalState, StateVector, normalize_ray
from .kahler import Chart, affine_point, metric_chart, same_state

State = Union[StateVector, PhysicalState]


@dataclass(frozen=True, eq=False)
class SymmetryData:
    """Chart-tagged triplet ``(f, X, K)`` with ``Xbar`` kept separately.

    ``state`` is the :class:`StateVector` the ``H``/``z`` data were evaluated
    at, or the :class:`PhysicalState` for affine data. Components of affine
    data are indexed ``1..d-1`` (stored at positions ``0..d-2``).
    """

    chart: Chart
    f: complex
    X: np.ndarray
    Xbar: np.ndarray
    K: np.ndarray
    state: State

    @property
    def hbar(self) -> float:
        return self.state.hbar

    @property
    def dim_data(self) -> int:
        return self.X.shape[0]

    def components(self):
        """``(f, X, Xbar, K)`` as a tuple, for componentwise comparisons."""
        return self.f, self.X, self.Xbar, self.K

    def _check_compatible(self, other):
        if self.chart is not other.chart:
            raise ValueError("symmetry data in different charts")
        if not same_state(self, other):
            raise StateMismatch("symmetry data evaluated at different states")

    def __add__(self, other):
        if not isinstance(other, SymmetryData):
            return NotImplemented
        self._check_compatible(other)
        return replace(
            self,
            f=self.f + other.f,
            X=self.X + other.X,
            Xbar=self.Xbar + other.Xbar,
            K=self.K + other.K,
        )

    def __sub__(self, other):
        if not isinstance(other, SymmetryData):
            return NotImplemented
        return self + (-1) * other

    def __mul__(self, alpha):
        if isinstance(alpha, SymmetryData):
            return NotImplemented
        alpha = complex(alpha)
        return replace(self, f=alpha * self.f, X=alpha * self.X, Xbar=alpha * self.Xbar, K=alpha * self.K)

    __rmul__ = __mul__


def _as_state_vector(s) -> StateVector:
    if isinstance(s, PhysicalState):
        return s.as_state_vector()
    return s


def symdata_H(beta, s) -> SymmetryData:
    """Symmetry data of ``H_beta``; ``K`` is the (state-independent) matrix of ``beta``."""
    s = _as_state_vector(s)
    check_same_dim(beta, s)
    B, z, hbar = beta.B, s.z, s.hbar
    c = 1j / (2 * hbar)
    f = complex(np.conj(z) @ B @ z) / (2 * hbar)
    X = c * (np.conj(z) @ B)
    Xbar = -c * (B @ z)
    K = -c * B.T
    return SymmetryData(Chart.H, f, X, Xbar, K, s)


def _fs_data(B, z, norm2):
    """Fubini-Study data of ``zbar^T B z / norm2`` at homogeneous point ``z``.

    Shared by the homogeneous chart (``norm2 = |z|^2``) and the affine chart,
    where ``z = (1, w)`` and ``norm2 = 1 + |w|^2``.
    """
    zb = np.conj(z)
    zbB = zb @ B
    Bz = B @ z
    f = complex(zbB @ z) / norm2
    X = (-1j / norm2) * (f * zb - zbB)
    Xbar = (1j / norm2) * (f * z - Bz)
    K = (1j / norm2) * (
        f * np.eye(z.shape[0]) + 1j * np.outer(zb, Xbar) - 1j * np.outer(X, z) - B.T
    )
    return f, X, Xbar, K


def symdata_z(beta, s) -> SymmetryData:
    """Symmetry data of ``f_beta`` in homogeneous coordinates at the raw ``z``."""
    s = _as_state_vector(s)
    check_same_dim(beta, s)
    if s.norm2 <= ZERO_NORM2:
        raise ZeroVector("state vector has zero norm")
    f, X, Xbar, K = _fs_data(beta.B, s.z, s.norm2)
    return SymmetryData(Chart.z, f, X, Xbar, K, s)


def symdata_w(beta, p) -> SymmetryData:
    """Symmetry data of ``f_beta`` in affine coordinates ``w^n = z^n / z^0``.

    Sums run over the full basis with the convention ``w^0 = 1``; the returned
    components cover ``n = 1..d-1`` only.
    """
    if isinstance(p, StateVector):
        p = normalize_ray(p)
    check_same_dim(beta, p)
    w = affine_point(p)
    w_full = np.concatenate(([1.0 + 0j], w))
    f, X, Xbar, K = _fs_data(beta.B, w_full, 1.0 + float(np.vdot(w, w).real))
    return SymmetryData(Chart.w, f, X[1:], Xbar[1:], K[1:, 1:], p)


SYMDATA = {Chart.H: symdata_H, Chart.z: symdata_z, Chart.w: symdata_w}


def symdata(beta, state, chart) -> SymmetryData:
    """Symmetry data of ``beta`` at ``state`` in the given chart."""
    return SYMDATA[Chart.parse(chart)](beta, state)


def _check_pair(a, b, chart):
    if a.chart is not chart or b.chart is not chart:
        raise ValueError(f"expected {chart.value}-chart symmetry data")
    if a.X.shape != b.X.shape:
        raise DimensionMismatch("symmetry data dimensions differ")
    if not same_state(a, b):
        raise StateMismatch("symmetry data evaluated at different states")


def _resolve_metric(a, chart, metric):
    if metric is None:
        return metric_chart(chart, a.state)
    if metric.chart is not chart:
        raise ValueError(f"expected a {chart.value}-chart metric")
    if metric.dim != a.dim_data:
        raise DimensionMismatch("metric and symmetry data dimensions differ")
    return metric


def sd_product_H(a: SymmetryData, b: SymmetryData) -> SymmetryData:
    """Value of ``beta gamma`` from the ``H``-chart values of ``beta`` and ``gamma``."""
    _check_pair(a, b, Chart.H)
    c = 2j * a.hbar
    f = complex(2 * a.hbar * (a.X @ b.Xbar))
    X = c * (b.K @ a.X)
    Xbar = c * (a.K.T @ b.Xbar)
    K = c * (b.K @ a.K)
    return SymmetryData(Chart.H, f, X, Xbar, K, a.state)


def sd_product_z(a: SymmetryData, b: SymmetryData, metric=None) -> SymmetryData:
    """Homogeneous-chart product law.

    The lowered metric enters the ``K`` component through the term
    ``(i |z|^2 g[m, n] / hbar) * sum_l X_beta[l] Xbar_gamma[l]``.
    """
    _check_pair(a, b, Chart.z)
    metric = _resolve_metric(a, Chart.z, metric)
    hbar = a.hbar
    norm2 = a.state.norm2
    XXbar = a.X @ b.Xbar
    f = complex(a.f * b.f + norm2 * XXbar)
    X = a.f * b.X + a.X * b.f + 1j * norm2 * (b.K @ a.X)
    Xbar = a.f * b.Xbar + a.Xbar * b.f + 1j * norm2 * (a.K.T @ b.Xbar)
    K = (
        a.f * b.K
        + a.K * b.f
        + 1j * norm2 * (b.K @ a.K)
        - 1j * np.outer(b.X, a.Xbar)
        + (1j * norm2 / hbar) * metric.g * XXbar
    )
    return SymmetryData(Chart.z, f, X, Xbar, K, a.state)


def sd_product_w(a: SymmetryData, b: SymmetryData, metric=None) -> SymmetryData:
    """Affine-chart product law; every contraction runs through the inverse metric."""
    _check_pair(a, b, Chart.w)
    metric = _resolve_metric(a, Chart.w, metric)
    hbar = a.hbar
    gi, g = metric.g_inv, metric.g
    XgXbar = a.X @ gi @ b.Xbar
    f = complex(a.f * b.f + hbar * XgXbar)
    X = a.f * b.X + a.X * b.f + 1j * hbar * (b.K @ (gi.T @ a.X))
    Xbar = a.f * b.Xbar + a.Xbar * b.f + 1j * hbar * (a.K.T @ (gi @ b.Xbar))
    K = (
        a.f * b.K
        + a.K * b.f
        + 1j * hbar * (b.K @ gi.T @ a.K)
        - 1j * np.outer(b.X, a.Xbar)
        + 1j * g * XgXbar
    )
    return SymmetryData(Chart.w, f, X, Xbar, K, a.state)


def sd_product(a: SymmetryData, b: SymmetryData, metric=None) -> SymmetryData:
    """Dispatch to the product law of the chart of ``a``."""
    if a.chart is Chart.H:
        return sd_product_H(a, b)
    if a.chart is Chart.z:
        return sd_product_z(a, b, metric)
    return sd_product_w(a, b, metric)
