r"""Function representations of observables, metric charts and Kähler products.

Two algebra isomorphisms send an operator :math:`\beta` to functions of the
state coordinates:

* :func:`H_function`, the quadratic form :math:`\bar z^m z^n B_{mn}/2\hbar`
  on the Hilbert space, multiplied with :math:`\star_K` over the flat metric;
* :func:`f_function`, the normalization-independent expectation value on
  projective space, multiplied with :math:`\star_\kappa` over the
  Fubini-Study metric (homogeneous or affine coordinates).

Index convention: a metric matrix ``g_inv[m, n]`` holds :math:`g^{m\bar n}` and
``g[m, n]`` holds :math:`g_{m\bar n}`. The contraction over the barred index,
:math:`g_{m\bar n} g^{l\bar n} = \delta_m^l`, reads ``g @ g_inv.T`` as matrices.

The star products take precomputed symmetry data (see :mod:`ncvalue.symdata`)
rather than raw observables. With :math:`X_n = i\partial_n F` and
:math:`\bar X_n = -i\partial_{\bar n} F`, the gradient contraction
:math:`\partial_m F_\beta\, g^{m\bar n} \partial_{\bar n} F_\gamma` equals
``X_beta @ g_inv @ Xbar_gamma``.
"""

import enum
from dataclasses import dataclass

import numpy as np

from ._validation import check_same_dim
from .errors import ChartUndefined, DimensionMismatch, StateMismatch, ZeroVector
from .hilbert import ZERO_NORM2, PhysicalState


class Chart(str, enum.Enum):
    """Coordinate chart of a metric or of symmetry data.

    ``H`` is the flat Hilbert-space chart (functions ``H_beta``), ``z`` the
    homogeneous and ``w`` the affine Fubini-Study chart (functions ``f_beta``).
    """

    H = "H"
    z = "z"
    w = "w"

    @classmethod
    def parse(cls, value) -> "Chart":
        if isinstance(value, cls):
            return value
        aliases = {
            "hilbertflat": cls.H,
            "hchart": cls.H,
            "homogeneousfs": cls.z,
            "affinefs": cls.w,
        }
        key = str(value)
        if key in cls._value2member_map_:
            return cls(key)
        try:
            return aliases[key.lower()]
        except KeyError:
            raise ValueError(f"unknown chart {value!r}; expected H, z or w") from None


def _coords(state):
    if isinstance(state, PhysicalState):
        return state.z_fixed
    return state.z


def H_function(beta, s) -> complex:
    r""":math:`H_\beta = \frac{1}{2\hbar}\sum_{mn} \bar z^m z^n \langle m|\beta|n\rangle`."""
    check_same_dim(beta, s)
    z = _coords(s)
    return complex(np.conj(z) @ beta.B @ z) / (2 * s.hbar)


def f_function(beta, s) -> complex:
    r""":math:`f_\beta = \frac{2\hbar}{|z|^2} H_\beta`, the expectation value of ``beta``.

    Independent of the scale and phase of ``z``.
    """
    check_same_dim(beta, s)
    z = _coords(s)
    norm2 = float(np.vdot(z, z).real)
    if norm2 <= ZERO_NORM2:
        raise ZeroVector("state vector has zero norm")
    return complex(np.conj(z) @ beta.B @ z) / norm2


@dataclass(frozen=True, eq=False)
class MetricChart:
    """Metric and inverse metric of one chart, evaluated at ``point``.

    ``point`` holds the coordinates the components were evaluated at:
    ``z`` for the ``H`` and ``z`` charts, ``w`` for the affine chart.
    The homogeneous Fubini-Study metric is degenerate along ``z``, so its
    ``g`` and ``g_inv`` are only mutually inverse on the horizontal subspace.
    """

    chart: Chart
    point: np.ndarray
    g_inv: np.ndarray
    g: np.ndarray
    hbar: float

    @property
    def dim(self) -> int:
        return self.g_inv.shape[0]


def metric_chart(chart, state) -> MetricChart:
    """Evaluate the metric of ``chart`` at ``state``.

    Parameters
    ----------
    chart : Chart or str
    state : StateVector or PhysicalState
        For the affine chart the state must have ``z^0 != 0``.
    """
    chart = Chart.parse(chart)
    hbar = state.hbar
    z = _coords(state)
    d = z.shape[0]
    if chart is Chart.H:
        eye = np.eye(d, dtype=complex)
        return MetricChart(chart, z, 2 * eye, eye / 2, hbar)
    if chart is Chart.z:
        norm2 = float(np.vdot(z, z).real)
        if norm2 <= ZERO_NORM2:
            raise ZeroVector("state vector has zero norm")
        g_inv = (norm2 * np.eye(d) - np.outer(z, np.conj(z))) / hbar
        g = hbar * (norm2 * np.eye(d) - np.outer(np.conj(z), z)) / norm2**2
        return MetricChart(chart, z, g_inv, g, hbar)
    w = affine_point(state)
    return affine_metric(w, hbar)


def affine_point(state) -> np.ndarray:
    if isinstance(state, PhysicalState):
        if not state.chart_valid:
            raise ChartUndefined("z^0 = 0: affine chart undefined")
        return state.w
    z = _coords(state)
    if z[0] == 0:
        raise ChartUndefined("z^0 = 0: affine chart undefined")
    return z[1:] / z[0]


def affine_metric(w, hbar) -> MetricChart:
    r"""Fubini-Study metric in affine coordinates.

    :math:`g^{m\bar n} = (1+|w|^2)(\delta^{mn} + w^m\bar w^n)/\hbar` and
    :math:`g_{m\bar n} = \hbar((1+|w|^2)\delta_{mn} - \bar w_m w_n)/(1+|w|^2)^2`.
    """
    w = np.asarray(w, dtype=complex)
    n = w.shape[0]
    s = 1.0 + float(np.vdot(w, w).real)
    g_inv = s * (np.eye(n) + np.outer(w, np.conj(w))) / hbar
    g = hbar * (s * np.eye(n) - np.outer(np.conj(w), w)) / s**2
    return MetricChart(Chart.w, w, g_inv, g, hbar)


def same_state(a, b) -> bool:
    """True when two symmetry data were evaluated at identical coordinates."""
    if a.state is b.state:
        return True
    return a.state.hbar == b.state.hbar and np.array_equal(_coords(a.state), _coords(b.state))


def _check_pair(a, b, chart):
    for sd in (a, b):
        if sd.chart is not chart:
            raise ValueError(f"expected {chart.value}-chart data, got {sd.chart.value}")
    if a.X.shape != b.X.shape:
        raise DimensionMismatch("symmetry data dimensions differ")
    if not same_state(a, b):
        raise StateMismatch("symmetry data evaluated at different states")


def _resolve_metric(a, chart, metric):
    if metric is None:
        return metric_chart(chart, a.state)
    if metric.chart is not chart:
        raise ValueError(f"expected a {chart.value}-chart metric, got {metric.chart.value}")
    if metric.dim != a.X.shape[0]:
        raise DimensionMismatch("metric and symmetry data dimensions differ")
    return metric


def star_K(a, b, metric=None) -> complex:
    r""":math:`H_\beta \star_K H_\gamma = \hbar\,\partial_m H_\beta\, G^{m\bar n}\partial_{\bar n} H_\gamma`.

    ``a`` and ``b`` are ``H``-chart symmetry data at the same state. The
    result is :math:`H_{\beta\gamma}` at that state.
    """
    _check_pair(a, b, Chart.H)
    metric = _resolve_metric(a, Chart.H, metric)
    return complex(a.hbar * (a.X @ metric.g_inv @ b.Xbar))


def star_kappa_homogeneous(a, b, metric=None) -> complex:
    r""":math:`f_\beta \star_\kappa f_\gamma = f_\beta f_\gamma + \hbar\,\partial_m f_\beta\,\tilde g^{m\bar n}\partial_{\bar n} f_\gamma`."""
    _check_pair(a, b, Chart.z)
    metric = _resolve_metric(a, Chart.z, metric)
    return complex(a.f * b.f + a.hbar * (a.X @ metric.g_inv @ b.Xbar))


def star_kappa_affine(a, b, metric=None) -> complex:
    """Same product as :func:`star_kappa_homogeneous` in affine coordinates."""
    _check_pair(a, b, Chart.w)
    metric = _resolve_metric(a, Chart.w, metric)
    return complex(a.f * b.f + a.hbar * (a.X @ metric.g_inv @ b.Xbar))


def star_product(a, b, metric=None) -> complex:
    """Dispatch to the star product matching the chart of ``a``."""
    return {
        Chart.H: star_K,
        Chart.z: star_kappa_homogeneous,
        Chart.w: star_kappa_affine,
    }[a.chart](a, b, metric)
