"""Consequences of the noncommutative value at a fixed state.

* :func:`reconstruct_state` recovers the state from the first-derivative data
  of an invertible observable.
* :func:`moments` compares the iterated-product values ``f(beta^k)`` with the
  moments of the von Neumann outcome distribution.
* :func:`evaluation_map` assigns a value to every observable in a list.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import check_same_dim
from .errors import (
    ChartUndefined,
    DimensionMismatch,
    InconsistentData,
    MomentOrderTooLarge,
    NotHermitian,
    SingularOperator,
)
from .hilbert import PhysicalState, StateVector, normalize_ray
from .kahler import Chart, f_function
from .operators import Observable, eigendecompose, identity, product
from .symdata import sd_product_z, symdata, symdata_z
from .tolerance import REL_TOL, relative_residual

MAX_CONDITION = 1e8
MAX_MOMENT_ORDER = 12
SCALE_THRESHOLD = 10.0


def _real_block(M):
    """Real 2n x 2n form of ``y -> M y`` acting on ``(Re y, Im y)``."""
    return np.block([[M.real, -M.imag], [M.imag, M.real]])


def _real_block_conj(M):
    """Real form of ``y -> M conj(y)``."""
    return np.block([[M.real, M.imag], [M.imag, -M.real]])


def reconstruct_state(beta, X, Xbar=None, *, hbar=None, return_residual=False):
    r"""Recover the ray of the state from ``H``-chart first derivatives.

    Solves :math:`X_n = \frac{i}{2\hbar}\sum_m \bar z^m B_{mn}` for
    :math:`\bar z` by a least-squares (SVD) solve. When ``Xbar`` is given the
    conjugate equations :math:`\bar X_n = -\frac{i}{2\hbar}(Bz)_n` are stacked
    on top, which makes inconsistent data detectable.

    Parameters
    ----------
    beta : Observable
        Invertible observable (condition number at most ``1e8``).
    X, Xbar : array_like
    hbar : float, optional
        Defaults to ``beta.hbar``.
    return_residual : bool
        Also return the residual of the solve, in units of ``X``.

    Raises
    ------
    SingularOperator
        If ``beta`` is (numerically) not invertible.
    InconsistentData
        If the residual exceeds ``1e-8 * ||(X, Xbar)||``.
    """
    hbar = beta.hbar if hbar is None else hbar
    X = np.asarray(X, dtype=complex)
    B = beta.B
    if X.shape != (beta.dim,):
        raise DimensionMismatch(f"X has shape {X.shape}, operator dim is {beta.dim}")
    cond = np.linalg.cond(B)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularOperator(f"operator condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}")

    blocks = [_real_block(B.T)]
    rhs = [-2j * hbar * X]
    if Xbar is not None:
        Xbar = np.asarray(Xbar, dtype=complex)
        if Xbar.shape != X.shape:
            raise DimensionMismatch(f"Xbar has shape {Xbar.shape}, X has {X.shape}")
        blocks.append(_real_block_conj(B))
        rhs.append(2j * hbar * Xbar)
    A = np.vstack(blocks)
    b = np.concatenate([np.concatenate([r.real, r.imag]) for r in rhs])
    y, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.linalg.norm(A @ y - b)) / (2 * hbar)

    data_norm = np.linalg.norm(X) if Xbar is None else np.hypot(np.linalg.norm(X), np.linalg.norm(Xbar))
    if residual > 1e-8 * data_norm:
        raise InconsistentData(f"residual {residual:.3e} exceeds 1e-8 * ||X|| = {1e-8 * data_norm:.3e}")
    n = beta.dim
    z = y[:n] - 1j * y[n:]
    state = normalize_ray(StateVector(z, hbar))
    if return_residual:
        return state, residual
    return state


def reconstruct_from_symdata(beta, sd, *, return_residual=False):
    """Reconstruct the state behind ``H``-chart symmetry data of ``beta``.

    Besides solving for the state, checks that the stored second derivatives
    are the matrix elements of ``beta``.
    """
    if sd.chart is not Chart.H:
        raise ChartUndefined(f"reconstruction needs H-chart data, got {sd.chart.value!r}")
    if sd.dim_data != beta.dim:
        raise DimensionMismatch(f"symmetry data dim {sd.dim_data} != operator dim {beta.dim}")
    expected_K = (-0.5j / sd.hbar) * beta.B.T
    mismatch = np.linalg.norm(sd.K - expected_K)
    if mismatch > 1e-8 * max(np.linalg.norm(expected_K), 1e-300):
        raise InconsistentData("second derivatives do not match the operator matrix elements")
    return reconstruct_state(beta, sd.X, sd.Xbar, hbar=sd.hbar, return_residual=return_residual)


def _as_physical(p):
    if isinstance(p, StateVector):
        return normalize_ray(p)
    return p


@dataclass(frozen=True, eq=False)
class MomentReport:
    """Moments ``mu_k``, ``k = 1..order``, of an observable on a state.

    ``exact`` holds ``f(beta^k)`` from repeated operator products, ``chained``
    the same values from chaining the homogeneous-chart product law, and
    ``spectral`` the moments ``sum_j p_j lambda_j^k`` of the outcome
    distribution. ``scale`` is the factor the operator was divided by before
    taking powers; all reported moments are already rescaled back.
    """

    state: PhysicalState
    exact: np.ndarray
    spectral: np.ndarray
    chained: np.ndarray
    probabilities: np.ndarray
    eigenvalues: np.ndarray
    order: int
    scale: float = 1.0
    observable_id: str = ""

    def discrepancy(self, rtol=REL_TOL) -> float:
        """Largest relative disagreement of ``exact`` and ``chained`` with ``spectral``."""
        return max(
            relative_residual(self.exact, self.spectral, rtol),
            relative_residual(self.chained, self.spectral, rtol),
        )


def moments(beta, p, order, observable_id="") -> MomentReport:
    """Moments of a Hermitian observable, computed two independent ways."""
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise ValueError(f"moment order must be a positive integer, got {order!r}")
    if order > MAX_MOMENT_ORDER:
        raise MomentOrderTooLarge(f"moment order {order} exceeds {MAX_MOMENT_ORDER}")
    if not beta.is_hermitian():
        raise NotHermitian("moments require a Hermitian observable")
    p = _as_physical(p)
    check_same_dim(beta, p)

    norm = float(np.linalg.norm(beta.B, 2))
    scale = norm if norm > SCALE_THRESHOLD else 1.0
    b = Observable(beta.B / scale, beta.hbar)
    powers = scale ** np.arange(1, order + 1)

    exact = np.empty(order)
    chained = np.empty(order)
    bk = identity(b.dim, b.hbar)
    value = symdata_z(b, p)
    first = value
    for k in range(order):
        bk = product(bk, b)
        exact[k] = f_function(bk, p).real
        if k:
            value = sd_product_z(value, first)
        chained[k] = value.f.real

    vals, vecs = eigendecompose(b)
    amplitudes = vecs.conj().T @ p.z_fixed
    probs = np.abs(amplitudes) ** 2 / p.norm2
    spectral = np.array([probs @ vals**k for k in range(1, order + 1)])

    return MomentReport(
        state=p,
        exact=exact * powers,
        spectral=spectral * powers,
        chained=chained * powers,
        probabilities=probs,
        eigenvalues=vals * scale,
        order=int(order),
        scale=scale,
        observable_id=observable_id,
    )


def sample_moments(report: MomentReport, shots, rng) -> np.ndarray:
    """Finite-shot estimate of the moments from simulated outcomes.

    Outcomes are drawn from the report's outcome distribution with the
    caller's generator; this is a demonstration, not an estimator.
    """
    rng = np.random.default_rng(rng)
    probs = report.probabilities / report.probabilities.sum()
    outcomes = rng.choice(report.eigenvalues, size=int(shots), p=probs)
    return np.array([np.mean(outcomes**k) for k in range(1, report.order + 1)])


def evaluation_map(state, betas, chart):
    """The noncommutative value of each observable in ``betas`` at ``state``."""
    return [symdata(beta, state, chart) for beta in betas]
