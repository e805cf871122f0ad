r"""Truncated Hilbert space states and their projective (ray) description.

A :class:`StateVector` is a point :math:`z^n` of the truncated Hilbert space;
a :class:`PhysicalState` is the phase-fixed representative of its ray with
:math:`|z|^2 = 2\hbar`, together with the affine chart :math:`w^n = z^n/z^0`.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import as_complex_vector, check_hbar
from .errors import ChartUndefined, DimensionMismatch, ZeroVector

ZERO_NORM2 = 1e-30


@dataclass(frozen=True, eq=False)
class StateVector:
    """Coordinates of a (not necessarily normalized) state vector.

    Parameters
    ----------
    z : array_like
        Complex coordinates ``z[n]`` on the basis ``|0>, ..., |d-1>``.
    hbar : float
        Value of the reduced Planck constant carried with the space.
    """

    z: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        z = as_complex_vector(self.z, "z")
        if z.shape[0] < 2:
            raise DimensionMismatch(f"dim must be >= 2, got {z.shape[0]}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "hbar", check_hbar(self.hbar))
        if self.norm2 <= ZERO_NORM2:
            raise ZeroVector("state vector has zero norm")

    @property
    def dim(self) -> int:
        return self.z.shape[0]

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.z, self.z).real)

    def scaled(self, lam) -> "StateVector":
        return StateVector(lam * self.z, self.hbar)

    @classmethod
    def basis(cls, dim, k, hbar=1.0, normalized=True):
        """Basis state ``|k>``, scaled to ``|z|^2 = 2 hbar`` unless told otherwise."""
        z = np.zeros(dim, dtype=complex)
        z[k] = np.sqrt(2 * hbar) if normalized else 1.0
        return cls(z, hbar)


@dataclass(frozen=True, eq=False)
class PhysicalState:
    """Phase-fixed representative of a ray.

    ``z_fixed`` has ``|z|^2 = 2 hbar`` and its pivot component (``z^0`` when
    nonzero) is real and non-negative. ``w`` is ``None`` when ``z^0 = 0``.
    """

    z_fixed: np.ndarray
    hbar: float = 1.0
    w: Optional[np.ndarray] = field(default=None, init=False)

    def __post_init__(self):
        z = as_complex_vector(self.z_fixed, "z_fixed")
        hbar = check_hbar(self.hbar)
        norm2 = float(np.vdot(z, z).real)
        if abs(norm2 - 2 * hbar) > 1e-12 * 2 * hbar:
            raise ValueError(f"|z|^2 = {norm2!r} is not 2*hbar = {2 * hbar!r}")
        pivot = _pivot(z)
        if z[pivot].imag != 0 or z[pivot].real < 0:
            raise ValueError("pivot component of z_fixed must be real and non-negative")
        object.__setattr__(self, "z_fixed", z)
        object.__setattr__(self, "hbar", hbar)
        if z[0] != 0:
            w = z[1:] / z[0]
            w.setflags(write=False)
            object.__setattr__(self, "w", w)

    @property
    def dim(self) -> int:
        return self.z_fixed.shape[0]

    @property
    def chart_valid(self) -> bool:
        return self.w is not None

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.z_fixed, self.z_fixed).real)

    @property
    def z(self) -> np.ndarray:
        return self.z_fixed

    def as_state_vector(self) -> StateVector:
        return StateVector(self.z_fixed, self.hbar)


def _pivot(z):
    nonzero = np.flatnonzero(z)
    if nonzero.size == 0:
        raise ZeroVector("state vector has zero norm")
    return int(nonzero[0])


def normalize_ray(s) -> PhysicalState:
    """Return the unique phase-fixed representative of the ray through ``s``.

    The phase is fixed so that ``z^0`` is real and positive. If ``z^0 = 0``
    the lowest-index nonzero component is used instead and the resulting
    state has no affine chart.
    """
    if isinstance(s, PhysicalState):
        s = s.as_state_vector()
    z = s.z
    norm2 = s.norm2
    if norm2 <= ZERO_NORM2:
        raise ZeroVector("state vector has zero norm")
    pivot = _pivot(z)
    phase = z[pivot] / abs(z[pivot])
    z_fixed = z * (np.conj(phase) * np.sqrt(2 * s.hbar / norm2))
    # exact zero imaginary part on the pivot; rounding leaves ~1e-17
    z_fixed[pivot] = abs(z_fixed[pivot])
    return PhysicalState(z_fixed, s.hbar)


def to_affine(p) -> np.ndarray:
    """Affine coordinates ``w^n = z^n / z^0`` for ``n = 1..d-1``."""
    if isinstance(p, StateVector):
        z = p.z
        if z[0] == 0:
            raise ChartUndefined("z^0 = 0: affine chart undefined")
        return z[1:] / z[0]
    if not p.chart_valid:
        raise ChartUndefined("z^0 = 0: affine chart undefined")
    return p.w.copy()


def ray_equal(a, b, rtol=1e-10) -> bool:
    """True iff ``a`` and ``b`` differ by a nonzero complex factor.

    Uses the Cauchy-Schwarz saturation ``|<a|b>|^2 = |a|^2 |b|^2``.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} != {b.dim}")
    return fidelity(a, b) >= 1 - rtol


def fidelity(a, b) -> float:
    """``|<a|b>|^2 / (|a|^2 |b|^2)``, in ``[0, 1]``."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} != {b.dim}")
    overlap = np.vdot(a.z, b.z)
    return float(abs(overlap) ** 2 / (a.norm2 * b.norm2))


def random_state(dim, hbar=1.0, rng=None) -> StateVector:
    """Unnormalized state with real and imaginary parts uniform in ``[-1, 1]``."""
    rng = np.random.default_rng(rng)
    return StateVector(rng.uniform(-1, 1, dim) + 1j * rng.uniform(-1, 1, dim), hbar)
