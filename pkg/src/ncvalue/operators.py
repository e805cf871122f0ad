r"""Observables as dense complex matrices on the truncated oscillator basis.

``B[m, n]`` holds the matrix element :math:`\langle m|\beta|n\rangle`.
Non-Hermitian observables are first-class; hermiticity is checked on demand.
Position and momentum use unit mass and frequency, so they depend on
:math:`\hbar` only.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import (
    as_complex_matrix,
    check_dim,
    check_hbar,
    check_same_dim,
    check_same_hbar,
)
from .errors import ConvergenceFailure, DimensionTooLarge, NotHermitian

MAX_DIM = 64
HERMITIAN_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class Observable:
    """Operator on a ``dim``-dimensional truncated space.

    Supports ``@`` (operator product), ``+``, ``-`` and scalar ``*`` so
    linear combinations read naturally in tests and scripts.
    """

    B: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        B = as_complex_matrix(self.B, "B")
        if B.shape[0] < 2:
            raise ValueError(f"dim must be >= 2, got {B.shape[0]}")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "hbar", check_hbar(self.hbar))

    @property
    def dim(self) -> int:
        return self.B.shape[0]

    def is_hermitian(self, atol=HERMITIAN_ATOL) -> bool:
        scale = max(1.0, float(np.abs(self.B).max()))
        return bool(np.abs(self.B - self.B.conj().T).max() <= atol * scale)

    def dagger(self) -> "Observable":
        return Observable(self.B.conj().T, self.hbar)

    def __matmul__(self, other):
        if not isinstance(other, Observable):
            return NotImplemented
        return product(self, other)

    def __add__(self, other):
        if not isinstance(other, Observable):
            return NotImplemented
        check_same_dim(self, other)
        check_same_hbar(self, other)
        return Observable(self.B + other.B, self.hbar)

    def __sub__(self, other):
        if not isinstance(other, Observable):
            return NotImplemented
        check_same_dim(self, other)
        check_same_hbar(self, other)
        return Observable(self.B - other.B, self.hbar)

    def __mul__(self, alpha):
        if isinstance(alpha, Observable):
            return NotImplemented
        return Observable(complex(alpha) * self.B, self.hbar)

    __rmul__ = __mul__

    def __neg__(self):
        return Observable(-self.B, self.hbar)


def identity(dim, hbar=1.0) -> Observable:
    return Observable(np.eye(check_dim(dim)), hbar)


def ladder(dim, hbar=1.0):
    """Truncated annihilation and creation operators ``(a, a_dagger)``."""
    dim = check_dim(dim)
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)
    return Observable(a, hbar), Observable(a.T, hbar)


def number(dim, hbar=1.0) -> Observable:
    return Observable(np.diag(np.arange(check_dim(dim), dtype=float)), hbar)


def position_momentum(dim, hbar=1.0):
    r"""Position and momentum, :math:`x = \sqrt{\hbar/2}(a + a^\dagger)` and
    :math:`p = i\sqrt{\hbar/2}(a^\dagger - a)`.

    On the truncated space ``[x, p] = i hbar`` holds except in the last
    diagonal slot, where it equals ``-(dim - 1) i hbar``.
    """
    a, ad = ladder(dim, hbar)
    c = np.sqrt(check_hbar(hbar) / 2)
    x = Observable(c * (a.B + ad.B), hbar)
    p = Observable(1j * c * (ad.B - a.B), hbar)
    return x, p


def product(A: Observable, B: Observable) -> Observable:
    """Operator product ``A B``: the oracle every star-product law is checked against."""
    check_same_dim(A, B)
    check_same_hbar(A, B)
    return Observable(A.B @ B.B, A.hbar)


def power(A: Observable, k: int) -> Observable:
    if k < 0:
        raise ValueError("negative powers are not supported")
    result = identity(A.dim, A.hbar)
    for _ in range(k):
        result = product(result, A)
    return result


def commutator(A: Observable, B: Observable) -> Observable:
    check_same_dim(A, B)
    check_same_hbar(A, B)
    return Observable(A.B @ B.B - B.B @ A.B, A.hbar)


def anticommutator(A: Observable, B: Observable) -> Observable:
    check_same_dim(A, B)
    check_same_hbar(A, B)
    return Observable(A.B @ B.B + B.B @ A.B, A.hbar)


def hermitian_split(A: Observable):
    """Hermitian real and imaginary parts, ``A = re + 1j * im``."""
    Ad = A.B.conj().T
    re = Observable((A.B + Ad) / 2, A.hbar)
    im = Observable((A.B - Ad) / 2j, A.hbar)
    return re, im


def tensor(A: Observable, B: Observable, max_dim=MAX_DIM) -> Observable:
    """Kronecker product; index pair ``(m1, m2)`` maps to ``m1 * d2 + m2``."""
    check_same_hbar(A, B)
    dim = A.dim * B.dim
    if dim > max_dim:
        raise DimensionTooLarge(f"tensor dimension {dim} exceeds max_dim={max_dim}")
    return Observable(np.kron(A.B, B.B), A.hbar)


def eigendecompose(A: Observable):
    """Spectrum of a Hermitian observable.

    Returns
    -------
    eigenvalues : ndarray of float, ascending
    eigenvectors : ndarray, columns are orthonormal eigenvectors
    """
    if not A.is_hermitian():
        raise NotHermitian("eigendecompose requires a Hermitian observable")
    H = (A.B + A.B.conj().T) / 2
    try:
        vals, vecs = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    norm = max(np.linalg.norm(A.B, 2), np.finfo(float).tiny)
    residual = np.linalg.norm(A.B @ vecs - vecs * vals, axis=0).max()
    if residual > 1e-10 * norm:
        raise ConvergenceFailure(f"eigen-residual {residual:.3e} too large")
    return vals, vecs


def random_observable(dim, hbar=1.0, rng=None, hermitian=False) -> Observable:
    """Entries i.i.d. with real and imaginary parts uniform in ``[-1, 1]``.

    ``hermitian=True`` returns ``(A + A^dagger) / 2`` of such a matrix.
    """
    rng = np.random.default_rng(rng)
    B = rng.uniform(-1, 1, (dim, dim)) + 1j * rng.uniform(-1, 1, (dim, dim))
    if hermitian:
        B = (B + B.conj().T) / 2
    return Observable(B, hbar)


BUILDERS = {
    "identity": identity,
    "ladder": lambda dim, hbar=1.0: ladder(dim, hbar)[0],
    "ladder_dag": lambda dim, hbar=1.0: ladder(dim, hbar)[1],
    "x": lambda dim, hbar=1.0: position_momentum(dim, hbar)[0],
    "p": lambda dim, hbar=1.0: position_momentum(dim, hbar)[1],
    "number": number,
}


def build(name, dim, hbar=1.0) -> Observable:
    """Named builder lookup: one of :data:`BUILDERS`."""
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown operator {name!r}; choose from {sorted(BUILDERS)}") from None
    return builder(dim, hbar)
