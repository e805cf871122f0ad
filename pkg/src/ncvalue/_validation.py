"""Input validation helpers shared by the public functions."""

import numbers

import numpy as np

from .errors import DimensionMismatch


def check_hbar(hbar):
    if isinstance(hbar, bool) or not isinstance(hbar, numbers.Real):
        raise TypeError(f"hbar must be a real number, got {type(hbar).__name__}")
    hbar = float(hbar)
    if not np.isfinite(hbar) or hbar <= 0:
        raise ValueError(f"hbar must be positive and finite, got {hbar}")
    return hbar


def check_dim(dim, minimum=2):
    if isinstance(dim, bool) or not isinstance(dim, numbers.Integral):
        raise TypeError(f"dim must be an integer, got {type(dim).__name__}")
    if dim < minimum:
        raise ValueError(f"dim must be >= {minimum}, got {dim}")
    return int(dim)


def as_complex_vector(z, name="z"):
    """Return a read-only complex128 copy of a 1-d array-like."""
    arr = np.array(z, dtype=np.complex128, copy=True)
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def as_complex_matrix(B, name="B"):
    """Return a read-only complex128 copy of a square 2-d array-like."""
    arr = np.array(B, dtype=np.complex128, copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


def check_same_dim(*objs):
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimension mismatch: {sorted(dims)}")
    return dims.pop()


def check_same_hbar(*objs):
    hbars = {o.hbar for o in objs}
    if len(hbars) != 1:
        raise DimensionMismatch(f"hbar mismatch: {sorted(hbars)}")
    return hbars.pop()
