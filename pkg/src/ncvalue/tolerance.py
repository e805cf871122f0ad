"""Componentwise error measures used by the conformance sweep and the tests.

A component passes when ``|actual - expected| <= rtol * |expected|``, with
an absolute floor of ``ABS_FLOOR`` for components whose exact value is zero
(in practice: below ``ABS_FLOOR / rtol`` in magnitude). The reported
residual is normalized so that passing means ``residual <= rtol``.
"""

import numpy as np

REL_TOL = 1e-10
ABS_FLOOR = 1e-12


def relative_residual(actual, expected, rtol=REL_TOL, floor=ABS_FLOOR) -> float:
    actual = np.asarray(actual, dtype=complex)
    expected = np.asarray(expected, dtype=complex)
    if actual.shape != expected.shape:
        raise ValueError(f"shape mismatch: {actual.shape} != {expected.shape}")
    if actual.size == 0:
        return 0.0
    scale = np.maximum(np.abs(expected), floor / rtol)
    return float((np.abs(actual - expected) / scale).max())


def symdata_residuals(actual, expected, rtol=REL_TOL, floor=ABS_FLOOR) -> dict:
    """Per-component residuals between two symmetry-data triplets."""
    if actual.chart is not expected.chart:
        raise ValueError("symmetry data in different charts")
    return {
        name: relative_residual(getattr(actual, name), getattr(expected, name), rtol, floor)
        for name in ("f", "X", "Xbar", "K")
    }
