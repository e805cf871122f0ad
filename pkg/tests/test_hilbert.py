import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from ncvalue import (
    ChartUndefined,
    DimensionMismatch,
    PhysicalState,
    StateVector,
    ZeroVector,
    normalize_ray,
    random_state,
    ray_equal,
    to_affine,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complex_entry = st.builds(complex, finite, finite)


@st.composite
def states(draw, min_dim=2, max_dim=6):
    d = draw(st.integers(min_dim, max_dim))
    z = np.array(draw(st.lists(complex_entry, min_size=d, max_size=d)))
    hbar = draw(st.sampled_from([0.5, 1.0, 2.0]))
    if np.vdot(z, z).real < 1e-6:
        z[0] = 1.0
    return StateVector(z, hbar)


nonzero_scalar = st.builds(
    lambda r, t: r * np.exp(1j * t),
    st.floats(1e-3, 1e3),
    st.floats(-np.pi, np.pi),
)


def test_basis_state_already_normalized():
    p = normalize_ray(StateVector([1, 0], hbar=0.5))
    np.testing.assert_array_equal(p.z_fixed, [1, 0])
    assert p.chart_valid
    np.testing.assert_array_equal(p.w, [0])


def test_phase_fixed_on_first_nonzero_component():
    p = normalize_ray(StateVector([0, 5j], hbar=0.5))
    np.testing.assert_allclose(p.z_fixed, [0, 1], atol=1e-15)
    assert p.z_fixed[1].imag == 0
    assert not p.chart_valid
    with pytest.raises(ChartUndefined):
        to_affine(p)


def test_normalize_three_dim_example():
    # z = (1+i, 2, -i), |z|^2 = 7, arg z^0 = pi/4, 2 hbar = 1
    p = normalize_ray(StateVector([1 + 1j, 2, -1j], hbar=0.5))
    expected = np.array([np.sqrt(2 / 7), np.sqrt(2 / 7) * (1 - 1j), -(1 + 1j) / np.sqrt(14)])
    np.testing.assert_allclose(p.z_fixed, expected, rtol=0, atol=1e-15)
    np.testing.assert_allclose(p.w, [1 - 1j, -(1 + 1j) / 2], atol=1e-15)


def test_to_affine_examples():
    assert np.array_equal(to_affine(normalize_ray(StateVector([1, 0, 0]))), [0, 0])
    z = np.ones(3) / np.sqrt(3) * np.sqrt(2)
    np.testing.assert_allclose(to_affine(normalize_ray(StateVector(z))), [1, 1], atol=1e-15)
    rng = np.random.default_rng(3)
    s = random_state(5, rng=rng)
    np.testing.assert_allclose(to_affine(normalize_ray(s)), s.z[1:] / s.z[0], rtol=1e-13)
    np.testing.assert_allclose(to_affine(s), s.z[1:] / s.z[0], rtol=0)


def test_ray_equal_examples():
    assert ray_equal(StateVector([1, 0]), StateVector([3j, 0]))
    assert not ray_equal(StateVector([1, 0]), StateVector([0, 1]))
    s = random_state(4, rng=7)
    assert ray_equal(s, s.scaled(np.exp(0.7j)))
    with pytest.raises(DimensionMismatch):
        ray_equal(StateVector([1, 0]), StateVector([1, 0, 0]))


def test_zero_vector_rejected():
    with pytest.raises(ZeroVector):
        StateVector([0, 0, 0])


def test_invalid_physical_state_rejected():
    with pytest.raises(ValueError):
        PhysicalState([1, 0], hbar=1.0)  # |z|^2 != 2 hbar
    with pytest.raises(ValueError):
        PhysicalState([1j, 1], hbar=1.0)  # pivot not real


def test_states_are_immutable():
    s = StateVector([1, 2])
    with pytest.raises(ValueError):
        s.z[0] = 3


@given(states())
def test_physical_state_invariants(s):
    p = normalize_ray(s)
    assert abs(p.norm2 - 2 * s.hbar) <= 1e-12 * 2 * s.hbar
    pivot = np.flatnonzero(p.z_fixed)[0]
    assert p.z_fixed[pivot].imag == 0 and p.z_fixed[pivot].real > 0


@given(states())
def test_normalize_idempotent(s):
    p = normalize_ray(s)
    q = normalize_ray(p.as_state_vector())
    np.testing.assert_allclose(q.z_fixed, p.z_fixed, rtol=0, atol=1e-12)


@given(states(), nonzero_scalar)
def test_normalize_scale_invariant(s, lam):
    np.testing.assert_allclose(
        normalize_ray(s.scaled(lam)).z_fixed, normalize_ray(s).z_fixed, rtol=0, atol=1e-12
    )


@given(states())
def test_affine_matches_raw_division(s):
    assume(abs(s.z[0]) > 1e-3)
    np.testing.assert_allclose(to_affine(normalize_ray(s)), s.z[1:] / s.z[0], rtol=1e-10, atol=1e-12)
