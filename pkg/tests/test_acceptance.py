"""Exit criteria. Each test records one PASS/FAIL line shown in the
terminal summary under "acceptance criteria"."""

import numpy as np
from oracles import H_direct, f_affine_direct, f_direct, mixed_wirtinger, normwise, wirtinger

from ncvalue import (
    H_function,
    commutator,
    f_function,
    fidelity,
    moments,
    normalize_ray,
    position_momentum,
    product,
    random_observable,
    random_state,
    reconstruct_state,
    sd_product,
    star_K,
    star_kappa_affine,
    star_kappa_homogeneous,
    symdata,
    symdata_H,
    symdata_w,
    symdata_z,
)
from ncvalue.cli import main
from ncvalue.tolerance import relative_residual, symdata_residuals

SCHEDULE = (2, 3, 5, 8, 16)
TRIALS = 200
REL = 1e-10


def triples(dims=SCHEDULE, trials=TRIALS, seed=2024):
    for d in dims:
        for t in range(trials):
            rng = np.random.default_rng([seed, d, t])
            yield (
                d,
                random_observable(d, rng=rng),
                random_observable(d, rng=rng),
                random_state(d, rng=rng),
            )


def test_1_isomorphism(criterion):
    worst = dict.fromkeys(("star_K", "star_kappa_z", "star_kappa_w"), 0.0)
    for _, beta, gamma, s in triples():
        p = normalize_ray(s)
        bg = product(beta, gamma)
        H_oracle = H_direct(bg.B, s.z, s.hbar)
        f_oracle = f_direct(bg.B, s.z)
        worst["star_K"] = max(worst["star_K"], relative_residual(star_K(symdata_H(beta, s), symdata_H(gamma, s)), H_oracle))
        hom = star_kappa_homogeneous(symdata_z(beta, s), symdata_z(gamma, s))
        worst["star_kappa_z"] = max(worst["star_kappa_z"], relative_residual(hom, f_oracle))
        aff = star_kappa_affine(symdata_w(beta, p), symdata_w(gamma, p))
        worst["star_kappa_w"] = max(worst["star_kappa_w"], relative_residual(aff, f_oracle))
    ok = max(worst.values()) <= REL
    criterion(1, "Kähler products reproduce operator product", ok, f"max residual {max(worst.values()):.2e}")
    assert ok, worst


def test_2_symmetry_data_product(criterion):
    worst = dict.fromkeys("Hzw", 0.0)
    for _, beta, gamma, s in triples():
        p = normalize_ray(s)
        bg = product(beta, gamma)
        for chart in "Hzw":
            st = p if chart == "w" else s
            res = symdata_residuals(
                sd_product(symdata(beta, st, chart), symdata(gamma, st, chart)),
                symdata(bg, st, chart),
            )
            worst[chart] = max(worst[chart], max(res.values()))
    ok = max(worst.values()) <= REL
    criterion(2, "symmetry-data product laws (H, z, w)", ok, f"max residual {max(worst.values()):.2e}")
    assert ok, worst


def test_3_derivatives_finite_differences(criterion):
    worst = 0.0
    for t in range(50):
        rng = np.random.default_rng([3, t])
        d = int(rng.integers(2, 9))
        hbar = (0.5, 1.0, 2.0)[t % 3]
        beta = random_observable(d, hbar, rng)
        s = random_state(d, hbar, rng)
        p = normalize_ray(s)
        cases = [
            (symdata_H(beta, s), lambda z: H_direct(beta.B, z, hbar), s.z),
            (symdata_z(beta, s), lambda z: f_direct(beta.B, z), s.z),
            (symdata_w(beta, p), lambda w: f_affine_direct(beta.B, w), p.w),
        ]
        for v, fun, point in cases:
            scale = max(1.0, np.abs(point).max())
            d_f, dbar_f = wirtinger(fun, point, 1e-5 * scale)
            hess = mixed_wirtinger(fun, point, 1e-4 * scale)
            worst = max(
                worst,
                normwise(v.X, 1j * d_f),
                normwise(v.Xbar, -1j * dbar_f),
                normwise(v.K, -1j * hess),
            )
    ok = worst <= 1e-6
    criterion(3, "analytic X, Xbar, K match finite differences", ok, f"max rel error {worst:.2e}")
    assert ok


def test_4_normalization_identity(criterion):
    worst = 0.0
    for hbar in (0.5, 1.0, 2.0):
        for t in range(50):
            rng = np.random.default_rng([4, int(hbar * 10), t])
            d = int(rng.integers(2, 17))
            beta = random_observable(d, hbar, rng)
            p = normalize_ray(random_state(d, hbar, rng))
            assert abs(p.norm2 - 2 * hbar) <= 1e-12 * 2 * hbar
            worst = max(worst, relative_residual(f_function(beta, p), H_function(beta, p), rtol=1e-12))
    ok = worst <= 1e-12
    criterion(4, "f = H at |z|^2 = 2 hbar", ok, f"max residual {worst:.2e}")
    assert ok


def test_5_horizontality(criterion):
    worst_contraction = 0.0
    worst_pullback = 0.0
    for t in range(50):
        rng = np.random.default_rng([5, t])
        d = int(rng.integers(2, 17))
        beta = random_observable(d, rng=rng)
        s = random_state(d, rng=rng)
        Xz = symdata_z(beta, s).X
        worst_contraction = max(worst_contraction, abs(s.z @ Xz) / np.linalg.norm(Xz))

        p = normalize_ray(s)
        Xzp = symdata_z(beta, p).X
        Xw = symdata_w(beta, p).X
        z = p.z_fixed
        dz = rng.uniform(-1, 1, d) + 1j * rng.uniform(-1, 1, d)
        dw = (dz[1:] * z[0] - z[1:] * dz[0]) / z[0] ** 2
        worst_pullback = max(worst_pullback, relative_residual(Xzp @ dz, Xw @ dw))
    ok = worst_contraction <= 1e-11 and worst_pullback <= 1e-10
    criterion(
        5,
        "horizontality and covector pullback",
        ok,
        f"z.X {worst_contraction:.2e}, pullback {worst_pullback:.2e}",
    )
    assert ok


def test_6_H_chart_state_independence(criterion):
    ok = True
    for t in range(20):
        rng = np.random.default_rng([6, t])
        d = int(rng.integers(2, 17))
        hbar = (0.5, 1.0, 2.0)[t % 3]
        beta = random_observable(d, hbar, rng)
        Ks = [symdata_H(beta, random_state(d, hbar, rng)).K for _ in range(10)]
        ok &= all(np.array_equal(K, Ks[0]) for K in Ks)
        elementwise = np.array([[-(1j / (2 * hbar)) * beta.B[n, m] for n in range(d)] for m in range(d)])
        ok &= np.array_equal(Ks[0], elementwise)
    criterion(6, "H-chart K state independent and equal to matrix elements", bool(ok))
    assert ok


def test_7_reconstruction(criterion):
    worst = 1.0
    for t in range(100):
        rng = np.random.default_rng([7, t])
        d = int(rng.integers(2, 17))
        hbar = (0.5, 1.0, 2.0)[t % 3]
        beta = random_observable(d, hbar, rng)
        s = random_state(d, hbar, rng)
        v = symdata_H(beta, s)
        worst = min(worst, fidelity(reconstruct_state(beta, v.X, v.Xbar), s))
    ok = worst >= 1 - 1e-9
    criterion(7, "state reconstruction round trip", ok, f"min fidelity 1 - {1 - worst:.2e}")
    assert ok


def test_8_moments(criterion):
    worst = 0.0
    first = 0.0
    for t in range(50):
        rng = np.random.default_rng([8, t])
        d = int(rng.integers(2, 17))
        beta = random_observable(d, rng=rng, hermitian=True)
        p = normalize_ray(random_state(d, rng=rng))
        r = moments(beta, p, 6)
        worst = max(worst, relative_residual(r.exact, r.spectral))
        first = max(first, relative_residual(r.exact[0], f_function(beta, p).real))
    ok = worst <= REL and first <= REL
    criterion(8, "exact vs spectral moments, mu_1 = expectation", ok, f"max residual {worst:.2e}")
    assert ok


def test_9_truncated_commutator(criterion):
    worst = 0.0
    for d in SCHEDULE:
        for hbar in (0.5, 1.0, 2.0):
            x, p_op = position_momentum(d, hbar)
            comm = commutator(x, p_op)
            ladder_oracle = 1j * hbar * np.diag(np.r_[np.ones(d - 1), -(d - 1)])
            worst = max(worst, relative_residual(comm.B, ladder_oracle))
            s = random_state(d, hbar, np.random.default_rng([9, d]))
            for chart in "Hzw":
                st = normalize_ray(s) if chart == "w" else s
                vx, vp = symdata(x, st, chart), symdata(p_op, st, chart)
                value = sd_product(vx, vp) - sd_product(vp, vx)
                worst = max(worst, max(symdata_residuals(value, symdata(comm, st, chart)).values()))
    ok = worst <= REL
    criterion(9, "value-level [x, p] matches truncated commutator", ok, f"max residual {worst:.2e}")
    assert ok


def test_10_determinism_gate(criterion, tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    codes = [main(["conformance", "--seed", "42", "--out", str(path)]) for path in paths]
    identical = paths[0].read_bytes() == paths[1].read_bytes()
    fault = main(["conformance", "--seed", "42", "--trials", "5", "--perturb-K", "1e-6", "--out", str(tmp_path / "c.json")])
    capsys.readouterr()
    ok = codes == [0, 0] and identical and fault == 1
    criterion(10, "conformance reproducible; fault injection exits 1", ok, f"exit codes {codes} -> {fault}")
    assert ok
