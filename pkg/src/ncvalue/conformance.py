"""Seeded sweep checking every star-product and product-law identity
against the matrix-product oracle.

Each trial draws ``(beta, gamma, state)`` from its own generator, seeded by
``(seed, dim, trial)``, so the report does not depend on execution order.
"""

from dataclasses import replace

import numpy as np

from .hilbert import normalize_ray, random_state
from .kahler import H_function, f_function, metric_chart, star_K, star_kappa_affine, star_kappa_homogeneous
from .operators import product, random_observable
from .symdata import (
    sd_product_H,
    sd_product_w,
    sd_product_z,
    symdata_H,
    symdata_w,
    symdata_z,
)
from .tolerance import ABS_FLOOR, REL_TOL, relative_residual, symdata_residuals

DEFAULT_DIMS = (2, 3, 5, 8, 16)

# identity name -> (chart, uses K)
IDENTITIES = {
    "star_K": ("H", False),
    "sd_product_H": ("H", True),
    "star_kappa_z": ("z", False),
    "sd_product_z": ("z", True),
    "star_kappa_w": ("w", False),
    "sd_product_w": ("w", True),
}


def trial_inputs(seed, dim, trial, hbar=1.0):
    """The ``(beta, gamma, state)`` triple of one trial."""
    rng = np.random.default_rng([seed, dim, trial])
    beta = random_observable(dim, hbar, rng)
    gamma = random_observable(dim, hbar, rng)
    state = random_state(dim, hbar, rng)
    return beta, gamma, state


def _perturb(sd, eps):
    if not eps:
        return sd
    return replace(sd, K=sd.K * (1 + eps))


def trial_residuals(beta, gamma, state, perturb_K=0.0, rtol=REL_TOL, floor=ABS_FLOOR):
    """Residual of every identity for one ``(beta, gamma, state)`` triple."""
    bg = product(beta, gamma)
    phys = normalize_ray(state)
    out = {}

    a, b = _perturb(symdata_H(beta, state), perturb_K), symdata_H(gamma, state)
    out["star_K"] = relative_residual(star_K(a, b), H_function(bg, state), rtol, floor)
    out["sd_product_H"] = max(symdata_residuals(sd_product_H(a, b), symdata_H(bg, state), rtol, floor).values())

    a, b = _perturb(symdata_z(beta, state), perturb_K), symdata_z(gamma, state)
    metric = metric_chart("z", state)
    out["star_kappa_z"] = relative_residual(
        star_kappa_homogeneous(a, b, metric), f_function(bg, state), rtol, floor
    )
    out["sd_product_z"] = max(
        symdata_residuals(sd_product_z(a, b, metric), symdata_z(bg, state), rtol, floor).values()
    )

    a, b = _perturb(symdata_w(beta, phys), perturb_K), symdata_w(gamma, phys)
    metric = metric_chart("w", phys)
    out["star_kappa_w"] = relative_residual(star_kappa_affine(a, b, metric), f_function(bg, phys), rtol, floor)
    out["sd_product_w"] = max(
        symdata_residuals(sd_product_w(a, b, metric), symdata_w(bg, phys), rtol, floor).values()
    )
    return out


def run_conformance(
    dims=DEFAULT_DIMS,
    trials=200,
    seed=0,
    hbar=1.0,
    tolerance=REL_TOL,
    perturb_K=0.0,
) -> dict:
    """Run the sweep and return a JSON-ready report.

    ``report["passed"]`` is true iff every identity's largest residual is at
    most ``tolerance``; failing identities are listed in ``report["breaches"]``.
    """
    results = {name: {} for name in IDENTITIES}
    for dim in dims:
        worst = dict.fromkeys(IDENTITIES, 0.0)
        for trial in range(trials):
            beta, gamma, state = trial_inputs(seed, dim, trial, hbar)
            res = trial_residuals(beta, gamma, state, perturb_K, rtol=tolerance)
            for name, value in res.items():
                worst[name] = max(worst[name], value)
        for name, value in worst.items():
            results[name][str(dim)] = value

    identities = {}
    breaches = []
    for name, per_dim in results.items():
        chart, uses_K = IDENTITIES[name]
        max_res = max(per_dim.values()) if per_dim else 0.0
        ok = max_res <= tolerance
        if not ok:
            breaches.append(name)
        identities[name] = {
            "chart": chart,
            "uses_K": uses_K,
            "max_residual": max_res,
            "per_dim": per_dim,
            "passed": ok,
        }
    return {
        "config": {
            "dims": list(dims),
            "trials": trials,
            "seed": seed,
            "hbar": hbar,
            "tolerance": tolerance,
            "perturb_K": perturb_K,
        },
        "identities": identities,
        "breaches": breaches,
        "passed": not breaches,
    }
