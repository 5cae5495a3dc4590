"""Reference computations that do not go through the package's own code paths."""

import cmath
import math

import numpy as np

from sishd.model import PARAM_NAMES


def central_difference(f, p, name, rel_step=1e-7):
    """d f(p) / d p.name by a central difference with a relative step."""
    value = getattr(p, name)
    h = rel_step * value
    return (f(p.replace(**{name: value + h})) - f(p.replace(**{name: value - h}))) / (2 * h)


def numeric_jacobian(field, x, h=1e-6):
    """Central-difference Jacobian of field: R^n -> R^n at x."""
    x = np.asarray(x, dtype=float)
    J = np.empty((len(x), len(x)))
    for j in range(len(x)):
        step = h * max(1.0, abs(x[j]))
        e = np.zeros_like(x)
        e[j] = step
        J[:, j] = (np.asarray(field(x + e)) - np.asarray(field(x - e))) / (2 * step)
    return J


def cubic_roots(a1, a2, a3):
    """Roots of t^3 + a1 t^2 + a2 t + a3 by Cardano's formula."""
    shift = a1 / 3.0
    p = a2 - a1 * a1 / 3.0
    q = 2.0 * a1**3 / 27.0 - a1 * a2 / 3.0 + a3
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    sq = cmath.sqrt(disc)
    u = (-q / 2.0 + sq) ** (1.0 / 3.0)
    if abs(u) < 1e-300:
        u = (-q / 2.0 - sq) ** (1.0 / 3.0)
    omega = complex(-0.5, math.sqrt(3) / 2)
    roots = []
    for k in range(3):
        uk = u * omega**k
        vk = -p / (3.0 * uk) if abs(uk) > 0 else 0.0
        roots.append(uk + vk - shift)
    return np.array(roots)


def random_params(rng, *, r0_range=None):
    """Random valid parameter dict; beta chosen to land R0 in r0_range if given."""
    values = {
        "Lambda": rng.uniform(1.0, 100.0),
        "mu": rng.uniform(1e-3, 0.1),
        "epsilon": rng.uniform(0.0, 1.0),
        "alpha_I": rng.uniform(1e-3, 0.5),
        "gamma_I": rng.uniform(1e-3, 0.5),
        "delta": rng.uniform(1e-3, 0.5),
        "gamma_H": rng.uniform(1e-3, 0.5),
        "alpha_H": rng.uniform(1e-3, 0.5),
        "beta": rng.uniform(1e-5, 1e-3),
    }
    if r0_range is not None:
        values["beta"] = beta_for_r0(values, rng.uniform(*r0_range))
    return {k: values[k] for k in PARAM_NAMES}


def beta_for_r0(v, target):
    """Invert the threshold formula for beta (written out independently)."""
    k_h = v["gamma_H"] + v["mu"] + v["alpha_H"]
    k_i = v["alpha_I"] + v["gamma_I"] + v["mu"] + v["delta"]
    return target * v["mu"] * k_i * k_h / (v["Lambda"] * (k_h + v["epsilon"] * v["delta"]))
