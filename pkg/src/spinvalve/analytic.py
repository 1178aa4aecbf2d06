"""Closed-form stationary current, measurement contrast and its optimum."""

import math
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .errors import AlphaZero, BoundaryMaximum, Indeterminate, InvalidParameters
from .valve_model import SpinState, Statistics

# j_down below this is treated as an exact zero of the current
ZERO_CURRENT = 1e-300


@dataclass(frozen=True)
class DerivedScales:
    gamma: float
    omega_tilde: float
    delta_n: float


@dataclass(frozen=True)
class ContrastOptimum:
    b_max: float
    c_max: float
    polarization: float


def derived_scales(params):
    t2 = params.t**2
    return DerivedScales(
        gamma=t2 / params.bandwidth,
        omega_tilde=params.omega + 4 * params.alpha * t2 * (params.p_left + params.p_right),
        delta_n=params.n_left - params.n_right,
    )


def _current(gamma, om, big_b, alpha, dn, xi):
    a2 = alpha * alpha
    m2 = (1 - a2) ** 2
    # numerator regrouped as a sum of non-negative squares (xi**2 == xi), so
    # the interference zero is exact in floating point
    num = (
        (alpha * big_b - xi * dn * (1 - a2) * om) ** 2
        + m2 * om**2 * (1 - xi * dn * dn)
        + m2 * a2 * gamma**2 * (1 - xi * dn * dn)
    )
    den = (
        (1 + a2) ** 2 * big_b**2
        + m2 * (1 + a2) ** 2 * gamma**2
        - 4 * xi * alpha * (1 - a2) * om * big_b * dn
        + 4 * m2 * om**2
    )
    if den == 0:
        return 0.0
    return 2 * (1 + a2) * dn * gamma * num / den


def current_closed_form(params):
    """Magnitude of the stationary spin current into the right lead.

    Qubit up removes the valve detuning, so it is evaluated at ``B = 0``.
    """
    s = derived_scales(params)
    big_b = params.big_b if params.qubit is SpinState.DOWN else 0.0
    return abs(_current(s.gamma, s.omega_tilde, big_b, params.alpha, s.delta_n, params.statistics.xi))


def contrast(params):
    """``j_up / j_down``; ``math.inf`` marks an exact zero of ``j_down``."""
    j_up = current_closed_form(params.replace(qubit=SpinState.DOWN, big_b=0.0))
    j_down = current_closed_form(params.replace(qubit=SpinState.DOWN))
    if j_down < ZERO_CURRENT:
        if j_up < ZERO_CURRENT:
            raise Indeterminate("both currents vanish; contrast is undefined")
        return math.inf
    return j_up / j_down


def interference_coupling(params):
    if params.alpha == 0:
        raise AlphaZero("no cross coupling (alpha = 0), hence no interference point")
    om = derived_scales(params).omega_tilde
    return (1 - params.alpha**2) * om / params.alpha


def proton_coupling(bandwidth=1.0):
    """Valve-qubit coupling for a proton qubit, ``(8/5)**3 * b / 4``."""
    if bandwidth <= 0:
        raise InvalidParameters(f"bandwidth must be > 0, got {bandwidth}")
    return (8 / 5) ** 3 * bandwidth / 4


def polarized(params, polarization):
    return params.replace(n_left=(1 + polarization) / 2, n_right=(1 - polarization) / 2)


def optimize_contrast(params, polarization, b_range=(1e-3, 1e3), points=512, rtol=1e-8):
    """Maximize the contrast over ``B > 0`` at bulk polarization ``P``.

    A logarithmic grid in ``B`` (units of the bandwidth) locates the peak,
    then golden-section search refines it inside the neighbouring grid cells.
    """
    if not 0 < polarization < 1:
        raise InvalidParameters(f"polarization must satisfy 0 < P < 1, got {polarization}")
    lo, hi = b_range
    if not 0 < lo < hi:
        raise InvalidParameters(f"invalid search range {b_range}")
    if points < 3:
        raise InvalidParameters("need at least 3 grid points")
    base = polarized(params, polarization)
    b = params.bandwidth

    def c_of(big_b):
        return contrast(base.replace(big_b=big_b))

    grid = np.geomspace(lo * b, hi * b, points)
    values = np.array([c_of(x) for x in grid])
    k = int(np.argmax(values))
    if k == 0 or k == points - 1:
        raise BoundaryMaximum(grid[k], polarization)
    res = scipy.optimize.minimize_scalar(
        lambda x: -c_of(x),
        bracket=(grid[k - 1], grid[k], grid[k + 1]),
        method="golden",
        options={"xtol": rtol},
    )
    b_max, c_max = float(res.x), float(-res.fun)
    if c_max < values[k]:
        b_max, c_max = float(grid[k]), float(values[k])
    return ContrastOptimum(b_max=b_max, c_max=c_max, polarization=polarization)


def perturbative_rate(params):
    """Lowest-order transport rate, up to a constant factor.

    ``|t^2 (omega/B - alpha)|^2`` for spins and ``|t^2 omega/B|^2`` for free
    fermions, where the two interfering processes add with opposite sign.
    """
    if params.big_b == 0:
        raise ZeroDivisionError("perturbative rate needs B != 0")
    t2 = params.t**2
    ratio = params.omega / params.big_b
    if params.statistics is Statistics.SPIN:
        return abs(t2 * (ratio - params.alpha)) ** 2
    return abs(t2 * ratio) ** 2
