"""Spin transport through a two-site nuclear spin valve.

The valve model and its counting-field master equation give stationary spin
currents; closed-form expressions give the measurement contrast, its
interference divergence and optimum; an exact finite spin chain serves as an
independent check.
"""

from .analytic import (
    ContrastOptimum,
    contrast,
    current_closed_form,
    interference_coupling,
    optimize_contrast,
    perturbative_rate,
    proton_coupling,
)
from .liouvillian import Lead, build_liouvillian, current_via_eigenvalue, spin_current, steady_state
from .valve_model import SpinState, Statistics, ValveParams

__version__ = "0.1.0"

__all__ = [
    "ContrastOptimum",
    "Lead",
    "SpinState",
    "Statistics",
    "ValveParams",
    "build_liouvillian",
    "contrast",
    "current_closed_form",
    "current_via_eigenvalue",
    "interference_coupling",
    "optimize_contrast",
    "perturbative_rate",
    "proton_coupling",
    "spin_current",
    "steady_state",
]
