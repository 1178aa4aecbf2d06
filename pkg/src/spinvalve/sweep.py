"""Parameter sweeps behind the command-line interface.

Points are independent: they may be evaluated in worker processes and are
always collected in ascending axis order, so output is byte-identical for a
given spec regardless of ``jobs``.
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from . import analytic
from .chain_oracle import ChainConfig, run_oracle
from .config import VALVE_KEYS, Mode
from .errors import SpinValveError
from .liouvillian import Lead, spin_current
from .valve_model import SpinState, Statistics

SIG_DIGITS = 12


class PointFailure(SpinValveError):
    """A sweep point failed numerically; carries the axis variable and value."""

    def __init__(self, var, value, message):
        super().__init__(var, value, message)
        self.var = var
        self.value = value
        self.message = message

    def __str__(self):
        if self.var is None:
            return f"numerical failure: {self.message}"
        return f"numerical failure at {self.var}={format_value(self.value)}: {self.message}"


def format_value(x):
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x + 0.0:.{SIG_DIGITS}g}"


def axis_values(axis):
    """Grid points rounded to the printed precision, ascending and unique."""
    if axis.scale == "log":
        raw = np.geomspace(axis.min, axis.max, axis.points)
    else:
        raw = np.linspace(axis.min, axis.max, axis.points)
    # rounding first makes every emitted row re-evaluate to itself
    return sorted({float(format_value(x)) for x in raw})


def apply_axis(params, var, value):
    if var == "B_over_B0":
        return params.replace(big_b=value * analytic.proton_coupling(params.bandwidth))
    if var == "P":
        return analytic.polarized(params, value)
    return params.replace(**{VALVE_KEYS[var]: value})


def columns(spec):
    lead = [spec.axis.var] if spec.axis else []
    return lead + {
        Mode.CURRENT: ["j_right", "j_left", "j_closed_form"],
        Mode.CONTRAST_VS_B: ["C_spin", "C_fermion"],
        Mode.CONTRAST_VS_P: ["B_max", "C_max"],
        Mode.ORACLE: ["j_oracle", "j_oracle_stderr", "j_master"],
        Mode.PERTURBATIVE: ["rate_spin", "rate_fermion"],
    }[spec.mode]


def _evaluate(spec, params):
    mode = spec.mode
    if mode is Mode.CURRENT:
        right = spin_current(params, Lead.RIGHT)
        left = spin_current(params, Lead.LEFT, state=right.diagnostics)
        return [right.signed_current, left.signed_current, analytic.current_closed_form(params)]
    if mode is Mode.CONTRAST_VS_B:
        down = params.replace(qubit=SpinState.DOWN)
        return [
            analytic.contrast(down.replace(statistics=Statistics.SPIN)),
            analytic.contrast(down.replace(statistics=Statistics.FREE_FERMION)),
        ]
    if mode is Mode.CONTRAST_VS_P:
        raise AssertionError("contrast-vs-p is evaluated per polarization")
    if mode is Mode.ORACLE:
        o = spec.oracle
        config = ChainConfig(
            o.n_per_side, params, dt=o.dt, t_max=o.t_max, samples=o.samples, seed=o.seed
        )
        est = run_oracle(config, o.window)
        return [est.current, est.stderr, spin_current(params, Lead.RIGHT).signed_current]
    if mode is Mode.PERTURBATIVE:
        return [
            analytic.perturbative_rate(params.replace(statistics=Statistics.SPIN)),
            analytic.perturbative_rate(params.replace(statistics=Statistics.FREE_FERMION)),
        ]
    raise ValueError(f"unsupported mode {mode!r}")


def evaluate_point(spec, value=None):
    """One output row (list of floats) for axis value ``value``."""
    var = spec.axis.var if spec.axis else None
    try:
        if spec.mode is Mode.CONTRAST_VS_P:
            opt = analytic.optimize_contrast(spec.base, value)
            return [value, opt.b_max, opt.c_max]
        params = spec.base if spec.axis is None else apply_axis(spec.base, var, value)
        row = _evaluate(spec, params)
    except (SpinValveError, ZeroDivisionError) as exc:
        raise PointFailure(var, value, str(exc)) from None
    return ([value] if spec.axis else []) + row


def run_sweep(spec, jobs=1):
    """Evaluate every axis point; returns ``(column_names, rows)``."""
    values = axis_values(spec.axis) if spec.axis else [None]
    work = partial(evaluate_point, spec)
    if jobs > 1 and len(values) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(work, values))
    else:
        rows = [work(v) for v in values]
    return columns(spec), rows


def render(cols, rows, fmt="csv"):
    if fmt == "csv":
        lines = [",".join(cols)]
        lines += [",".join(format_value(x) for x in row) for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        def cell(x):
            text = format_value(x)
            return float(text) if text not in ("inf", "-inf", "nan") else text

        records = [{c: cell(x) for c, x in zip(cols, row)} for row in rows]
        return json.dumps(records, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def read_csv(text):
    """Parse rendered CSV back into ``(columns, rows)`` of floats."""
    lines = text.splitlines()
    cols = lines[0].split(",")
    return cols, [[float(x) for x in line.split(",")] for line in lines[1:] if line]
