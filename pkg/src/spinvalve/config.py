"""Line-oriented sweep configuration (``key = value``, ``#`` comments)."""

from dataclasses import dataclass, field
from enum import Enum

from .errors import ConfigError, InvalidParameters
from .valve_model import SpinState, Statistics, ValveParams


class Mode(Enum):
    CURRENT = "current"
    CONTRAST_VS_B = "contrast-vs-b"
    CONTRAST_VS_P = "contrast-vs-p"
    ORACLE = "oracle"
    PERTURBATIVE = "perturbative"


# config key -> ValveParams field
VALVE_KEYS = {
    "t": "t",
    "omega": "omega",
    "B": "big_b",
    "alpha": "alpha",
    "b": "bandwidth",
    "nL": "n_left",
    "nR": "n_right",
    "pL": "p_left",
    "pR": "p_right",
    "xi": "statistics",
    "qubit": "qubit",
    "aux": "aux",
}
AXIS_KEYS = ("axis.var", "axis.min", "axis.max", "axis.points", "axis.scale")
OUTPUT_KEYS = ("output.path", "output.format")
ORACLE_KEYS = (
    "oracle.n",
    "oracle.dt",
    "oracle.t_max",
    "oracle.samples",
    "oracle.seed",
    "oracle.window_start",
    "oracle.window_end",
)
KNOWN_KEYS = frozenset(("mode", *VALVE_KEYS, *AXIS_KEYS, *OUTPUT_KEYS, *ORACLE_KEYS))

# derived axis variables on top of the plain valve keys
DERIVED_AXES = ("B_over_B0", "P")
AXIS_VARIABLES = frozenset(
    (*(k for k in VALVE_KEYS if k not in ("xi", "qubit", "aux")), *DERIVED_AXES)
)
MODE_AXES = {
    Mode.CONTRAST_VS_B: frozenset({"B_over_B0"}),
    Mode.CONTRAST_VS_P: frozenset({"P"}),
}
REQUIRED_KEYS = ("t", "omega", "alpha")
U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class AxisSpec:
    var: str
    min: float
    max: float
    points: int
    scale: str = "linear"


@dataclass(frozen=True)
class OracleSettings:
    n_per_side: int = 5
    dt: float = 0.01
    t_max: float = None
    samples: int = 16
    seed: int = 0
    window: tuple = None


@dataclass(frozen=True)
class SweepSpec:
    mode: Mode
    base: ValveParams
    axis: AxisSpec = None
    output_path: str = None
    output_format: str = "csv"
    oracle: OracleSettings = field(default_factory=OracleSettings)


def parse_pairs(text):
    """Split config text into ``{key: (value, line_number)}``."""
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError("missing key before '='", line=lineno)
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", line=lineno, key=key)
        if key in pairs:
            raise ConfigError(f"duplicate key {key!r}", line=lineno, key=key)
        if not value:
            raise ConfigError(f"empty value for {key!r}", line=lineno, key=key)
        pairs[key] = (value, lineno)
    return pairs


def _where(pairs, key):
    entry = pairs.get(key)
    return entry[1] if entry else None


def _number(pairs, key, kind=float):
    value, line = pairs[key]
    try:
        number = kind(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {value!r} as {kind.__name__}", line=line, key=key) from None
    if kind is float and number != number:
        raise ConfigError(f"{key}: NaN is not allowed", line=line, key=key)
    return number


def parse_mode(value):
    norm = value.strip().lower().replace("_", "-")
    aliases = {"contrastvsb": "contrast-vs-b", "contrastvsp": "contrast-vs-p"}
    norm = aliases.get(norm.replace("-", ""), norm)
    try:
        return Mode(norm)
    except ValueError:
        raise ConfigError(f"mode: unknown mode {value!r}", key="mode") from None


def parse_statistics(value):
    norm = value.strip().lower()
    if norm in ("spin", "1"):
        return Statistics.SPIN
    if norm in ("fermion", "free-fermion", "freefermion", "0"):
        return Statistics.FREE_FERMION
    raise ConfigError(f"xi: expected spin|fermion (1|0), got {value!r}", key="xi")


def parse_spin_state(key, value):
    try:
        return SpinState(value.strip().lower())
    except ValueError:
        raise ConfigError(f"{key}: expected up|down, got {value!r}", key=key) from None


def _valve_params(pairs):
    kwargs = {}
    for key, name in VALVE_KEYS.items():
        if key not in pairs:
            continue
        value, line = pairs[key]
        try:
            if key == "xi":
                kwargs[name] = parse_statistics(value)
            elif key in ("qubit", "aux"):
                kwargs[name] = parse_spin_state(key, value)
            else:
                kwargs[name] = _number(pairs, key)
        except ConfigError as exc:
            raise ConfigError(str(exc), line=line, key=key) from None
    for key in REQUIRED_KEYS:
        if key not in pairs:
            raise ConfigError(f"{key} missing", key=key)
    try:
        return ValveParams(**kwargs)
    except InvalidParameters as exc:
        field_to_key = {v: k for k, v in VALVE_KEYS.items()}
        key = next((k for f, k in field_to_key.items() if str(exc).startswith(f + " ")), None)
        raise ConfigError(f"{key or 'parameters'}: {exc}", line=_where(pairs, key), key=key) from None


def _axis(pairs, mode):
    present = [k for k in AXIS_KEYS if k in pairs]
    if not present:
        if mode in MODE_AXES:
            raise ConfigError(f"axis missing (mode {mode.value} needs axis.var/min/max/points)", key="axis.var")
        return None
    for key in ("axis.var", "axis.min", "axis.max", "axis.points"):
        if key not in pairs:
            raise ConfigError(f"{key} missing", key=key)
    var, line = pairs["axis.var"]
    if var not in AXIS_VARIABLES:
        raise ConfigError(f"axis.var: unknown variable {var!r}", line=line, key="axis.var")
    if mode in MODE_AXES and var not in MODE_AXES[mode]:
        allowed = ", ".join(sorted(MODE_AXES[mode]))
        raise ConfigError(f"axis.var: mode {mode.value} sweeps {allowed}, not {var!r}", line=line, key="axis.var")
    lo, hi = _number(pairs, "axis.min"), _number(pairs, "axis.max")
    points = _number(pairs, "axis.points", int)
    scale = pairs.get("axis.scale", ("linear", None))[0].lower()
    if scale not in ("linear", "log"):
        raise ConfigError(f"axis.scale: expected linear|log, got {scale!r}", line=_where(pairs, "axis.scale"), key="axis.scale")
    if points < 2:
        raise ConfigError("axis.points: need at least 2 points", line=_where(pairs, "axis.points"), key="axis.points")
    if not lo < hi:
        raise ConfigError("axis.min must be smaller than axis.max", line=_where(pairs, "axis.min"), key="axis.min")
    if scale == "log" and lo <= 0:
        raise ConfigError("axis.min: log axis needs a positive minimum", line=_where(pairs, "axis.min"), key="axis.min")
    return AxisSpec(var, lo, hi, points, scale)


def _oracle(pairs):
    kw = {}
    if "oracle.n" in pairs:
        kw["n_per_side"] = _number(pairs, "oracle.n", int)
    if "oracle.dt" in pairs:
        kw["dt"] = _number(pairs, "oracle.dt")
    if "oracle.t_max" in pairs:
        kw["t_max"] = _number(pairs, "oracle.t_max")
    if "oracle.samples" in pairs:
        kw["samples"] = _number(pairs, "oracle.samples", int)
    if "oracle.seed" in pairs:
        seed = _number(pairs, "oracle.seed", int)
        if not 0 <= seed <= U64_MAX:
            raise ConfigError("oracle.seed: must be an unsigned 64-bit integer", line=_where(pairs, "oracle.seed"), key="oracle.seed")
        kw["seed"] = seed
    ends = [k in pairs for k in ("oracle.window_start", "oracle.window_end")]
    if any(ends):
        if not all(ends):
            raise ConfigError("oracle window needs both oracle.window_start and oracle.window_end", key="oracle.window_start")
        kw["window"] = (_number(pairs, "oracle.window_start"), _number(pairs, "oracle.window_end"))
    return OracleSettings(**kw)


def build_spec(pairs):
    """Validate parsed pairs into a :class:`SweepSpec`."""
    if "mode" not in pairs:
        raise ConfigError("mode missing", key="mode")
    value, line = pairs["mode"]
    try:
        mode = parse_mode(value)
    except ConfigError as exc:
        raise ConfigError(str(exc), line=line, key="mode") from None
    base = _valve_params(pairs)
    axis = _axis(pairs, mode)
    fmt = pairs.get("output.format", ("csv", None))[0].lower()
    if fmt not in ("csv", "json"):
        raise ConfigError(f"output.format: expected csv|json, got {fmt!r}", line=_where(pairs, "output.format"), key="output.format")
    path = pairs.get("output.path", (None, None))[0]
    return SweepSpec(mode, base, axis, path, fmt, _oracle(pairs))


def parse_config(text):
    return build_spec(parse_pairs(text))
