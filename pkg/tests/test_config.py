import pytest

from spinvalve.config import Mode, parse_config, parse_pairs
from spinvalve.errors import ConfigError
from spinvalve.valve_model import SpinState, Statistics

SILICON = """\
mode = contrast-vs-b
t = 0.125
omega = 0.125
alpha = 0.125   # single vacancies
axis.var = B_over_B0
axis.min = 0.05
axis.max = 3
axis.points = 200
"""


def test_silicon_spec():
    spec = parse_config(SILICON)
    assert spec.mode is Mode.CONTRAST_VS_B
    p = spec.base
    assert (p.t, p.omega, p.alpha, p.bandwidth) == (0.125, 0.125, 0.125, 1.0)
    assert (p.p_left, p.p_right) == (0.0, 0.0)
    assert p.aux is SpinState.UP and p.statistics is Statistics.SPIN
    assert spec.axis.points == 200 and spec.axis.scale == "linear"
    assert spec.output_format == "csv" and spec.output_path is None


def test_all_keys():
    text = """
    mode = oracle
    t = 0.1
    omega = 0.2
    B = -0.4
    alpha = 0.3
    b = 2
    nL = 0.9
    nR = 0.1
    pL = 0.01
    pR = 0.02
    xi = fermion
    qubit = up
    aux = down
    output.path = out.json
    output.format = json
    oracle.n = 3
    oracle.dt = 0.02
    oracle.t_max = 7
    oracle.samples = 5
    oracle.seed = 18446744073709551615
    oracle.window_start = 1
    oracle.window_end = 6
    """
    spec = parse_config(text)
    p = spec.base
    assert p.big_b == -0.4 and p.bandwidth == 2 and p.statistics is Statistics.FREE_FERMION
    assert p.qubit is SpinState.UP and p.aux is SpinState.DOWN
    assert spec.oracle.n_per_side == 3 and spec.oracle.seed == 2**64 - 1
    assert spec.oracle.window == (1.0, 6.0)
    assert spec.output_format == "json" and spec.output_path == "out.json"
    assert spec.axis is None


def test_alpha_one_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config("mode = current\nt = 0.1\nomega = 0.1\nalpha = 1.0\n")
    assert info.value.key == "alpha"
    assert "line 4" in str(info.value)


def test_empty_rejected():
    with pytest.raises(ConfigError, match="mode missing"):
        parse_config("")


def test_unknown_key_has_line_number():
    with pytest.raises(ConfigError) as info:
        parse_config("mode = current\n\n# c\nbogus = 1\n")
    assert info.value.line == 4 and "bogus" in str(info.value)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("mode = current\nt 0.1\n", "line 2"),
        ("mode = current\nt = 0.1\nt = 0.2\n", "duplicate"),
        ("mode = current\nt = abc\nomega = 0.1\nalpha = 0.1\n", "cannot parse"),
        ("mode = warp\nt = 0.1\n", "unknown mode"),
        ("mode = current\nomega = 0.1\nalpha = 0.1\n", "t missing"),
        ("mode = current\nt = 0.1\nomega = 0.1\nalpha = 0.1\nnL = 2\n", "nL"),
        ("mode = contrast-vs-b\nt = 0.1\nomega = 0.1\nalpha = 0.1\n", "axis missing"),
        (SILICON.replace("axis.points = 200", "axis.points = 1"), "at least 2"),
        (SILICON.replace("axis.min = 0.05", "axis.min = 5"), "smaller"),
        (SILICON.replace("B_over_B0", "P"), "sweeps B_over_B0"),
        (SILICON.replace("B_over_B0", "zeta"), "unknown variable"),
        (SILICON + "axis.scale = cubic\n", "linear|log"),
        (SILICON.replace("axis.min = 0.05", "axis.min = 0") + "axis.scale = log\n", "positive"),
        (SILICON + "output.format = xml\n", "csv|json"),
        (SILICON + "xi = boson\n", "spin|fermion"),
        (SILICON + "qubit = sideways\n", "up|down"),
        ("mode = oracle\nt = 0.1\nomega = 0.1\nalpha = 0.1\noracle.seed = -1\n", "unsigned"),
        ("mode = oracle\nt = 0.1\nomega = 0.1\nalpha = 0.1\noracle.window_start = 1\n", "window"),
    ],
)
def test_rejections(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


def test_mode_aliases():
    base = "t = 0.1\nomega = 0.1\nalpha = 0.1\n"
    assert parse_config("mode = ContrastVsP\naxis.var = P\naxis.min = 0.1\naxis.max = 0.9\naxis.points = 3\n" + base).mode is Mode.CONTRAST_VS_P
    assert parse_config("mode = Perturbative\n" + base).mode is Mode.PERTURBATIVE


def test_comment_only_and_blank_lines():
    assert parse_pairs("# nothing\n\n   \n") == {}
