"""Two-site valve: fermionic operators, Hamiltonian and lead jump operators.

All operators live in the 4-dimensional Fock space of the two valve modes.
The basis is ``|n1 n2>`` ordered as ``|00>, |01>, |10>, |11>`` (index
``2*n1 + n2``). The Jordan-Wigner string sits on mode 1::

    d1 = a (x) 1,     d2 = (-1)^n1 (x) a

where ``a`` is the single-mode lowering matrix. Energies are in units of
the lead bandwidth ``b`` unless ``bandwidth`` is set explicitly.
"""

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import InvalidParameters

DIM = 4

_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]])
_PARITY = np.diag([1.0, -1.0])
_ID2 = np.eye(2)


class Statistics(Enum):
    SPIN = "spin"
    FREE_FERMION = "fermion"

    @property
    def xi(self):
        return 1 if self is Statistics.SPIN else 0


class SpinState(Enum):
    UP = "up"
    DOWN = "down"

    @property
    def iz(self):
        """Eigenvalue of I^z, +1/2 or -1/2."""
        return 0.5 if self is SpinState.UP else -0.5


@dataclass(frozen=True)
class ValveParams:
    """Model constants of the valve and its leads.

    ``p_left``/``p_right`` are the principal-value level shifts of the leads
    (units 1/b); they default to zero.
    """

    t: float
    omega: float
    big_b: float = 0.0
    alpha: float = 0.0
    bandwidth: float = 1.0
    n_left: float = 1.0
    n_right: float = 0.0
    p_left: float = 0.0
    p_right: float = 0.0
    statistics: Statistics = Statistics.SPIN
    qubit: SpinState = SpinState.DOWN
    aux: SpinState = SpinState.UP

    def __post_init__(self):
        for name in ("t", "omega", "big_b", "alpha", "bandwidth", "n_left", "n_right", "p_left", "p_right"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise InvalidParameters(f"{name} must be finite, got {value!r}")
        if self.bandwidth <= 0:
            raise InvalidParameters(f"bandwidth must be > 0, got {self.bandwidth}")
        if self.t < 0:
            raise InvalidParameters(f"t must be >= 0, got {self.t}")
        if not 0 <= self.alpha < 1:
            raise InvalidParameters(f"alpha must satisfy 0 <= alpha < 1, got {self.alpha}")
        for name in ("n_left", "n_right"):
            if not 0 <= getattr(self, name) <= 1:
                raise InvalidParameters(f"{name} must lie in [0, 1], got {getattr(self, name)}")
        if not isinstance(self.statistics, Statistics):
            raise InvalidParameters(f"statistics must be a Statistics member, got {self.statistics!r}")
        for name in ("qubit", "aux"):
            if not isinstance(getattr(self, name), SpinState):
                raise InvalidParameters(f"{name} must be a SpinState member")

    def replace(self, **changes):
        return replace(self, **changes)

    @property
    def delta_n(self):
        return self.n_left - self.n_right

    @classmethod
    def silicon(cls, **overrides):
        """Single-vacancy silicon constants t = omega = b/8, alpha = 1/8."""
        b = overrides.get("bandwidth", 1.0)
        base = dict(t=b / 8, omega=b / 8, alpha=1 / 8, n_left=1.0, n_right=0.0)
        base.update(overrides)
        return cls(**base)


def build_annihilators():
    """Return ``(d1, d2)`` as 4x4 complex matrices."""
    d1 = np.kron(_LOWER, _ID2).astype(complex)
    d2 = np.kron(_PARITY, _LOWER).astype(complex)
    return d1, d2


def number_operators():
    d1, d2 = build_annihilators()
    return d1.conj().T @ d1, d2.conj().T @ d2


def _parity(n):
    # exp(+-i*pi*n) on an occupation operator is exactly 1 - 2n
    return np.eye(DIM, dtype=complex) - 2 * n


def build_valve_hamiltonian(params):
    d1, d2 = build_annihilators()
    n1, n2 = number_operators()
    half = 0.5 * np.eye(DIM)
    hop = d1.conj().T @ d2
    return (
        params.omega * (hop + hop.conj().T)
        + params.big_b * (params.qubit.iz * (n1 - half) + params.aux.iz * (n2 - half))
    )


def build_jump_operators(params):
    """Return ``(T_L, T_R)``.

    For spin statistics the cross terms carry the parity phases
    ``exp(i*pi*n1)`` (left) and ``exp(-i*pi*n2)`` (right); for free fermions
    they are dropped.
    """
    d1, d2 = build_annihilators()
    if params.statistics is Statistics.SPIN:
        n1, n2 = number_operators()
        cross_left = _parity(n1) @ d2
        cross_right = _parity(n2) @ d1
    else:
        cross_left, cross_right = d2, d1
    t, alpha = params.t, params.alpha
    return t * (d1 + alpha * cross_left), t * (d2 + alpha * cross_right)
