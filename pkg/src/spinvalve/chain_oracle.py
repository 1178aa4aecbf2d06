"""Exact unitary evolution of the full finite spin chain.

This is an independent check of the master-equation currents: it works with
spin-1/2 operators in the full ``2**(2N+2)`` Hilbert space and never uses the
fermionized valve operators.

Site layout (left to right)::

    L_{N-1} ... L_1 L_0  S1 S2  R_0 R_1 ... R_{N-1}

Site ``k`` is bit ``2N+1-k`` of the basis-state integer (bit set = spin up),
so site 0 is the most significant bit, matching ``kron`` ordering.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameters, NormDrift, SizeExceeded, WindowInvalid
from .kernels import XYOperator
from .valve_model import Statistics

MAX_SPINS = 14
NORM_TOL = 1e-8
MAX_DT_HALVINGS = 3


@dataclass(frozen=True)
class ChainConfig:
    """Chain size, model constants and integrator settings.

    ``t_max`` defaults to the recurrence time ``2N/b``; ``output_dt`` is the
    sampling interval of the recorded trajectory.
    """

    n_per_side: int
    params: object
    dt: float = 0.01
    t_max: float = None
    output_dt: float = 0.05
    samples: int = 1
    seed: int = 0
    backend: str = "auto"

    def __post_init__(self):
        if self.n_per_side < 2:
            raise InvalidParameters(f"n_per_side must be >= 2, got {self.n_per_side}")
        if 2 * self.n_per_side + 2 > MAX_SPINS:
            raise SizeExceeded(
                f"{2 * self.n_per_side + 2} spins exceed the limit of {MAX_SPINS}"
            )
        if self.params.statistics is not Statistics.SPIN:
            raise InvalidParameters("the chain oracle simulates spins; statistics must be SPIN")
        if not self.dt > 0 or not self.output_dt > 0:
            raise InvalidParameters("dt and output_dt must be positive")
        if self.output_dt < self.dt * (1 - 1e-12):
            raise InvalidParameters("output_dt must be at least dt")
        if self.t_max is not None and not self.t_max > 0:
            raise InvalidParameters("t_max must be positive")
        if self.samples < 1:
            raise InvalidParameters("samples must be >= 1")

    @property
    def n_sites(self):
        return 2 * self.n_per_side + 2

    @property
    def total_time(self):
        if self.t_max is not None:
            return self.t_max
        return 2 * self.n_per_side / self.params.bandwidth

    @property
    def default_window(self):
        b = self.params.bandwidth
        return (self.n_per_side / b, 2 * self.n_per_side / b)

    def site(self, name):
        """Site index for ``"S1"``, ``"S2"``, ``"L<j>"`` or ``"R<j>"``."""
        n = self.n_per_side
        if name == "S1":
            return n
        if name == "S2":
            return n + 1
        side, j = name[0], int(name[1:])
        if not 0 <= j < n:
            raise InvalidParameters(f"no site {name} in a chain with N={n}")
        return n - 1 - j if side == "L" else n + 2 + j


@dataclass
class Trajectory:
    times: np.ndarray
    delta_s_right: np.ndarray
    norm_drift: float
    sz_drift: float
    dt: float = field(default=None)
    delta_s_left: np.ndarray = field(default=None)


@dataclass(frozen=True)
class OracleEstimate:
    current: float
    stderr: float
    samples: int
    window: tuple
    norm_drift: float
    sz_drift: float


class ChainHamiltonian:
    """Matrix-free full-chain Hamiltonian plus the diagonal observables."""

    def __init__(self, config):
        self.config = config
        p = config.params
        n = config.n_per_side
        ns = config.n_sites
        self.n_sites = ns
        self.dim = 1 << ns
        states = np.arange(self.dim, dtype=np.int64)
        self._up = [((states >> (ns - 1 - k)) & 1).astype(float) for k in range(ns)]

        def mask(k):
            return 1 << (ns - 1 - k)

        s1, s2 = config.site("S1"), config.site("S2")
        l0, r0 = config.site("L0"), config.site("R0")
        # b (sx sx + sy sy) = (b/2)(s+ s- + h.c.); 2t(sx Sx + sy Sy) = t(s+ S- + h.c.)
        bonds = []
        for j in range(n - 1):
            bonds.append((config.site(f"L{j}"), config.site(f"L{j + 1}"), p.bandwidth / 2))
            bonds.append((config.site(f"R{j}"), config.site(f"R{j + 1}"), p.bandwidth / 2))
        bonds += [
            (l0, s1, p.t),
            (l0, s2, p.alpha * p.t),
            (r0, s2, p.t),
            (r0, s1, p.alpha * p.t),
            (s1, s2, p.omega),
        ]
        self.bonds = [(i, j, g) for i, j, g in bonds if g != 0]
        sz = [u - 0.5 for u in self._up]
        diag = p.big_b * (p.qubit.iz * sz[s1] + p.aux.iz * sz[s2])
        self.op = XYOperator(
            ns, diag, [(mask(i), mask(j), g) for i, j, g in self.bonds], backend=config.backend
        )
        self.sz_right = sum(sz[config.site(f"R{j}")] for j in range(n))
        self.sz_left = sum(sz[config.site(f"L{j}")] for j in range(n))
        self.sz_total = sum(sz)

    def matvec(self, psi):
        return self.op.matvec(psi)

    __call__ = matvec

    def dense(self):
        if self.dim > 4096:
            raise SizeExceeded("dense form limited to 12 spins")
        eye = np.eye(self.dim, dtype=complex)
        return np.column_stack([self.matvec(eye[:, k]) for k in range(self.dim)])

    def hermiticity_defect(self, rng=None, trials=3):
        """max |<phi|H psi> - conj(<psi|H phi>)| over random vector pairs."""
        rng = np.random.default_rng(rng)
        worst = 0.0
        for _ in range(trials):
            phi, psi = (rng.normal(size=(2, self.dim)) + 1j * rng.normal(size=(2, self.dim)))
            phi /= np.linalg.norm(phi)
            psi /= np.linalg.norm(psi)
            worst = max(worst, abs(np.vdot(phi, self.matvec(psi)) - np.conj(np.vdot(psi, self.matvec(phi)))))
        return worst


def build_chain_hamiltonian(config):
    return ChainHamiltonian(config)


def basis_state(config, up_sites):
    """Product state with the given site indices up and all others down."""
    ns = config.n_sites
    index = sum(1 << (ns - 1 - k) for k in up_sites)
    psi = np.zeros(1 << ns, dtype=complex)
    psi[index] = 1.0
    return psi


def sample_initial_states(config):
    """Seeded product states: lead spins up with probability n_L / n_R, valve down.

    Fully polarized or empty leads make every draw identical, so a single
    state is returned in that case.
    """
    p = config.params
    n = config.n_per_side
    left = [config.site(f"L{j}") for j in range(n)]
    right = [config.site(f"R{j}") for j in range(n)]
    deterministic = p.n_left in (0.0, 1.0) and p.n_right in (0.0, 1.0)
    count = 1 if deterministic else config.samples
    rng = np.random.default_rng(config.seed)
    states = []
    for _ in range(count):
        ups = [k for k in left if rng.random() < p.n_left]
        ups += [k for k in right if rng.random() < p.n_right]
        states.append(basis_state(config, ups))
    return states


def _integrate(ham, initial, dt, total_time, output_dt):
    steps_per_output = max(1, int(round(output_dt / dt)))
    n_out = int(round(total_time / (dt * steps_per_output)))
    psi = np.array(initial, dtype=complex, copy=True)
    prob = (psi.conj() * psi).real
    norm0 = prob.sum()
    right0 = prob @ ham.sz_right / norm0
    left0 = prob @ ham.sz_left / norm0
    m0 = prob @ ham.sz_total / norm0
    times = np.arange(n_out + 1) * dt * steps_per_output
    right = np.zeros(n_out + 1)
    left = np.zeros(n_out + 1)
    norm_drift = sz_drift = 0.0
    for k in range(1, n_out + 1):
        ham.op.rk4(psi, dt, steps_per_output)
        prob = (psi.conj() * psi).real
        norm = prob.sum()
        # expectation values are normalized so integrator norm loss does not leak in
        right[k] = prob @ ham.sz_right / norm - right0
        left[k] = prob @ ham.sz_left / norm - left0
        norm_drift = max(norm_drift, abs(norm - norm0))
        sz_drift = max(sz_drift, abs(prob @ ham.sz_total / norm - m0))
    return Trajectory(times, right, norm_drift, sz_drift, dt, left)


def evolve(config, initial, ham=None):
    """RK4 evolution recording the spin transferred into the right lead.

    The step is halved up to three times if the norm drifts by more than
    1e-8; after that :class:`NormDrift` is raised.
    """
    initial = np.asarray(initial, dtype=complex)
    if abs(np.linalg.norm(initial) - 1) > 1e-12:
        raise InvalidParameters("initial state must be normalized")
    if ham is None:
        ham = build_chain_hamiltonian(config)
    dt = config.dt
    for _ in range(MAX_DT_HALVINGS + 1):
        traj = _integrate(ham, initial, dt, config.total_time, config.output_dt)
        if traj.norm_drift < NORM_TOL:
            return traj
        dt /= 2
    raise NormDrift(f"norm drift {traj.norm_drift:.3e} persists at dt={2 * dt:.3g}")


def early_time_current(traj, window, lead="right"):
    """Least-squares slope of the spin transferred into ``lead`` over ``window``."""
    t1, t2 = window
    if not t2 > t1 or t1 < 0:
        raise WindowInvalid(f"window {window} is empty or negative")
    if t2 > traj.times[-1] + 1e-9:
        raise WindowInvalid(f"window end {t2} exceeds simulated time {traj.times[-1]}")
    sel = (traj.times >= t1 - 1e-9) & (traj.times <= t2 + 1e-9)
    if sel.sum() < 2:
        raise WindowInvalid(f"window {window} holds fewer than two samples")
    series = traj.delta_s_right if lead == "right" else traj.delta_s_left
    return float(np.polyfit(traj.times[sel], series[sel], 1)[0])


def run_oracle(config, window=None):
    """Ensemble-averaged early-time current into the right lead."""
    if window is None:
        window = config.default_window
    ham = build_chain_hamiltonian(config)
    trajs = [evolve(config, psi, ham) for psi in sample_initial_states(config)]
    slopes = np.array([early_time_current(tr, window) for tr in trajs])
    stderr = float(slopes.std(ddof=1) / np.sqrt(len(slopes))) if len(slopes) > 1 else 0.0
    return OracleEstimate(
        current=float(slopes.mean()),
        stderr=stderr,
        samples=len(slopes),
        window=tuple(window),
        norm_drift=max(tr.norm_drift for tr in trajs),
        sz_drift=max(tr.sz_drift for tr in trajs),
    )
