"""Counting-field master equation of the valve and its stationary currents.

Density matrices are vectorized by column stacking, so that
``vec(A X B) = kron(B.T, A) @ vec(X)``. The Liouvillian carries one counting
field per lead attached to the jump terms; its ``lambda = 0`` null vector is
the stationary state, and the derivative with respect to a counting field
gives the mean spin current into that lead.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import DegenerateSteadyState, InvalidParameters, NumericalFailure
from .valve_model import DIM, build_jump_operators, build_valve_hamiltonian

NULLSPACE_TOL = 1e-10
RESIDUAL_TOL = 1e-8

_EYE = np.eye(DIM, dtype=complex)
TRACE_ROW = _EYE.reshape(-1, order="F")


class Lead(Enum):
    LEFT = "left"
    RIGHT = "right"


def vec(rho):
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v):
    return np.asarray(v).reshape(DIM, DIM, order="F")


def left(a):
    return np.kron(_EYE, a)


def right(a):
    return np.kron(a.T, _EYE)


def sandwich(a, b):
    """Superoperator of ``X -> a X b``."""
    return np.kron(b.T, a)


@dataclass(frozen=True)
class Superoperator:
    matrix: np.ndarray
    lambda_left: float = 0.0
    lambda_right: float = 0.0

    def __call__(self, rho):
        return unvec(self.matrix @ vec(rho))

    @property
    def at_zero_field(self):
        return self.lambda_left == 0 and self.lambda_right == 0


@dataclass(frozen=True)
class SteadyState:
    rho: np.ndarray
    residual: float
    nullspace_dim: int


@dataclass(frozen=True)
class CurrentResult:
    lead: Lead
    signed_current: float
    magnitude: float
    diagnostics: SteadyState


def _lead_terms(params):
    t_left, t_right = build_jump_operators(params)
    return (
        (Lead.LEFT, t_left, params.n_left, params.p_left),
        (Lead.RIGHT, t_right, params.n_right, params.p_right),
    )


def build_liouvillian(params, lambda_left=0.0, lambda_right=0.0):
    inv_b = 1.0 / params.bandwidth
    fields = {Lead.LEFT: lambda_left, Lead.RIGHT: lambda_right}
    h = build_valve_hamiltonian(params).astype(complex)
    mat = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for lead, jump, n, p in _lead_terms(params):
        jump_dag = jump.conj().T
        h = h + p * (jump_dag @ jump + jump @ jump_dag)
        loss = n * jump @ jump_dag + (1 - n) * jump_dag @ jump
        mat -= 0.5 * inv_b * (left(loss) + right(loss.conj().T))
        phase = np.exp(1j * fields[lead])
        mat += inv_b * (
            n * phase * sandwich(jump_dag, jump) + (1 - n) * np.conj(phase) * sandwich(jump, jump_dag)
        )
    mat += -1j * (left(h) - right(h))
    return Superoperator(mat, float(lambda_left), float(lambda_right))


def counting_derivative(params, lead):
    """d L / d lambda_lead at lambda = 0."""
    for which, jump, n, _ in _lead_terms(params):
        if which is lead:
            jump_dag = jump.conj().T
            return (1j / params.bandwidth) * (n * sandwich(jump_dag, jump) - (1 - n) * sandwich(jump, jump_dag))
    raise InvalidParameters(f"unknown lead {lead!r}")


def nullspace_dimension(matrix, tol=NULLSPACE_TOL):
    s = scipy.linalg.svdvals(matrix)
    if s[0] == 0:
        return matrix.shape[0]
    return int(np.sum(s <= tol * s[0]))


def steady_state(liouvillian):
    """Unique stationary density matrix of a zero-field Liouvillian.

    One population row of ``L`` is replaced by the trace constraint and the
    resulting linear system is solved by LU with partial pivoting.
    """
    if not liouvillian.at_zero_field:
        raise InvalidParameters("steady_state needs the Liouvillian at zero counting field")
    mat = liouvillian.matrix
    null_dim = nullspace_dimension(mat)
    if null_dim != 1:
        raise DegenerateSteadyState(null_dim)
    # the |00><00| row is redundant: population rows sum to zero
    system = mat.copy()
    system[0, :] = TRACE_ROW
    rhs = np.zeros(DIM * DIM, dtype=complex)
    rhs[0] = 1.0
    v = scipy.linalg.solve(system, rhs)
    residual = float(np.linalg.norm(mat @ v))
    if not residual <= RESIDUAL_TOL:
        raise NumericalFailure(f"steady-state residual {residual:.3e} exceeds {RESIDUAL_TOL}")
    return SteadyState(unvec(v), residual, null_dim)


def spin_current(params, lead=Lead.RIGHT, state=None):
    """Mean stationary spin current into ``lead`` (positive = into the lead)."""
    if state is None:
        state = steady_state(build_liouvillian(params))
    value = 1j * (TRACE_ROW @ (counting_derivative(params, lead) @ vec(state.rho)))
    signed = float(value.real)
    return CurrentResult(lead, signed, abs(signed), state)


def dominant_eigenvalue(matrix, seed, shift, maxiter=100, tol=1e-15):
    """Eigenvalue of ``matrix`` closest to ``shift`` by inverse iteration."""
    n = matrix.shape[0]
    lu = scipy.linalg.lu_factor(matrix - shift * np.eye(n))
    x = seed / np.linalg.norm(seed)
    mu = np.vdot(x, matrix @ x)
    scale = max(np.linalg.norm(matrix, 2), 1e-300)
    for _ in range(maxiter):
        y = scipy.linalg.lu_solve(lu, x)
        norm = np.linalg.norm(y)
        if not np.isfinite(norm) or norm == 0:
            break
        x = y / norm
        mu_next = np.vdot(x, matrix @ x)
        if abs(mu_next - mu) <= tol * scale:
            return mu_next
        mu = mu_next
    raise NumericalFailure(f"inverse iteration did not converge in {maxiter} steps")


def current_via_eigenvalue(params, lead=Lead.RIGHT, dlambda=1e-5):
    """Current into ``lead`` from i * d(mu)/d(lambda) of the dominant eigenvalue.

    Central finite difference of the largest-real-part eigenvalue ``mu`` of
    the counting-field Liouvillian; independent of the null-vector route in
    :func:`spin_current` except for the shared operator assembly.
    """
    zero = build_liouvillian(params)
    seed = vec(steady_state(zero).rho)
    shift = 1e-6 * np.linalg.norm(zero.matrix, 2)
    mus = []
    for sign in (1, -1):
        fields = {"lambda_left": 0.0, "lambda_right": 0.0}
        fields["lambda_left" if lead is Lead.LEFT else "lambda_right"] = sign * dlambda
        mus.append(dominant_eigenvalue(build_liouvillian(params, **fields).matrix, seed, shift))
    return float((1j * (mus[0] - mus[1]) / (2 * dlambda)).real)
