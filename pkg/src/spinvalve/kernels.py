"""Backend selection for the spin-chain kernels.

The compiled extension is used when it imports; setting the environment
variable ``SPINVALVE_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

import numpy as np

from . import _xy_fallback

try:
    if os.environ.get("SPINVALVE_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from . import _xy_core
except ImportError:
    _xy_core = None

DEFAULT_BACKEND = "compiled" if _xy_core is not None else "python"


def available_backends():
    return ("compiled", "python") if _xy_core is not None else ("python",)


class XYOperator:
    """Matrix-free ``H = diag + sum_k g_k (s_i^+ s_j^- + h.c.)`` on 2**nsites states."""

    def __init__(self, nsites, diag, bonds, backend="auto"):
        if backend == "auto":
            backend = DEFAULT_BACKEND
        if backend == "compiled" and _xy_core is None:
            raise ImportError("compiled spinvalve kernels are not built")
        if backend not in ("compiled", "python"):
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        self.nsites = nsites
        self.dim = 1 << nsites
        self.diag = np.ascontiguousarray(diag, dtype=float)
        self.mask_i = np.array([m for m, _, _ in bonds], dtype=np.int64)
        self.mask_j = np.array([m for _, m, _ in bonds], dtype=np.int64)
        self.coupling = np.array([g for _, _, g in bonds], dtype=float)
        if backend == "python":
            self._table = _xy_fallback.BondTable(self.dim, self.diag, self.mask_i, self.mask_j, self.coupling)

    def matvec(self, psi):
        psi = np.ascontiguousarray(psi, dtype=complex)
        out = np.empty_like(psi)
        if self.backend == "compiled":
            _xy_core.apply_hamiltonian(psi, out, self.diag, self.mask_i, self.mask_j, self.coupling)
        else:
            _xy_fallback.apply_hamiltonian(self._table, psi, out)
        return out

    __call__ = matvec

    def rk4(self, psi, dt, nsteps):
        """Advance ``psi`` (modified in place, must be contiguous complex128)."""
        if self.backend == "compiled":
            _xy_core.rk4_steps(psi, dt, nsteps, self.diag, self.mask_i, self.mask_j, self.coupling)
        else:
            _xy_fallback.rk4_steps(self._table, psi, dt, nsteps)
        return psi
