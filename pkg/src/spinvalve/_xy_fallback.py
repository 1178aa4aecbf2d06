"""Pure-numpy versions of the kernels in ``_xy_core``."""

import numpy as np


class BondTable:
    """Gather indices and weights for each bond, precomputed once per chain."""

    def __init__(self, dim, diag, mask_i, mask_j, coupling):
        states = np.arange(dim, dtype=np.int64)
        self.diag = np.asarray(diag, dtype=float)
        self.terms = []
        for mi, mj, g in zip(mask_i, mask_j, coupling):
            differ = ((states & mi) != 0) != ((states & mj) != 0)
            self.terms.append((states ^ (mi | mj), g * differ))

    def apply(self, psi):
        out = self.diag * psi
        for source, weight in self.terms:
            out += weight * psi[source]
        return out


def apply_hamiltonian(table, psi, out):
    out[:] = table.apply(psi)


def rk4_steps(table, psi, dt, nsteps):
    rhs = lambda x: -1j * table.apply(x)
    for _ in range(nsteps):
        k1 = rhs(psi)
        k2 = rhs(psi + 0.5 * dt * k1)
        k3 = rhs(psi + 0.5 * dt * k2)
        k4 = rhs(psi + dt * k3)
        psi += (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
