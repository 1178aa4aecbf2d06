# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled kernels for matrix-free XY spin-chain Hamiltonians.

A basis state is an integer whose bits are the spin-up flags of the sites.
Every bond ``(mask_i, mask_j, g)`` contributes ``g (s_i^+ s_j^- + h.c.)``,
i.e. it moves amplitude between states that differ by flipping both bits
when the two bits disagree.
"""

import numpy as np


cdef inline long long _insert_zero(long long r, int pos) noexcept nogil:
    cdef long long low = r & ((1LL << pos) - 1)
    return ((r >> pos) << (pos + 1)) | low


cdef inline int _bit_index(long long mask) noexcept nogil:
    cdef int k = 0
    while (mask >> k) != 1:
        k += 1
    return k


cdef void _apply(const double complex[::1] psi, double complex[::1] out,
                 const double[::1] diag, const long long[::1] mask_i,
                 const long long[::1] mask_j, const double[::1] coupling,
                 double complex scale) noexcept nogil:
    cdef Py_ssize_t dim = psi.shape[0]
    cdef Py_ssize_t nb = coupling.shape[0]
    cdef Py_ssize_t s, k, r
    cdef long long mi, mj, base, a, b
    cdef int lo, hi
    cdef double complex g
    for s in range(dim):
        out[s] = scale * diag[s] * psi[s]
    for k in range(nb):
        mi = mask_i[k]
        mj = mask_j[k]
        g = scale * coupling[k]
        lo = _bit_index(mi if mi < mj else mj)
        hi = _bit_index(mj if mi < mj else mi)
        # only pairs (bit i up, bit j down) <-> (bit i down, bit j up) couple
        for r in range(dim >> 2):
            base = _insert_zero(_insert_zero(r, lo), hi)
            a = base | mi
            b = base | mj
            out[a] = out[a] + g * psi[b]
            out[b] = out[b] + g * psi[a]


def apply_hamiltonian(const double complex[::1] psi, double complex[::1] out,
                      const double[::1] diag, const long long[::1] mask_i,
                      const long long[::1] mask_j, const double[::1] coupling):
    with nogil:
        _apply(psi, out, diag, mask_i, mask_j, coupling, 1.0)


def rk4_steps(double complex[::1] psi, double dt, Py_ssize_t nsteps,
              const double[::1] diag, const long long[::1] mask_i,
              const long long[::1] mask_j, const double[::1] coupling):
    """Advance ``psi`` in place by ``nsteps`` RK4 steps of ``d psi/dt = -i H psi``."""
    cdef Py_ssize_t dim = psi.shape[0]
    cdef Py_ssize_t s, step
    cdef double complex[::1] k1 = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] k2 = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] k3 = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] k4 = np.empty(dim, dtype=np.complex128)
    cdef double complex[::1] tmp = np.empty(dim, dtype=np.complex128)
    cdef double complex mi = -1j
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    with nogil:
        for step in range(nsteps):
            _apply(psi, k1, diag, mask_i, mask_j, coupling, mi)
            for s in range(dim):
                tmp[s] = psi[s] + half * k1[s]
            _apply(tmp, k2, diag, mask_i, mask_j, coupling, mi)
            for s in range(dim):
                tmp[s] = psi[s] + half * k2[s]
            _apply(tmp, k3, diag, mask_i, mask_j, coupling, mi)
            for s in range(dim):
                tmp[s] = psi[s] + dt * k3[s]
            _apply(tmp, k4, diag, mask_i, mask_j, coupling, mi)
            for s in range(dim):
                psi[s] = psi[s] + sixth * (k1[s] + 2.0 * k2[s] + 2.0 * k3[s] + k4[s])
