# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled split-step propagation kernel.

One time step is a fourth-order composition of three unitary substeps.  A
substep of duration tau applies exact free-evolution phases for tau/2 on
each side of the exact exponential of the drive operator, whose scalar
prefactor f(t) cos(w_d t) is sampled at the substep midpoint.  The drive
operator W enters through its eigendecomposition W = Q diag(lam) Q^dagger,
so every factor is unitary to roundoff and column norms are preserved over
arbitrarily many steps.

Complex arrays are split into real and imaginary parts so the inner loops
are plain double arithmetic the C compiler can vectorize.
"""

import numpy as np

from libc.math cimport cos, exp, sin


def propagate_window(
    state,
    half_phases,
    q,
    qh,
    double[:, ::1] lam_tau,
    double[::1] offsets,
    double amp,
    double carrier_angular,
    double t_g,
    double t0,
    double h,
    Py_ssize_t n_steps,
):
    """Advance ``state`` (shape (m, n), one evolving vector per row) in place.

    Mirrors ``fluxcz._kernels.pure.propagate_window``; see that module for
    the argument conventions.
    """
    cdef double[:, ::1] sr = np.ascontiguousarray(state.real)
    cdef double[:, ::1] si = np.ascontiguousarray(state.imag)
    cdef double[:, ::1] hr = np.ascontiguousarray(half_phases.real)
    cdef double[:, ::1] hi = np.ascontiguousarray(half_phases.imag)
    cdef double[:, ::1] qr = np.ascontiguousarray(q.real)
    cdef double[:, ::1] qi = np.ascontiguousarray(q.imag)
    cdef double[:, ::1] qhr = np.ascontiguousarray(qh.real)
    cdef double[:, ::1] qhi = np.ascontiguousarray(qh.imag)

    cdef Py_ssize_t m = sr.shape[0]
    cdef Py_ssize_t n = sr.shape[1]
    cdef double[:, ::1] yr = np.empty((m, n))
    cdef double[:, ::1] yi = np.empty((m, n))

    cdef Py_ssize_t k, s, c, j, l
    cdef double inv_tg2 = 1.0 / (t_g * t_g)
    cdef double tk, tm, env, g, theta, pr, pi, ar, ai, tr

    with nogil:
        for k in range(n_steps):
            tk = t0 + k * h
            for s in range(3):
                tm = tk + offsets[s] * h
                env = amp * (exp(-8.0 * tm * (tm - t_g) * inv_tg2) - 1.0)
                g = env * cos(carrier_angular * tm)
                for c in range(m):
                    for j in range(n):
                        tr = sr[c, j]
                        sr[c, j] = tr * hr[s, j] - si[c, j] * hi[s, j]
                        si[c, j] = tr * hi[s, j] + si[c, j] * hr[s, j]
                if g != 0.0:
                    # y[c] = Q^dagger state[c]
                    for c in range(m):
                        for j in range(n):
                            ar = 0.0
                            ai = 0.0
                            for l in range(n):
                                ar = ar + qhr[j, l] * sr[c, l] - qhi[j, l] * si[c, l]
                                ai = ai + qhr[j, l] * si[c, l] + qhi[j, l] * sr[c, l]
                            yr[c, j] = ar
                            yi[c, j] = ai
                    # y[c] *= exp(-i g lam tau)
                    for j in range(n):
                        theta = g * lam_tau[s, j]
                        pr = cos(theta)
                        pi = -sin(theta)
                        for c in range(m):
                            tr = yr[c, j]
                            yr[c, j] = tr * pr - yi[c, j] * pi
                            yi[c, j] = tr * pi + yi[c, j] * pr
                    # state[c] = Q y[c]
                    for c in range(m):
                        for j in range(n):
                            ar = 0.0
                            ai = 0.0
                            for l in range(n):
                                ar = ar + qr[j, l] * yr[c, l] - qi[j, l] * yi[c, l]
                                ai = ai + qr[j, l] * yi[c, l] + qi[j, l] * yr[c, l]
                            sr[c, j] = ar
                            si[c, j] = ai
                for c in range(m):
                    for j in range(n):
                        tr = sr[c, j]
                        sr[c, j] = tr * hr[s, j] - si[c, j] * hi[s, j]
                        si[c, j] = tr * hi[s, j] + si[c, j] * hr[s, j]

    state[:, :] = np.asarray(sr) + 1j * np.asarray(si)
