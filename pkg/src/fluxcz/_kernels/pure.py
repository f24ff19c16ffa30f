"""NumPy fallback for the split-step propagation kernel.

Implements exactly the same stepping scheme as the compiled extension (see
``_splitstep.pyx``): a fourth-order composition of three unitary substeps
per time step.  Each substep applies exact free-evolution phases on both
sides of an exact exponential of the drive operator, with the scalar drive
sampled at the substep midpoint.  Results agree with the compiled kernel to
floating-point roundoff.
"""

import math

import numpy as np


def propagate_window(
    state: np.ndarray,
    half_phases: np.ndarray,
    q: np.ndarray,
    qh: np.ndarray,
    lam_tau: np.ndarray,
    offsets: np.ndarray,
    amp: float,
    carrier_angular: float,
    t_g: float,
    t0: float,
    h: float,
    n_steps: int,
) -> None:
    """Advance ``state`` (shape (m, n), one evolving vector per row) in place.

    ``half_phases[s]`` is exp(-i w_level tau_s / 2) for substep s,
    ``lam_tau[s]`` is (angular drive eigenvalue) * tau_s, and ``offsets``
    are the substep midpoints as fractions of the step ``h``.  ``amp`` is
    the envelope amplitude in GHz and ``carrier_angular`` the drive carrier
    in rad/ns.
    """
    inv_tg2 = 1.0 / (t_g * t_g)
    # With state rows as vectors, applying Q^dagger and Q to each vector
    # becomes right multiplication by conj(Q) and Q^T respectively.
    q_conj = np.ascontiguousarray(np.conj(q))
    q_t = np.ascontiguousarray(q.T)
    y = np.empty_like(state)
    for k in range(n_steps):
        tk = t0 + k * h
        for s in range(3):
            tm = tk + offsets[s] * h
            env = amp * (math.exp(-8.0 * tm * (tm - t_g) * inv_tg2) - 1.0)
            g = env * math.cos(carrier_angular * tm)
            state *= half_phases[s]
            if g != 0.0:
                np.matmul(state, q_conj, out=y)
                y *= np.exp(-1j * g * lam_tau[s])
                np.matmul(y, q_t, out=state)
            state *= half_phases[s]
