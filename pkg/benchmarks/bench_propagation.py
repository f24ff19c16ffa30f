"""Benchmark the compiled propagation kernel against the NumPy fallback.

The propagation inner loop dominates the cost of gate optimization (a few
hundred propagations per optimized point), so the compiled/pure ratio is
the single number that decides sweep runtimes.

Usage: python benchmarks/bench_propagation.py [--t-g NS] [--repeats N]
"""

import argparse
import math
import time

import numpy as np

from fluxcz import CouplingSpec, DrivePulse, FluxoniumParams, assemble, diagonalize, propagate
from fluxcz._kernels import get_backend
from fluxcz.metrics import rabi_cycle_amplitude


def build_case(t_g: float):
    qubit_a = diagonalize(FluxoniumParams(1.5, 1.0, 5.5, math.pi))
    qubit_b = diagonalize(FluxoniumParams(1.2, 1.0, 5.7, math.pi))
    system = assemble(qubit_a, qubit_b, CouplingSpec("capacitive", 0.2))
    omega = system.transition((1, 1), (2, 1))
    element = abs(system.n_b[system.index((2, 1)), system.index((1, 1))])
    pulse = DrivePulse(
        amplitude=rabi_cycle_amplitude(t_g, element),
        omega_d=omega,
        t_g=t_g,
        eta_a=0.0,
        eta_b=1.0,
    )
    return system, pulse


def time_backend(system, pulse, backend: str, repeats: int) -> tuple:
    result = propagate(system, pulse, backend=backend)  # warm up and validate
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        propagate(system, pulse, backend=backend)
        times.append(time.perf_counter() - start)
    return min(times), result.evolved_columns


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t-g", type=float, default=50.0, help="gate time in ns")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    system, pulse = build_case(args.t_g)
    n_steps = int(math.ceil(args.t_g / pulse.default_step))
    print(f"gate time {args.t_g} ns, {n_steps} steps, 4 columns, dim 25")

    rows = []
    reference = None
    for backend in ("pure", "compiled"):
        try:
            get_backend(backend)
        except ValueError:
            print(f"{backend:9s}: not available")
            continue
        best, columns = time_backend(system, pulse, backend, args.repeats)
        if reference is None:
            reference = columns
            agreement = 0.0
        else:
            agreement = float(np.max(np.abs(columns - reference)))
        rows.append((backend, best, agreement))

    base = rows[0][1]
    print(f"{'backend':9s} {'time':>10s} {'us/step':>9s} {'speedup':>8s} {'max diff':>10s}")
    for backend, best, agreement in rows:
        print(
            f"{backend:9s} {best:9.3f}s {1e6 * best / n_steps:9.2f} "
            f"{base / best:7.2f}x {agreement:10.2e}"
        )


if __name__ == "__main__":
    main()
