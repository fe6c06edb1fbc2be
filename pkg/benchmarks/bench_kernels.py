"""Compiled vs numpy kernels on the three hot paths.

    python3 benchmarks/bench_kernels.py [--dim 256] [--steps 20000] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from casimir_rwa import kernels
from casimir_rwa.model import HamiltonianKind, ModelParams, hamiltonian_coefficients


def workloads(dim, steps):
    rng = np.random.default_rng(0)
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi /= np.linalg.norm(psi)
    p = ModelParams(1.0, 0.05, 2.0)
    dt = 0.1 / dim
    w, u, v = hamiltonian_coefficients(p, HamiltonianKind.RWA, 0.5 * dt * np.arange(2 * steps + 1))
    return {
        "apply_quadratic": lambda k: k.apply_quadratic(1.0, 0.3j, -0.3j, psi),
        "ladder_exp": lambda k: k.ladder_exp(0.2 + 0.1j, psi, True, dim),
        "rk4_propagate": lambda k: k.rk4_propagate(psi, w, u, v, dt, steps, 1.0),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=256)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = {"numpy": kernels.python_backend}
    if kernels.compiled_backend is not None:
        backends["cython"] = kernels.compiled_backend
    else:
        print("compiled extension not built; timing numpy only")

    print(f"D = {args.dim}, rk4 steps = {args.steps}, best of {args.repeat}")
    print(f"{'kernel':<16}" + "".join(f"{name:>14}" for name in backends) + f"{'speedup':>10}")
    for label, fn in workloads(args.dim, args.steps).items():
        number = 1 if label == "rk4_propagate" else 200
        best = {}
        for name, mod in backends.items():
            t = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
            best[name] = t
        speed = f"{best['numpy'] / best['cython']:9.1f}x" if "cython" in best else ""
        print(f"{label:<16}" + "".join(f"{best[n] * 1e3:12.3f}ms" for n in backends) + f" {speed}")


if __name__ == "__main__":
    main()
