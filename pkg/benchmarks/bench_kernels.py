"""Compare the compiled and pure-Python chain kernels.

Run with ``python3 benchmarks/bench_kernels.py [--n 5] [--repeat 50]``.
"""

import argparse
import time

import numpy as np

from spinvalve.chain_oracle import ChainConfig, build_chain_hamiltonian, run_oracle
from spinvalve.kernels import available_backends
from spinvalve.valve_model import ValveParams


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5, help="lead sites per side")
    ap.add_argument("--repeat", type=int, default=50)
    args = ap.parse_args(argv)

    params = ValveParams.silicon()
    rng = np.random.default_rng(0)
    results = {}
    for backend in available_backends():
        cfg = ChainConfig(args.n, params, backend=backend)
        ham = build_chain_hamiltonian(cfg)
        psi = rng.normal(size=ham.dim) + 1j * rng.normal(size=ham.dim)
        matvec = best_of(lambda: ham.matvec(psi), args.repeat)
        oracle = best_of(lambda: run_oracle(cfg), 3)
        results[backend] = (matvec, oracle)
        print(f"{backend:>9}: matvec {matvec * 1e6:9.1f} us   oracle run {oracle:7.3f} s   (dim {ham.dim})")
    if len(results) == 2:
        (mc, oc), (mp, op) = results["compiled"], results["python"]
        print(f"  speedup: matvec x{mp / mc:.1f}, oracle x{op / oc:.1f}")
    else:
        print("compiled backend unavailable; only the Python fallback was timed")


if __name__ == "__main__":
    main()
