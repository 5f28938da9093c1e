#!/usr/bin/env python3
"""Benchmark the pure-Python and compiled arithmetic kernels.

The two backends implement an identical contract (see
src/qskein/_kernels/__init__.py); this script times them on the same raw
data so the speedup of the compiled extension can be measured honestly.
Workloads mix synthetic Laurent polynomials with torus elements taken from
real cluster-variable expansions on the annulus, which is where the hot
loops actually spend their time.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat N] [--scale K]
"""

from __future__ import annotations

import argparse
import random
import timeit

from qskein import AnnulusModel
from qskein._kernels import _kernel_py

try:
    from qskein._kernels import _ckernel
except ImportError:
    _ckernel = None


def random_coeff(rng: random.Random, size: int, span: int) -> dict:
    """A sparse Laurent polynomial in v with nonzero integer coefficients."""
    out: dict = {}
    while len(out) < size:
        out[rng.randint(-span, span)] = rng.choice([-1, 1]) * rng.randint(1, 99)
    return out


def raw_terms(element) -> dict:
    """Extract kernel-level data (exponent tuple -> coeff dict) from a TorusElement."""
    return {alpha: dict(c.items()) for alpha, c in element.terms()}


def build_workloads(rng: random.Random, scale: int):
    """Return a list of (name, fn_name, args) benchmark cases."""
    model = AnnulusModel(bound=9)
    lam = tuple(tuple(row) for row in model.seed.lam.matrix)
    small = raw_terms(model.x(3) * model.x(-2))
    big = raw_terms(model.x(7) * model.x(-7))
    loop = raw_terms(model.loop_ell())

    coeff_pairs_small = [
        (random_coeff(rng, 6, 12), random_coeff(rng, 6, 12)) for _ in range(200 * scale)
    ]
    coeff_pairs_big = [
        (random_coeff(rng, 40, 200), random_coeff(rng, 40, 200)) for _ in range(20 * scale)
    ]

    def run_coeff(fn, pairs):
        for a, b in pairs:
            fn(a, b)

    def run_torus(fn, x, y, reps):
        for _ in range(reps):
            fn(x, y, lam)

    return [
        ("coeff_mul  6x6 terms x200", "coeff_mul", lambda k: run_coeff(k.coeff_mul, coeff_pairs_small)),
        ("coeff_mul 40x40 terms x20", "coeff_mul", lambda k: run_coeff(k.coeff_mul, coeff_pairs_big)),
        ("coeff_add  6+6 terms x200", "coeff_add", lambda k: run_coeff(k.coeff_add, coeff_pairs_small)),
        ("torus_mul small (annulus)", "torus_mul", lambda k: run_torus(k.torus_mul, small, loop, 50 * scale)),
        ("torus_mul large (annulus)", "torus_mul", lambda k: run_torus(k.torus_mul, big, big, 2 * scale)),
    ]


def check_parity(rng: random.Random) -> None:
    """Both kernels must agree bit-for-bit before timings mean anything."""
    if _ckernel is None:
        return
    model = AnnulusModel(bound=6)
    lam = tuple(tuple(row) for row in model.seed.lam.matrix)
    x, y = raw_terms(model.x(5)), raw_terms(model.x(-4))
    assert _kernel_py.torus_mul(x, y, lam) == _ckernel.torus_mul(x, y, lam)
    for _ in range(50):
        a, b = random_coeff(rng, 8, 30), random_coeff(rng, 8, 30)
        assert _kernel_py.coeff_mul(a, b) == _ckernel.coeff_mul(a, b)
        assert _kernel_py.coeff_add(a, b) == _ckernel.coeff_add(a, b)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions (best is reported)")
    parser.add_argument("--scale", type=int, default=1, help="multiply workload sizes by this factor")
    args = parser.parse_args()

    rng = random.Random(0)
    check_parity(rng)
    cases = build_workloads(rng, args.scale)

    backends = [("python", _kernel_py)]
    if _ckernel is not None:
        backends.append(("c", _ckernel))
    else:
        print("compiled kernel not built; timing the pure-Python backend only\n")

    header = f"{'workload':<28}" + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, _, runner in cases:
        times = []
        for _, module in backends:
            best = min(timeit.repeat(lambda: runner(module), number=1, repeat=args.repeat))
            times.append(best)
        row = f"{label:<28}" + "".join(f"{t * 1000:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
