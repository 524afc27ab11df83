"""Compare the compiled and pure-Python series kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is timed on the workload it sees in practice: a 601-point
spectrum, a 30-entry group-index scan and a batch of 1F1 evaluations. The
results of the two backends are also compared so that a speedup cannot hide
a disagreement.
"""
import argparse
import timeit

import numpy as np

from cseit import _kernels_py

try:
    from cseit import _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

GAMMA = 2 * np.pi * 3e6
GAMMA0 = 2 * np.pi * 1e3
G2 = 0.5 * GAMMA
TOL, MAX_TERMS = 1e-12, 10000


def spectrum_inputs(n2=1, alpha_sq=3.0, points=601):
    delta1 = np.linspace(-3, 3, points) * GAMMA
    gt = GAMMA + 1j * delta1
    g0t = GAMMA0 - 1j * delta1
    gn2 = G2**2 / (gt * g0t) * n2
    return np.full(points, alpha_sq / n2), gn2.astype(complex)


def workloads(mod):
    mu, gn2 = spectrum_inputs()
    mu_hi, gn2_hi = spectrum_inputs(alpha_sq=500.0)
    x = G2**2 / GAMMA**2
    a, b = GAMMA0**2 / GAMMA**2, GAMMA * GAMMA0 / GAMMA**2
    hyp_args = [(1.0 / g, 1.0 + 1.0 / g, 3.0) for g in gn2[::6]]
    return {
        "D batch, 601 pts, mu=3": lambda: mod.poisson_inverse_many(mu, gn2, TOL, MAX_TERMS),
        "D batch, 601 pts, mu=500": lambda: mod.poisson_inverse_many(mu_hi, gn2_hi, TOL, MAX_TERMS),
        "group sum, N2=1..30": lambda: [mod.poisson_group_sum(3.0 / n, x * n, a, b, TOL, MAX_TERMS)
                                        for n in range(1, 31)],
        "1F1 series, 101 calls": lambda: [mod.hyp1f1_series(p, q, z, TOL, MAX_TERMS) for p, q, z in hyp_args],
    }


def best_time(fn, repeat):
    number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def agreement(py, c):
    mu, gn2 = spectrum_inputs()
    dp, _ = py.poisson_inverse_many(mu, gn2, TOL, MAX_TERMS)
    dc, _ = c.poisson_inverse_many(mu, gn2, TOL, MAX_TERMS)
    return float(np.max(np.abs(dp - dc) / np.abs(dp)))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    py_jobs = workloads(_kernels_py)
    c_jobs = workloads(_kernels_c) if _kernels_c is not None else {}
    print(f"{'workload':28s} {'python':>12s} {'cython':>12s} {'speedup':>9s}")
    for name, job in py_jobs.items():
        tp = best_time(job, args.repeat)
        if name in c_jobs:
            tc = best_time(c_jobs[name], args.repeat)
            print(f"{name:28s} {tp * 1e3:10.3f}ms {tc * 1e3:10.3f}ms {tp / tc:8.1f}x")
        else:
            print(f"{name:28s} {tp * 1e3:10.3f}ms {'n/a':>12s}")
    if _kernels_c is None:
        print("compiled extension not available; build with `pip install -e . --no-build-isolation`")
    else:
        print(f"max rel. difference between backends (D batch): {agreement(_kernels_py, _kernels_c):.1e}")


if __name__ == "__main__":
    main()
