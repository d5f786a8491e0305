"""Compare the compiled and pure-Python ellipsoid traversals.

    python benchmarks/bench_enum.py [--dims 4,6,8] [--repeat 3]

Each case is a random positive definite form with a fixed seed; both
backends must return the same points.
"""
import argparse
import time
from math import gamma, pi

import numpy as np

from weilforms import _enum


def random_problem(n, rng, target_points=20000):
    a = rng.standard_normal((n, n))
    Q = a @ a.T + n * np.eye(n)
    R = np.linalg.cholesky(Q).T
    qf = np.zeros((n, n))
    for i in range(n):
        qf[i, i] = R[i, i] ** 2
        for j in range(i + 1, n):
            qf[i, j] = R[i, j] / R[i, i]
    c = rng.uniform(-0.5, 0.5, n)
    # ellipsoid volume ~ target_points fixes the radius
    unit_ball = pi ** (n / 2) / gamma(n / 2 + 1)
    r2 = (target_points * np.sqrt(np.linalg.det(Q)) / unit_ball) ** (2 / n)
    return qf, c, float(r2)


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", default="4,6,8")
    parser.add_argument("--points", type=int, default=20000, help="approximate lattice points per case")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = _enum.available_backends()
    print(f"backends: {', '.join(backends)} (default {_enum.BACKEND})")
    rng = np.random.default_rng(args.seed)
    header = f"{'dim':>4} {'points':>8}" + "".join(f" {b + ' (s)':>13}" for b in backends)
    if len(backends) > 1:
        header += f" {'speedup':>8}"
    print(header)
    for n in (int(d) for d in args.dims.split(",")):
        qf, c, r2 = random_problem(n, rng, args.points)
        times, results = {}, {}
        for b in backends:
            times[b], pts = best_time(lambda: _enum.fincke_pohst(qf, c, r2, 10**9, backend=b), args.repeat)
            results[b] = sorted(tuple(int(v) for v in y) for y in pts)
        if len({tuple(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree at dim {n}")
        row = f"{n:>4} {len(results[backends[0]]):>8}" + "".join(f" {times[b]:>13.4f}" for b in backends)
        if len(backends) > 1:
            row += f" {times['python'] / times['cython']:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
