"""Time the compiled and pure-Python kernels on the workloads the solvers use.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one row per kernel with the best time of each backend and the speedup.
"""

import argparse
import timeit

import numpy as np

from nematic_profile.kernels import available_backends


def workloads():
    x = np.linspace(-1.0, 1.0, 401)
    values = 3.5 + 0.2 * np.cos(np.pi * x / 2)
    dx = x[1] - x[0]
    return {
        "rk4_endpoint (2000 steps)": lambda k: k.rk4_endpoint(3.3, 0.0, 30.0, 1.0, 2000),
        "rk4_trajectory (2000 steps)": lambda k: k.rk4_trajectory(3.3, 0.0, 30.0, 1.0, 2000),
        "energy_parts (400 intervals)": lambda k: k.energy_parts(values, dx, 30.0),
        "energy_gradient (400 intervals)": lambda k: k.energy_gradient(values, dx, 30.0),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = available_backends()
    names = sorted(backends, reverse=True)
    print(f"{'kernel':34s}" + "".join(f"{n + ' [us]':>16s}" for n in names) + f"{'speedup':>10s}")
    for label, fn in workloads().items():
        best = {}
        for name in names:
            mod = backends[name]
            timer = timeit.Timer(lambda: fn(mod))
            number, _ = timer.autorange()
            best[name] = min(timer.repeat(args.repeat, number)) / number * 1e6
        speed = f"{best['python'] / best['cython']:9.1f}x" if "cython" in best else "      n/a"
        print(f"{label:34s}" + "".join(f"{best[n]:16.1f}" for n in names) + f" {speed}")


if __name__ == "__main__":
    main()
