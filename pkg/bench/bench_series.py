"""Compare the compiled and pure-Python shell-summation kernels.

    python bench/bench_series.py [--repeat 5]

Each case sums a Humbert-type series with ``n`` variables to total order
``M`` (the work grows like C(M + n, n)). Prints best-of-repeat timings and
the largest relative difference between the two kernels' shell sums.
"""

import argparse
import math
import timeit

import numpy as np

from dunkl_an import _series_py

try:
    from dunkl_an import _series as _compiled
except ImportError:
    _compiled = None

CASES = [(2, 60), (3, 40), (3, 60), (4, 30), (4, 45), (6, 20)]


def _inputs(n, order):
    rng = np.random.default_rng([n, order])
    b = rng.uniform(0.3, 2.0, n)
    x = rng.uniform(-1.5, 1.5, n)
    c = b.sum() + 1.0
    leaf = np.cumprod(np.r_[1.0, 1.0 / (c + np.arange(order))])
    return b, x, leaf


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _compiled is None:
        print("compiled kernel not built; only the pure-Python timings are shown")
    print(f"{'n':>2} {'M':>3} {'terms':>9} {'python ms':>10} {'cython ms':>10} {'speedup':>8} {'max rel diff':>12}")
    for n, order in CASES:
        b, x, leaf = _inputs(n, order)
        terms = math.comb(order + n, n)
        t_py = min(timeit.repeat(lambda: _series_py.shell_sums(b, x, leaf, order),
                                 number=1, repeat=args.repeat))
        row = f"{n:>2} {order:>3} {terms:>9} {t_py * 1e3:>10.2f}"
        if _compiled is not None:
            t_c = min(timeit.repeat(lambda: _compiled.shell_sums(b, x, leaf, order),
                                    number=1, repeat=args.repeat))
            s_py, _ = _series_py.shell_sums(b, x, leaf, order)
            s_c, _ = _compiled.shell_sums(b, x, leaf, order)
            scale = np.maximum(np.abs(s_py), 1e-300)
            diff = float(np.max(np.abs(s_py - s_c) / scale))
            row += f" {t_c * 1e3:>10.3f} {t_py / t_c:>7.0f}x {diff:>12.1e}"
        print(row)


if __name__ == "__main__":
    main()
