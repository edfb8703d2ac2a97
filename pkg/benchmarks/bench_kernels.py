"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from catdecay import _pykernels
from catdecay.cat_states import new_cat
from catdecay.dynamics import decay, density_matrix
from catdecay.verify import battery_points
from catdecay.wigner import _series_coefficients

try:
    from catdecay import _ckernels
except ImportError:
    _ckernels = None


def cases():
    dc = decay(new_cat(2.0, 0.5 * np.pi), 0.3)
    rho = density_matrix(decay(dc.cat, 0.0)).entries
    rho_t = density_matrix(dc).entries
    coeffs = _series_coefficients(dc)
    points = battery_points()
    return {
        "rk4 (N=40, 300 steps)": lambda k: k.damping_rk4(rho, 1e-3, 300),
        "series W (cutoff 80, 25 pts)": lambda k: [k.series_wigner(*coeffs, b, 80) for b in points],
        "parity W (N=40, 25 pts)": lambda k: [k.parity_wigner(rho_t, b) for b in points],
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("numpy", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    header = f"{'kernel':32s}" + "".join(f"{name:>12s}" for name, _ in backends) + ("     speedup" if _ckernels else "")
    print(header)
    for label, fn in cases().items():
        times = []
        for _, mod in backends:
            fn(mod)  # warm-up
            times.append(min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)))
        row = f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)
    if _ckernels is None:
        print("compiled kernels not built; run `python3 setup.py build_ext --inplace`")


if __name__ == "__main__":
    main()
