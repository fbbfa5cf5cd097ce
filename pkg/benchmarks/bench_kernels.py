"""Time the numba kernels against their numpy fallbacks.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both versions are called in the same process on identical inputs; the first
numba call (compilation) is excluded from the timings.
"""
import argparse
import timeit

import numpy as np

from bidisc import kernels
from bidisc._accel import HAVE_NUMBA
from bidisc.catalog import catalog
from bidisc.quadrature import _gl01


def cases():
    mu = dict(catalog())["trig0.4"]
    for n in (8, 16, 32):
        m1 = mu.moments(n)
        yield f"gram_fill N={n}", (m1, m1, n, n), kernels.gram_fill_numba, kernels.gram_fill_numpy
    for nr, na in ((32, 128), (64, 256)):
        rho, w = _gl01(nr)
        phi = 2 * np.pi * np.arange(na) / na
        P = mu.poisson(rho[:, None] * np.exp(1j * phi)[None, :])
        yield f"disc_moments {nr}x{na}", (rho, w, P, 12), kernels.disc_moments_numba, kernels.disc_moments_numpy
    for terms in (10**5, 10**6):
        yield f"atom_series S={terms:.0e}", (16, terms), kernels.atom_series_numba, kernels.atom_series_numpy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return
    print(f"{'kernel':<28}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}{'max diff':>12}")
    for name, argv, fast, slow in cases():
        a = fast(*argv)
        b = slow(*argv)
        diff = float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
        tf = min(timeit.repeat(lambda: fast(*argv), number=1, repeat=args.repeat)) * 1e3
        ts = min(timeit.repeat(lambda: slow(*argv), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<28}{tf:>12.3f}{ts:>12.3f}{ts / tf:>10.1f}{diff:>12.2e}")


if __name__ == "__main__":
    main()
