#!/usr/bin/env python3
"""Compiled vs NumPy kernels.

    python benchmarks/bench_backends.py [--repeats 5] [--output bench_backends.csv]

Times each kernel in ``halflap._ckernels`` and ``halflap._pykernels`` on the
same inputs, checks that they agree, and writes one CSV row per case.
"""
import argparse
import csv
import sys
import time

import numpy as np

from halflap import _pykernels

try:
    from halflap import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    s = np.linspace(0.01, np.pi - 0.01, 512)
    b = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    c = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    return [
        ("log_cot_half n=1e6", "log_cot_half", (np.linspace(0.001, 3.14, 10**6),)),
        ("odd_mode k=255 n=512", "odd_mode", (255, s, 1.0)),
        ("odd_mode k=-4095 n=512", "odd_mode", (-4095, s, 1.0)),
        ("direct_convolve P=1024", "direct_convolve", (b, c)),
        ("mode_series n_max=1e5 n=16", "mode_series", (3, s[::32].copy(), 1.0, 10**5)),
    ]


def timeit(fn, args, repeats):
    fn(*args)
    t = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        t.append(time.perf_counter() - t0)
    return np.median(t) * 1e3, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--output", "-o", default="-")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the NumPy fallback is available", file=sys.stderr)
        return 1

    rows = []
    for label, name, fargs in cases(np.random.default_rng(args.seed)):
        t_py, out_py = timeit(getattr(_pykernels, name), fargs, args.repeats)
        t_c, out_c = timeit(getattr(_ckernels, name), fargs, args.repeats)
        diff = float(np.max(np.abs(out_py - out_c)) / max(1.0, np.max(np.abs(out_py))))
        rows.append([label, "%.4g" % t_py, "%.4g" % t_c, "%.3g" % (t_py / t_c), "%.2e" % diff])
        print(f"{label:30s} python {t_py:9.3f} ms  cython {t_c:9.3f} ms  x{t_py / t_c:6.2f}  diff {diff:.1e}",
              file=sys.stderr)

    out = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["case", "python_ms", "cython_ms", "speedup", "max_rel_diff"])
    w.writerows(rows)
    if out is not sys.stdout:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
