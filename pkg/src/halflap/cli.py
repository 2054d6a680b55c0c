"""``halflap`` command line.

Subcommands::

    halflap apply  --function quartic --n 16 --l 1.1 --extension even
    halflap apply  --input samples.txt --n 16 --l 1.1
    halflap sweep  --function quartic --n 2^2..2^13 --l-range 0.01:10:0.01 --output err.csv
    halflap bench  --function quartic --n 2^16,2^18 --l 1.1 --output bench.csv
    halflap verify --level fast

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from halflap.driver import apply_to_function, half_laplacian_full
from halflap.extensions import Extension
from halflap.reference import REFERENCES, get_reference
from halflap.spectral import DEFAULT_KRASNY_EPS, SampleVector, make_grid
from halflap.verify import LEVELS, run_suites

log = logging.getLogger("halflap")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3

SWEEP_FIELDS = ["function", "N", "L", "extension", "max_error", "runtime_ms"]
BENCH_FIELDS = ["function", "N", "L", "extension", "repeats", "median_ms", "mean_ms",
                "std_ms", "max_error", "ratio"]
EXTENSIONS = [e.value for e in Extension]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for verification failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v) -> str:
    """Shortest round-trip repr, so equal inputs give byte-identical files."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def parse_int_list(text: str) -> list[int]:
    """``"4,8,16"``, ``"2^10"`` or ``"2^2..2^13"`` (all powers in between)."""
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        if ".." in tok:
            lo, hi = tok.split("..")
            if not (lo.startswith("2^") and hi.startswith("2^")):
                raise UsageError(f"ranges must be powers of two like 2^2..2^13, got {tok!r}")
            out.extend(2**p for p in range(int(lo[2:]), int(hi[2:]) + 1))
        elif tok.startswith("2^"):
            out.append(2 ** int(tok[2:]))
        else:
            out.append(int(tok))
    if not out:
        raise UsageError("empty N list")
    return out


def parse_float_list(text: str) -> list[float]:
    out = [float(t) for t in text.replace(" ", "").split(",") if t]
    if not out:
        raise UsageError("empty L list")
    return out


def parse_range(text: str) -> list[float]:
    """``start:stop:step``, stop included; values rounded to 12 digits."""
    try:
        start, stop, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"--l-range needs start:stop:step, got {text!r}") from None
    if step <= 0 or stop < start:
        raise UsageError("--l-range needs step > 0 and stop >= start")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def _ints(args):
    try:
        n_list = parse_int_list(args.n)
    except ValueError as exc:
        raise UsageError(f"bad --n: {exc}") from None
    if min(n_list) < 2:
        raise UsageError("every N must be >= 2")
    return n_list


def _ls(args):
    if args.l_range is not None:
        l_list = parse_range(args.l_range)
    else:
        try:
            l_list = parse_float_list(args.l)
        except ValueError as exc:
            raise UsageError(f"bad --l: {exc}") from None
    if min(l_list) <= 0:
        raise UsageError("every L must be > 0")
    return l_list


def _reference(name):
    try:
        return get_reference(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _extension(args, ref):
    return Extension.parse(args.extension) if args.extension else ref.recommended_extension


def read_samples(path: str, n: int) -> np.ndarray:
    """``2N`` lines of ``re im`` on the full-period grid."""
    data = np.loadtxt(path, ndmin=2)
    if data.shape[0] != 2 * n:
        raise ValueError(f"{path}: expected {2 * n} lines for N={n}, found {data.shape[0]}")
    if data.shape[1] == 1:
        return data[:, 0].astype(complex)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: each line must hold 're im'")
    return data[:, 0] + 1j * data[:, 1]


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def cmd_apply(args) -> int:
    n_list = _ints(args)
    l_list = parse_float_list(args.l)
    if len(n_list) != 1 or len(l_list) != 1:
        raise UsageError("apply takes a single --n and --l")
    n, L = n_list[0], l_list[0]
    if L <= 0:
        raise UsageError("L must be > 0")
    if (args.input is None) == (args.function is None):
        raise UsageError("give exactly one of --function or --input")
    if args.input is not None:
        values = read_samples(args.input, n)
        grid = make_grid(n, L, full_period=True)
        res = half_laplacian_full(SampleVector(values, grid), args.krasny_eps)
    else:
        ref = _reference(args.function)
        _, res = apply_to_function(ref.f, n, L, _extension(args, ref), eps=args.krasny_eps)
    out, close = _open_out(args.output)
    try:
        w = csv.writer(out, lineterminator="\n")
        if res.is_real:
            w.writerow(["x", "s", "value"])
            for x, s, v in zip(res.x, res.s, res.values):
                w.writerow([fmt(x), fmt(s), fmt(v)])
        else:
            w.writerow(["x", "s", "re", "im"])
            for x, s, v in zip(res.x, res.s, res.values):
                w.writerow([fmt(x), fmt(s), fmt(v.real), fmt(v.imag)])
    finally:
        if close:
            out.close()
    return EXIT_OK


def sweep_cell(ref, n, L, ext, eps, timing=True):
    """One :data:`SWEEP_FIELDS` row; failures give ``nan`` instead of raising."""
    t0 = time.perf_counter()
    try:
        with np.errstate(all="ignore"):
            x, res = apply_to_function(ref.f, n, L, ext, eps=eps)
            err = float(np.max(np.abs(res.values - ref.exact(x))))
        if not np.isfinite(err):
            err = float("inf")
    except Exception as exc:  # noqa: BLE001 - a bad cell must not stop the sweep
        log.warning("%s N=%d L=%s: %s", ref.name, n, fmt(L), exc)
        err = float("nan")
    ms = (time.perf_counter() - t0) * 1e3 if timing else 0.0
    return [ref.name, n, L, ext.value, err, ms]


def write_plot_data(path, rows):
    """Error vs L, one blank-line separated block per N (gnuplot ``index``)."""
    with open(path, "w") as f:
        blocks = {}
        for row in rows:
            blocks.setdefault(row[1], []).append(row)
        for i, (n, block) in enumerate(blocks.items()):
            if i:
                f.write("\n\n")
            f.write(f"# N={n}\n# L max_error\n")
            for row in block:
                f.write(f"{fmt(row[2])} {fmt(row[4])}\n")


def cmd_sweep(args) -> int:
    ref = _reference(args.function)
    ext = _extension(args, ref)
    n_list, l_list = _ints(args), _ls(args)
    cells = [(n, L) for n in n_list for L in l_list]

    def run(cell):
        return sweep_cell(ref, cell[0], cell[1], ext, args.krasny_eps, timing=not args.no_timing)

    if args.threads > 1:
        with ThreadPoolExecutor(args.threads) as pool:
            rows = list(pool.map(run, cells))
    else:
        rows = [run(c) for c in cells]

    out, close = _open_out(args.output)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(SWEEP_FIELDS)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    finally:
        if close:
            out.close()
    if args.plot_data:
        write_plot_data(args.plot_data, rows)
    return EXIT_OK


def bench_rows(ref, n_list, L, ext, repeats, eps):
    rows = []
    prev = None
    for n in n_list:
        apply_to_function(ref.f, n, L, ext, eps=eps)  # warm-up
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            x, res = apply_to_function(ref.f, n, L, ext, eps=eps)
            times.append((time.perf_counter() - t0) * 1e3)
        err = float(np.max(np.abs(res.values - ref.exact(x))))
        med = float(np.median(times))
        ratio = med / prev if prev else float("nan")
        prev = med
        rows.append([ref.name, n, L, ext.value, repeats, med, float(np.mean(times)),
                     float(np.std(times)), err, ratio])
    return rows


def cmd_bench(args) -> int:
    ref = _reference(args.function)
    ext = _extension(args, ref)
    n_list = _ints(args)
    l_list = parse_float_list(args.l)
    if len(l_list) != 1 or l_list[0] <= 0:
        raise UsageError("bench takes a single positive --l")
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    rows = bench_rows(ref, n_list, l_list[0], ext, args.repeats, args.krasny_eps)
    out, close = _open_out(args.output)
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(BENCH_FIELDS)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_suites(args.level, seed=args.seed)
    buf = io.StringIO()
    width = max(len(f"{c.suite}: {c.name}") for c in checks)
    for c in checks:
        label = f"{c.suite}: {c.name}"
        buf.write(f"{'PASS' if c.passed else 'FAIL'}  {label:<{width}}  err={c.error:.3e}  tol={c.tol:.0e}\n")
    failed = sum(not c.passed for c in checks)
    buf.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    out, close = _open_out(args.output)
    try:
        out.write(buf.getvalue())
    finally:
        if close:
            out.close()
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def _nonneg_float(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="halflap", description="Spectral half Laplacian on the real line.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default_n=None, default_l="1"):
        sp.add_argument("--function", choices=sorted(REFERENCES),
                        help="named test function")
        sp.add_argument("--n", default=default_n, required=default_n is None,
                        help="N, or a list: 4,8,16 / 2^10 / 2^2..2^13")
        sp.add_argument("--l", default=default_l, help="map scale L (or a comma list for sweep)")
        sp.add_argument("--extension", choices=EXTENSIONS,
                        help="extension to [0, 2pi]; default depends on the function")
        sp.add_argument("--output", "-o", help="output file (default stdout)")
        sp.add_argument("--krasny-eps", type=_nonneg_float, default=DEFAULT_KRASNY_EPS,
                        help="zero Fourier coefficients below this size (0 disables)")

    a = sub.add_parser("apply", help="apply the operator and print x, s, value")
    common(a)
    a.add_argument("--input", help="file with 2N lines 're im' on the full-period grid")
    a.set_defaults(func=cmd_apply)

    s = sub.add_parser("sweep", help="error table over N and L")
    common(s)
    s.add_argument("--l-range", help="start:stop:step, overrides --l")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--plot-data", help="also write gnuplot data (error vs L, one block per N)")
    s.add_argument("--no-timing", action="store_true",
                   help="write runtime_ms=0 so the file is reproducible byte for byte")
    s.set_defaults(func=cmd_sweep, function="quartic")

    b = sub.add_parser("bench", help="runtime against N")
    common(b, default_l="1.1")
    b.add_argument("--repeats", type=int, default=3)
    b.set_defaults(func=cmd_bench, function="quartic")

    v = sub.add_parser("verify", help="run the oracle suites")
    v.add_argument("--level", choices=LEVELS, default="fast")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--output", "-o")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"halflap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"halflap: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # malformed sample files surface here
        if getattr(args, "input", None):
            print(f"halflap: I/O error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"halflap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
