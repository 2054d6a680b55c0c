"""Acceptance criteria, each at its stated tolerance.

Every test prints one ``PASS``/``FAIL`` line to the terminal (even under
output capture) and then asserts.  Run alone with::

    pytest tests/test_acceptance.py -v
"""
import time

import numpy as np
import pytest

from halflap.cli import bench_rows
from halflap.driver import apply_to_function, half_laplacian_full, half_laplacian_periodic
from halflap.extensions import Extension, extend_even
from halflap.fastconv import circular_convolve, direct_convolve, odd_mode_combination
from halflap.kernel import (
    half_lap_mode_cos,
    half_lap_mode_odd,
    half_lap_mode_odd_2f1,
    half_lap_mode_sin,
)
from halflap.reference import get_reference, oracle_mode_series
from halflap.spectral import DEFAULT_KRASNY_EPS, SampleVector, make_grid


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})")
        return ok

    return emit


def max_err(name, n, L, ext):
    ref = get_reference(name)
    x, res = apply_to_function(ref.f, n, L, ext)
    return float(np.max(np.abs(res.values - ref.exact(x))))


def test_criterion_1_quartic_periodic(report):
    ref = get_reference("quartic")
    t0 = time.perf_counter()
    x, res = apply_to_function(ref.f, 4096, 1.1, "none")
    elapsed = time.perf_counter() - t0
    err = float(np.max(np.abs(res.values - ref.exact(x))))
    ok = err <= 1e-12 and elapsed < 1.0
    assert report(1, "quartic, periodic driver, N=4096, L=1.1", ok,
                  f"error {err:.2e} <= 1e-12, runtime {elapsed * 1e3:.1f} ms < 1 s")


def test_criterion_2_quartic_full(report):
    ref = get_reference("quartic")
    g = make_grid(4096, 1.1)
    samples = SampleVector(ref.f(g.x), g)
    periodic = half_laplacian_periodic(samples).values
    full = half_laplacian_full(extend_even(samples)).values
    agree = float(np.max(np.abs(full - periodic)))
    err = float(np.max(np.abs(full - ref.exact(g.x))))
    ok = agree <= 1e-13 and err <= 1e-12
    assert report(2, "quartic, full driver vs periodic and exact, N=4096", ok,
                  f"drivers differ by {agree:.2e} <= 1e-13, error {err:.2e} <= 1e-12")


def test_criterion_3_exactness(report):
    errs = {}
    for name, ext in (("inv_sqrt", "odd"), ("odd_sqrt", "even")):
        for n in (4, 8, 16, 64):
            errs[f"{name}/{n}"] = max_err(name, n, 1.0, ext)
    worst = max(errs, key=errs.get)
    ok = all(e <= 1e-13 for e in errs.values())
    assert report(3, "inv_sqrt (odd) and odd_sqrt (even), L=1, N in {4,8,16,64}", ok,
                  f"worst {errs[worst]:.2e} at {worst}, tol 1e-13")


def test_criterion_4_arctan_smooth(report):
    err = max_err("arctan", 128, 1.0, "smooth")
    ok = err <= 1e-12
    assert report(4, "arctan, smooth extension, L=1, N=128", ok, f"error {err:.2e}, tol 1e-12")


def test_criterion_5_erf(report):
    errs = {L: max_err("erf", 64, float(L), "even") for L in range(2, 11)}
    best = min(errs, key=errs.get)
    ok = errs[best] <= 1e-13
    assert report(5, "erf, even extension, N=64, best L in 2..10", ok,
                  f"error {errs[best]:.2e} at L={best}, tol 1e-13")


def test_criterion_6_kernel_identities(report):
    s = np.linspace(0.05, np.pi - 0.05, 20)
    ks = [k for k in range(-31, 32) if k % 2]
    t0 = time.perf_counter()
    worst = 0.0
    for L in (0.5, 1.0, 2.0):
        for k in ks:
            odd = half_lap_mode_odd(k, s, L)
            hyp = half_lap_mode_odd_2f1(k, s, L)
            trig = (half_lap_mode_cos(abs(k), s) + np.sign(k) * 1j * half_lap_mode_sin(abs(k), s)) / L
            worst = max(worst, np.max(np.abs(odd - hyp)), np.max(np.abs(odd - trig)),
                        np.max(np.abs(hyp - trig)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 5.0
    assert report(6, "odd, 2F1 and cos+i sin forms, |k| <= 31, 20 nodes, L in {0.5,1,2}", ok,
                  f"max difference {worst:.2e} <= 1e-12, {elapsed:.2f} s < 5 s")


def test_criterion_7_oracles(report):
    rng = np.random.default_rng(2024)
    conv = 0.0
    for p in (3, 8, 17, 64, 257):
        b = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        c = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        d = direct_convolve(b, c)
        conv = max(conv, float(np.max(np.abs(circular_convolve(b, c) - d)) / np.max(np.abs(d))))

    grid = make_grid(64, 1.3)
    comb = 0.0
    for m in (0, 1, 5, 31):
        a = rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1)
        for sign in (1, -1):
            fast = odd_mode_combination(a, grid, sign)
            slow = sum(a[l] * half_lap_mode_odd(sign * (2 * l + 1), grid.s, 1.3) for l in range(m + 1))
            # relative to max(1, |sum|), as for the convolution; the sums reach ~150
            comb = max(comb, float(np.max(np.abs(fast - slow)) / max(1.0, np.max(np.abs(slow)))))

    s = np.array([0.1, 0.7, np.pi / 2, 2.4, 3.0])
    series = 0.0
    for k in (1, -1, 3, -5, 15, -31):
        for L in (0.5, 1.0, 2.0):
            series = max(series, float(np.max(np.abs(
                oracle_mode_series(k, s, L, 10**6) - half_lap_mode_odd(k, s, L)))))

    ok = conv <= 1e-13 and comb <= 1e-12 and series <= 1e-9
    assert report(7, "FFT vs direct convolution, odd combination vs kernel sum, 10^6-term series", ok,
                  f"{conv:.2e} <= 1e-13 relative, {comb:.2e} <= 1e-12 relative, {series:.2e} <= 1e-9")


@pytest.mark.slow
def test_criterion_8_scale(report):
    errs = {n: max_err("quartic", n, 1.1, "even") for n in (10006, 10007, 10008, 16383, 16384, 16385)}
    within = all(0.5 <= errs[n] / errs[m] <= 2.0
                 for n in (10007, 16384) for m in (n - 1, n + 1))

    rows = bench_rows(get_reference("quartic"), [2**16, 2**18, 2**20, 2**22], 1.1, Extension.EVEN,
                      repeats=5, eps=DEFAULT_KRASNY_EPS)
    ratios = [row[-1] for row in rows[1:]]
    ok = within and max(ratios) <= 5.0
    assert report(8, "prime and power-of-two N, runtime scaling 2^16..2^22", ok,
                  f"errors N=10007 {errs[10007]:.2e} (neighbours {errs[10006]:.2e}, {errs[10008]:.2e}), "
                  f"N=16384 {errs[16384]:.2e} (neighbours {errs[16383]:.2e}, {errs[16385]:.2e}); "
                  f"runtime ratios {', '.join(f'{r:.2f}' for r in ratios)} <= 5")

