"""Oracle suites behind ``halflap verify``.

Each suite compares a fast path against an independent slow one and yields
:class:`Check` records.  ``level="fast"`` keeps the whole run to a few
seconds; ``level="full"`` uses the ``10^6``-term mode series.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from halflap.fastconv import circular_convolve, direct_convolve, odd_mode_combination
from halflap.kernel import (
    gauss_2f1_odd_finite,
    gauss_2f1_series,
    half_lap_mode_cos,
    half_lap_mode_even,
    half_lap_mode_odd,
    half_lap_mode_odd_2f1,
    half_lap_mode_sin,
)
from halflap.reference import REFERENCES, oracle_mode_series, oracle_quadrature
from halflap.spectral import make_grid

__all__ = ["Check", "LEVELS", "SUITES", "run_suites"]

LEVELS = ("fast", "full")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.error) and self.error <= self.tol)


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b))))


def suite_convolution(level, rng):
    for p in (3, 8, 17, 64, 257):
        b = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        c = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        d = direct_convolve(b, c)
        err = float(np.max(np.abs(circular_convolve(b, c) - d)) / np.max(np.abs(d)))
        yield Check("convolution", f"fft vs direct, P={p}", err, 1e-13)
    grid = make_grid(64, 1.3)
    for m in (0, 1, 5, 31):
        a = rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1)
        for sign in (1, -1):
            fast = odd_mode_combination(a, grid, sign)
            slow = sum(a[l] * half_lap_mode_odd(sign * (2 * l + 1), grid.s, 1.3) for l in range(m + 1))
            yield Check("convolution", f"odd combination, M={m}, sign={sign:+d}", _rel(fast, slow), 1e-12)


def suite_mode_series(level, rng):
    n_max, tol = (10**6, 1e-9) if level == "full" else (2 * 10**4, 1e-7)
    s = np.array([0.3, np.pi / 2, 2.5])
    for k in (1, -1, 3, -5, 15, -31):
        for L in (0.5, 2.0):
            err = _rel(oracle_mode_series(k, s, L, n_max), half_lap_mode_odd(k, s, L))
            yield Check("mode_series", f"k={k}, L={L}, n_max={n_max}", err, tol)


def suite_quadrature(level, rng):
    m = 10**5
    s = 1.0
    got = oracle_quadrature(lambda e: 2j * np.exp(2j * e), s, 1.0, m)
    yield Check("quadrature", "exp(2is) at s=1", abs(got - half_lap_mode_even(2, s)), 1e-3)
    got = oracle_quadrature(np.cos, np.pi / 2, 1.0, m)
    yield Check("quadrature", "sin(s) at s=pi/2", abs(got - 2 / np.pi), 1e-3)
    got = oracle_quadrature(lambda e: np.zeros_like(e), 0.4, 1.0, m)
    yield Check("quadrature", "constant", abs(got), 1e-3)
    for k, s, L in ((3, 0.7, 1.0), (-5, 2.2, 2.0)):
        got = oracle_quadrature(lambda e: 1j * k * np.exp(1j * k * e), s, L, m)
        yield Check("quadrature", f"exp({k}is) at s={s}, L={L}", abs(got - half_lap_mode_odd(k, s, L)), 1e-3)


def suite_hypergeometric(level, rng):
    s = np.linspace(0.05, np.pi - 0.05, 20)
    ks = [k for k in range(-31, 32, 2)]
    for L in (0.5, 1.0, 2.0):
        err = max(_rel(half_lap_mode_odd_2f1(k, s, L), half_lap_mode_odd(k, s, L)) for k in ks)
        yield Check("2f1", f"finite sum vs 2F1 form, L={L}", err, 1e-12)
    err = 0.0
    for k in range(1, 32, 2):
        plus = half_lap_mode_cos(k, s) + 1j * half_lap_mode_sin(k, s)
        minus = half_lap_mode_cos(k, s) - 1j * half_lap_mode_sin(k, s)
        err = max(err, _rel(plus, half_lap_mode_odd(k, s)), _rel(minus, half_lap_mode_odd(-k, s)))
    yield Check("2f1", "cos + i sin vs exp form", err, 1e-12)
    for k in ((1, -3) if level == "fast" else (1, -1, 3, -3, 7)):
        for si in (0.6, 2.0):
            z = np.exp(2j * si)
            series = gauss_2f1_series(1.0, -k / 2 - 1, -k / 2 + 2, z)
            yield Check("2f1", f"series vs finite, k={k}, s={si}",
                        abs(series - gauss_2f1_odd_finite(k, si)), 1e-12)


def suite_drivers(level, rng):
    from halflap.driver import apply_to_function

    cases = [("quartic", 256, 1.1, "even", 1e-12), ("quartic", 256, 1.1, "none", 1e-12),
             ("inv_sqrt", 16, 1.0, "odd", 1e-13), ("odd_sqrt", 16, 1.0, "even", 1e-13),
             ("erf", 64, 5.0, "even", 1e-13), ("arctan", 256, 1.0, "smooth", 1e-12)]
    for name, n, L, ext, tol in cases:
        ref = REFERENCES[name]
        x, res = apply_to_function(ref.f, n, L, ext)
        err = float(np.max(np.abs(res.values - ref.exact(x))))
        yield Check("drivers", f"{name}, N={n}, L={L}, {ext}", err, tol)


SUITES = {
    "convolution": suite_convolution,
    "mode_series": suite_mode_series,
    "quadrature": suite_quadrature,
    "2f1": suite_hypergeometric,
    "drivers": suite_drivers,
}


def run_suites(level: str = "fast", seed: int = 0, suites=None) -> list[Check]:
    """Run the named suites (all by default) and collect their checks."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    rng = np.random.default_rng(seed)
    names = list(SUITES) if suites is None else list(suites)
    out = []
    for name in names:
        out.extend(SUITES[name](level, rng))
    return out
