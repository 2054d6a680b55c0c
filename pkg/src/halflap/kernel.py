"""Closed forms for the half Laplacian of single Fourier modes.

For ``u(s) = exp(iks)`` with ``x = L cot(s)``:

* even ``k``: the operator is diagonal, ``|k| sin(s)^2 exp(iks) / L``;
* odd ``k``: a finite sum of ``(|k| + 1) / 2`` terms plus the factor
  ``cos(s) + sin(s)^2 ln(cot(s/2))`` (see :func:`half_lap_mode_odd`), or
  equivalently a Gauss hypergeometric function evaluated on the unit circle
  (:func:`half_lap_mode_odd_2f1`).

All functions accept scalar or array `s` and return the matching shape.
"""
from __future__ import annotations

import numpy as np

from halflap._backend import kernels

__all__ = [
    "ConvergenceError",
    "pochhammer",
    "gauss_2f1_series",
    "gauss_2f1_odd_finite",
    "atanh_unit_circle",
    "log_cot_half",
    "boundary_factor",
    "half_lap_mode",
    "half_lap_mode_even",
    "half_lap_mode_odd",
    "half_lap_mode_odd_2f1",
    "half_lap_mode_cos",
    "half_lap_mode_sin",
]


class ConvergenceError(RuntimeError):
    """A series did not meet its tolerance within the term budget."""

    def __init__(self, msg, partial_sum):
        super().__init__(msg)
        self.partial_sum = partial_sum


def _as_int(k, what="k"):
    if isinstance(k, (bool, np.bool_)) or int(k) != k:
        raise ValueError(f"{what} must be an integer, got {k!r}")
    return int(k)


def _odd(k):
    k = _as_int(k)
    if k % 2 == 0:
        raise ValueError(f"k must be odd, got {k}")
    return k


def _even(k):
    k = _as_int(k)
    if k % 2:
        raise ValueError(f"k must be even, got {k}")
    return k


def _interior(s):
    arr = np.asarray(s, dtype=float)
    if not np.all((arr > 0) & (arr < np.pi)):
        raise ValueError("s must lie strictly inside (0, pi)")
    return arr


def _positive(L):
    if not L > 0:
        raise ValueError(f"L must be positive, got {L!r}")
    return float(L)


def _shaped(values, s):
    return values.reshape(np.shape(s)) if np.ndim(s) else values[0]


def pochhammer(z: complex, n: int) -> complex:
    """Rising factorial ``(z)_n = z (z + 1) ... (z + n - 1)``, ``(z)_0 = 1``."""
    n = _as_int(n, "n")
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    for i in range(n):
        out *= z + i
    return out


def gauss_2f1_series(a, b, c, z, tol=1e-16, max_terms=10_000_000, chunk=65536):
    """Partial sums of the hypergeometric series ``2F1(a, b; c; z)``.

    Summation stops at the first term with
    ``|term| < tol * (1 + |partial sum|)``.  On ``|z| = 1`` the series converges
    only for ``z != 1`` and ``Re(c - a - b) > 0``; convergence there is
    algebraic, so this is meant as a cross-check rather than a production
    evaluator.

    Raises
    ------
    ConvergenceError
        If `max_terms` terms are summed without meeting the tolerance; the
        partial sum is attached as ``exc.partial_sum``.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if c.imag == 0 and c.real <= 0 and c.real == int(c.real):
        raise ValueError("c must not be a non-positive integer")
    az = abs(z)
    if az > 1 + 1e-14:
        raise ValueError("|z| must not exceed 1")
    if az > 1 - 1e-14 and (abs(z - 1) < 1e-14 or (c - a - b).real <= 0):
        raise ValueError("series diverges on |z| = 1 unless z != 1 and Re(c - a - b) > 0")

    total = 0j
    term = 1 + 0j
    start = 0
    while start < max_terms:
        n = np.arange(start, min(start + chunk, max_terms), dtype=float)
        ratios = (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        # terms[i] is term number start + i
        terms = term * np.concatenate(([1.0], np.cumprod(ratios[:-1])))
        partial = total + np.cumsum(terms)
        done = np.nonzero(np.abs(terms) < tol * (1 + np.abs(partial)))[0]
        if done.size:
            return complex(partial[done[0]])
        total = partial[-1]
        term = terms[-1] * ratios[-1]
        if term == 0:
            return complex(total)
        start += n.size
    raise ConvergenceError(f"2F1 series not converged after {max_terms} terms", complex(total))


def log_cot_half(s):
    """``ln(cot(s/2))`` via ``asinh(cot(s))``, stable near ``s = 0`` and ``pi``."""
    arr = np.asarray(s, dtype=float)
    out = np.arcsinh(np.cos(arr) / np.sin(arr))
    return out if np.ndim(s) else float(out)


def boundary_factor(s, sin_s=None, cos_s=None):
    """``cos(s) + sin(s)^2 ln(cot(s/2))``, the factor shared by all odd modes.

    `sin_s` and `cos_s` may be passed in when the caller already has them.
    """
    arr = np.asarray(s, dtype=float)
    sin_s = np.sin(arr) if sin_s is None else sin_s
    cos_s = np.cos(arr) if cos_s is None else cos_s
    out = cos_s + sin_s * sin_s * np.arcsinh(cos_s / sin_s)
    return out if np.ndim(s) else float(out)


def atanh_unit_circle(s, sign=1):
    """``atanh(exp(+-is)) = ln(cot(s/2)) / 2 +- i pi / 4`` for ``s`` in ``(0, pi)``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    arr = _interior(s)
    out = 0.5 * np.arcsinh(np.cos(arr) / np.sin(arr)) + sign * 0.25j * np.pi
    return out if np.ndim(s) else complex(out)


def _odd_finite_sum(k, s):
    # sum_{n=0}^{(|k|-1)/2} exp(-i sgn(k) (2n+1) s) / ((2n-1)(2n+1)(2n+3))
    sg = 1 if k > 0 else -1
    m = 2.0 * np.arange((abs(k) - 1) // 2 + 1) + 1.0
    w = 1.0 / ((m - 2) * m * (m + 2))
    return np.sum(w[:, None] * np.exp(-1j * sg * np.outer(m, s)), axis=0)


def gauss_2f1_odd_finite(k: int, s):
    """``2F1(1, -k/2 - 1; -k/2 + 2; exp(2is))`` for odd `k` as a finite sum."""
    k = _odd(k)
    arr = np.atleast_1d(_interior(s))
    sin_s = np.sin(arr)
    bracket = (_odd_finite_sum(k, arr) + 0.25 * np.cos(arr)
               + 0.125j * np.pi * sin_s**2
               + 0.25 * sin_s**2 * np.arcsinh(np.cos(arr) / sin_s))
    out = float(k <= -1) - k * (4 - k * k) * np.exp(1j * k * arr) * bracket
    return _shaped(out, s)


def half_lap_mode_even(k: int, s, L: float = 1.0):
    """``|k| sin(s)^2 exp(iks) / L`` for even `k`."""
    k = _even(k)
    L = _positive(L)
    arr = np.asarray(s, dtype=float)
    out = abs(k) * np.sin(arr) ** 2 * np.exp(1j * k * arr) / L
    return out if np.ndim(s) else complex(out)


def half_lap_mode_odd(k: int, s, L: float = 1.0):
    """Half Laplacian of ``exp(iks)`` for odd `k`, finite-sum form.

    ``-2i sgn(k) / (L pi (|k| + 2)) - (2ik / (L pi)) exp(iks) [cos s
    + sin(s)^2 ln(cot(s/2)) + sum_{n=0}^{(|k|-1)/2} 4 exp(-i sgn(k)(2n+1)s)
    / ((2n-1)(2n+1)(2n+3))]``.
    """
    k = _odd(k)
    L = _positive(L)
    arr = np.atleast_1d(_interior(s)).ravel()
    return _shaped(kernels.odd_mode(k, arr, L), s)


def half_lap_mode_odd_2f1(k: int, s, L: float = 1.0):
    """Half Laplacian of ``exp(iks)`` for odd `k` through the ``2F1`` form."""
    k = _odd(k)
    L = _positive(L)
    arr = np.atleast_1d(_interior(s))
    f = np.atleast_1d(gauss_2f1_odd_finite(k, arr))
    out = (-2j / (L * np.pi * (k + 2)) - (k / L) * np.sin(arr) ** 2 * np.exp(1j * k * arr)
           + 8j * f / (L * np.pi * (4 - k * k)))
    return _shaped(out, s)


def half_lap_mode(k: int, s, L: float = 1.0):
    """Dispatch to the even or odd closed form."""
    k = _as_int(k)
    return half_lap_mode_odd(k, s, L) if k % 2 else half_lap_mode_even(k, s, L)


def _positive_odd(k):
    k = _odd(k)
    if k < 1:
        raise ValueError(f"k must be a positive odd integer, got {k}")
    return k


def half_lap_mode_cos(k: int, s):
    """Half Laplacian of ``cos(ks)``, ``k`` positive odd, ``L = 1``."""
    k = _positive_odd(k)
    arr = np.atleast_1d(_interior(s))
    m = 2 * np.arange((k - 1) // 2 + 1)
    w = 1.0 / ((m - 1.0) * (m + 1.0) * (m + 3.0))
    tail = np.sum(w[:, None] * np.sin(np.outer(k - 1 - m, arr)), axis=0)
    out = (2 * k / np.pi) * np.sin(k * arr) * boundary_factor(arr) + (8 * k / np.pi) * tail
    return _shaped(out, s)


def half_lap_mode_sin(k: int, s):
    """Half Laplacian of ``sin(ks)``, ``k`` positive odd, ``L = 1``."""
    k = _positive_odd(k)
    arr = np.atleast_1d(_interior(s))
    m = 2 * np.arange((k - 1) // 2 + 1)
    w = 1.0 / ((m - 1.0) * (m + 1.0) * (m + 3.0))
    tail = np.sum(w[:, None] * np.cos(np.outer(k - 1 - m, arr)), axis=0)
    out = (-2 / (np.pi * (k + 2)) - (2 * k / np.pi) * np.cos(k * arr) * boundary_factor(arr)
           - (8 * k / np.pi) * tail)
    return _shaped(out, s)
