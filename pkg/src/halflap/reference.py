"""Exact half Laplacians of the test functions, and brute-force oracles.

The oracles avoid the closed forms they are used to check:

* :func:`oracle_mode_series` truncates the bilateral series for an odd mode;
* :func:`oracle_quadrature` evaluates the principal-value integral in ``s``
  with midpoint panels placed symmetrically around the singularity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.special

from halflap._backend import kernels
from halflap.extensions import Extension

__all__ = [
    "ReferencePair",
    "REFERENCES",
    "get_reference",
    "argsinh",
    "dawson",
    "ref_quartic",
    "ref_inv_sqrt",
    "ref_arctan",
    "ref_odd_sqrt",
    "ref_erf",
    "oracle_mode_series",
    "oracle_quadrature",
]


def argsinh(x):
    """``ln(x + sqrt(x^2 + 1))``, reflected for negative `x`.

    Written as ``log1p(|x| + x^2 / (1 + sqrt(1 + x^2)))`` so tiny arguments
    keep full relative accuracy; ``ln(2|x|)`` once ``x^2`` would overflow.
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    big = ax > 1e150
    a = np.where(big, 1.0, ax)
    small = np.log1p(a + a * a / (1.0 + np.sqrt(1.0 + a * a)))
    out = np.where(big, np.log(2.0) + np.log(np.where(big, ax, 1.0)), small)
    return np.sign(x) * out


def dawson(x):
    """Dawson's integral ``exp(-x^2) int_0^x exp(t^2) dt``."""
    return scipy.special.dawsn(x)


def _inv_hypot(x):
    # 1 / sqrt(1 + x^2) without overflow
    return 1.0 / np.hypot(1.0, x)


def ref_quartic(x):
    """Half Laplacian of ``1 / (1 + x^4)``.

    ``(1 - x^2)(x^4 + 4x^2 + 1) / (sqrt(2) (1 + x^4)^2)``; for ``|x| > 1`` the
    same expression in ``y = 1/x^2`` avoids overflow.
    """
    x = np.asarray(x, dtype=float)
    inner = np.abs(x) <= 1
    x2 = np.where(inner, x, 0.0) ** 2
    near = (1 - x2) * (x2 * x2 + 4 * x2 + 1) / (1 + x2 * x2) ** 2
    y = (1.0 / np.where(inner, 1.0, x)) ** 2
    far = y * (y - 1) * (1 + 4 * y + y * y) / (1 + y * y) ** 2
    return np.where(inner, near, far) / np.sqrt(2.0)


def ref_inv_sqrt(x):
    """Half Laplacian of ``(1 + x^2)^(-1/2)``.

    ``(2 r - 2x argsinh(x)) / (pi r^3)`` with ``r = sqrt(1 + x^2)``.
    """
    x = np.asarray(x, dtype=float)
    t = _inv_hypot(x)
    return 2 / np.pi * t * t * (1 - (x * t) * argsinh(x))


def ref_arctan(x):
    """Half Laplacian of ``arctan(x)``: ``x / (1 + x^2)``.

    ``arctan`` is odd, so its half Laplacian is odd as well; it is the
    Hilbert transform of ``arctan' = 1 / (1 + x^2)``.
    """
    x = np.asarray(x, dtype=float)
    inner = np.abs(x) <= 1
    xi = np.where(inner, x, 0.0)
    xo = np.where(inner, 1.0, x)
    return np.where(inner, xi / (1.0 + xi * xi), 1.0 / (xo + 1.0 / xo))


def ref_odd_sqrt(x):
    """Half Laplacian of ``x (1 + x^2)^(-1/2)``.

    ``(2x r + 2 argsinh(x)) / (pi r^3)`` with ``r = sqrt(1 + x^2)``.
    """
    x = np.asarray(x, dtype=float)
    t = _inv_hypot(x)
    return 2 / np.pi * t * (x * t + argsinh(x) * t * t)


def ref_erf(x):
    """Half Laplacian of ``erf(x)``: ``(4 / pi) D(x)``."""
    return 4.0 / np.pi * dawson(x)


def _quartic(x):
    x2 = np.square(np.asarray(x, dtype=float))
    return 1.0 / (1.0 + x2 * x2)


@dataclass(frozen=True)
class ReferencePair:
    name: str
    f: Callable
    exact: Callable
    recommended_extension: Extension


REFERENCES = {
    p.name: p
    for p in (
        ReferencePair("quartic", _quartic, ref_quartic, Extension.EVEN),
        ReferencePair("inv_sqrt", lambda x: 1.0 / np.sqrt(1.0 + np.asarray(x, dtype=float) ** 2),
                      ref_inv_sqrt, Extension.ODD),
        ReferencePair("arctan", np.arctan, ref_arctan, Extension.SMOOTH),
        ReferencePair("odd_sqrt",
                      lambda x: np.asarray(x, dtype=float) / np.sqrt(1.0 + np.asarray(x, dtype=float) ** 2),
                      ref_odd_sqrt, Extension.EVEN),
        ReferencePair("erf", scipy.special.erf, ref_erf, Extension.EVEN),
    )
}


def get_reference(name: str) -> ReferencePair:
    try:
        return REFERENCES[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {sorted(REFERENCES)}") from None


def oracle_mode_series(k: int, s, L: float = 1.0, n_max: int = 1_000_000):
    """Half Laplacian of ``exp(iks)``, odd `k`, from the bilateral series.

    ``(ik / (L pi)) (2 / (4 - k^2) - sum_{0 < |n| <= n_max} 4 sgn(n) exp(2ins)
    / ((2n - k)(4 - (2n - k)^2)))``.  The omitted tail is ``O(n_max^-2)``.
    """
    if int(k) != k or k % 2 == 0:
        raise ValueError(f"k must be an odd integer, got {k!r}")
    if not L > 0 or n_max < 1:
        raise ValueError("need L > 0 and n_max >= 1")
    arr = np.atleast_1d(np.asarray(s, dtype=float)).ravel()
    out = kernels.mode_series(int(k), arr, float(L), int(n_max))
    return out.reshape(np.shape(s)) if np.ndim(s) else complex(out[0])


def oracle_quadrature(u_s: Callable, s: float, L: float = 1.0, m: int = 100_000):
    """Principal value of ``(sin s / (L pi)) int_0^pi sin(eta) u_s(eta) / sin(s - eta) d eta``.

    `u_s` is the derivative of ``u`` with respect to ``s``.  On the window
    ``|eta - s| < d = min(s, pi - s)`` the integrand is folded onto
    ``eta = s +- t`` so the singular parts cancel, then both the folded part
    and the leftover interval use midpoint panels of width about ``pi / m``.
    No node ever sits on ``eta = s``.
    """
    s = float(s)
    if not 0 < s < np.pi:
        raise ValueError("s must lie strictly inside (0, pi)")
    h = np.pi / m
    d = min(s, np.pi - s)

    def integrand(eta):
        return np.sin(eta) * u_s(eta) / np.sin(s - eta)

    n_sym = max(1, int(np.ceil(d / h)))
    hs = d / n_sym
    t = (np.arange(n_sym) + 0.5) * hs
    total = np.sum(integrand(s + t) + integrand(s - t)) * hs

    lo, hi = (s + d, np.pi) if s < np.pi / 2 else (0.0, s - d)
    if hi - lo > 0:
        n_rest = max(1, int(np.ceil((hi - lo) / h)))
        hr = (hi - lo) / n_rest
        eta = lo + (np.arange(n_rest) + 0.5) * hr
        total = total + np.sum(integrand(eta)) * hr
    return np.sin(s) / (L * np.pi) * total
