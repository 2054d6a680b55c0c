"""Fast evaluation of linear combinations of odd-mode kernels.

``sum_{l=0}^{M} a_l H[exp(i(2l+1)s)]`` splits into a constant, a pointwise
term carrying :func:`~halflap.kernel.boundary_factor`, and a cyclic
convolution of two length-``P`` sequences (``P >= 2M + 1``) that the FFT
evaluates in ``O(P log P)``.  Sequences are plain complex NumPy arrays whose
length is the period.
"""
from __future__ import annotations

import numpy as np
import scipy.fft

from halflap._backend import kernels
from halflap.kernel import boundary_factor
from halflap.spectral import GridSpec

__all__ = [
    "build_b_sequence",
    "build_c_sequence",
    "circular_convolve",
    "direct_convolve",
    "node_sum",
    "odd_mode_combination",
]


def _check_period(m, p):
    if m < 0:
        raise ValueError(f"M must be nonnegative, got {m}")
    if p < 2 * m + 1:
        raise ValueError(f"period P={p} is too small for M={m}; need P >= 2M+1")


def build_b_sequence(a, m: int, p: int) -> np.ndarray:
    """``b_l = (8l + 4) a_l`` for ``l <= M``, zero-padded to length `p`."""
    a = np.asarray(a, dtype=complex)
    _check_period(m, p)
    if a.shape != (m + 1,):
        raise ValueError(f"expected {m + 1} coefficients, got shape {a.shape}")
    b = np.zeros(p, dtype=complex)
    b[: m + 1] = (8 * np.arange(m + 1) + 4) * a
    return b


def build_c_sequence(m: int, p: int) -> np.ndarray:
    """Periodic embedding of ``1 / ((2l - 3)(2l - 1)(2l + 1))`` for ``l <= 0``.

    ``c_0 = 1/3``, zeros for ``1 <= l <= P - M - 1`` and
    ``c_l = 1 / ((2(l-P) - 3)(2(l-P) - 1)(2(l-P) + 1))`` for the last `m` slots.
    """
    _check_period(m, p)
    c = np.zeros(p, dtype=complex)
    c[0] = 1.0 / 3.0
    if m:
        q = 2.0 * (np.arange(p - m, p) - p)
        c[p - m:] = 1.0 / ((q - 3) * (q - 1) * (q + 1))
    return c


def _pair(b, c):
    b = np.asarray(b, dtype=complex)
    c = np.asarray(c, dtype=complex)
    if b.ndim != 1 or b.shape != c.shape:
        raise ValueError(f"period mismatch: {b.shape} vs {c.shape}")
    return b, c


def circular_convolve(b, c) -> np.ndarray:
    """``(b * c)_l = sum_n b_n c_{(l - n) mod P}`` via the convolution theorem."""
    b, c = _pair(b, c)
    return scipy.fft.ifft(scipy.fft.fft(b) * scipy.fft.fft(c))


def direct_convolve(b, c) -> np.ndarray:
    """Literal O(P^2) cyclic convolution; reference for :func:`circular_convolve`."""
    b, c = _pair(b, c)
    return np.asarray(kernels.direct_convolve(b, c))


def node_sum(coefs, n: int, sign: int = 1) -> np.ndarray:
    """``sum_l coefs[l] exp(+-2ils_j)`` at the ``N`` half-period nodes.

    Uses ``exp(2ils_j) = exp(i pi l / N) exp(2 pi i j l / N)``; indices are
    folded modulo ``N`` so any number of coefficients is accepted.
    """
    coefs = np.asarray(coefs, dtype=complex)
    l = np.arange(coefs.size)
    spec = np.zeros(n, dtype=complex)
    np.add.at(spec, (sign * l) % n, coefs * np.exp(sign * 1j * np.pi * l / n))
    return scipy.fft.ifft(spec) * n


def odd_mode_combination(a, grid: GridSpec, sign: int = 1, p: int | None = None) -> np.ndarray:
    """``sum_l a_l H[exp(+-i(2l+1)s)]`` at the half-period nodes of `grid`.

    Parameters
    ----------
    a : (M + 1,) array_like
        Complex coefficients ``a_0 .. a_M``.
    grid : GridSpec
        Half-period grid; supplies the nodes and the map scale ``L``.
    sign : {1, -1}
        ``1`` for the modes ``2l + 1``, ``-1`` for ``-(2l + 1)``.
    p : int, optional
        Convolution period, any value ``>= 2M + 1``; default ``2M + 1``.
    """
    if grid.full_period:
        raise ValueError("odd_mode_combination expects a half-period grid")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    if a.ndim != 1:
        raise ValueError("a must be one-dimensional")
    m = a.size - 1
    p = 2 * m + 1 if p is None else int(p)
    n, L = grid.n, grid.map_scale
    s = grid.s
    l = np.arange(m + 1)
    scale = 2j / (L * np.pi)

    const = -sign * scale * np.sum(a / (2 * l + 3))
    weighted = node_sum((2 * l + 1) * a, n, sign) * np.exp(sign * 1j * s)
    pointwise = -sign * scale * boundary_factor(s) * weighted
    conv = circular_convolve(build_b_sequence(a, m, p), build_c_sequence(m, p))[: m + 1]
    convolution = sign * scale * node_sum(conv, n, sign)
    return const + pointwise + convolution
