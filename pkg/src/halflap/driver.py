"""Half Laplacian of nodal data on the mapped grid.

:func:`half_laplacian_periodic` handles ``u(s)`` of period ``pi`` (only even
modes, the operator is diagonal).  :func:`half_laplacian_full` handles data
on ``(0, 2 pi)``: the even modes are diagonal and the odd modes go through
the fast convolution.  The result has period ``pi``, so only the first ``N``
nodes are returned in both cases.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.fft

from halflap.extensions import BoundaryData, Extension, extend
from halflap.fastconv import build_b_sequence, build_c_sequence
from halflap.kernel import boundary_factor
from halflap.spectral import DEFAULT_KRASNY_EPS, GridSpec, SampleVector, make_grid

__all__ = [
    "EvaluationError",
    "HalfLapResult",
    "half_laplacian_periodic",
    "half_laplacian_full",
    "apply_to_function",
    "is_real_input",
]

REAL_TOL = 1e-14


class EvaluationError(ValueError):
    """The sampled function returned a non-finite value."""


@dataclass(frozen=True)
class HalfLapResult:
    """Half Laplacian at the ``N`` half-period nodes of `grid`."""

    values: np.ndarray
    grid: GridSpec
    is_real: bool

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def s(self) -> np.ndarray:
        return self.grid.s


def is_real_input(values) -> bool:
    """``max|Im| <= 1e-14 * max(1, max|Re|)``."""
    v = np.asarray(values)
    if not np.iscomplexobj(v):
        return True
    return bool(np.max(np.abs(v.imag)) <= REAL_TOL * max(1.0, np.max(np.abs(v.real))))


def _finish(out, grid, real):
    if real:
        return HalfLapResult(np.ascontiguousarray(out.real), grid, True)
    return HalfLapResult(out, grid, False)


def _krasny(spec, p, eps):
    # |u_hat(k)| = |spec[k]| / p
    if eps:
        spec[np.abs(spec) < eps * p] = 0


def _cis(t):
    # exp(it) for real t; cos and sin are much cheaper than a complex exp
    out = np.empty(np.shape(t), dtype=complex)
    out.real = np.cos(t)
    out.imag = np.sin(t)
    return out


def _phase(k, n):
    return _cis(np.pi * np.asarray(k) / n)


def half_laplacian_periodic(samples: SampleVector, eps: float = DEFAULT_KRASNY_EPS) -> HalfLapResult:
    """Half Laplacian of data of period ``pi`` on the ``N``-node half grid.

    Each coefficient of ``exp(2iks)`` is multiplied by ``|k|`` and the result
    by ``2 sin(s_j)^2 / L``.  The node-offset phases of the forward and
    inverse transforms cancel, so only the FFT pair is needed.
    """
    grid = samples.grid
    if grid.full_period:
        raise ValueError("half_laplacian_periodic expects a half-period grid")
    n, L = grid.n, grid.map_scale
    real = is_real_input(samples.values)
    spec = scipy.fft.fft(samples.values)
    _krasny(spec, n, eps)
    k = np.abs(scipy.fft.fftfreq(n, 1.0 / n))
    # fftfreq puts -n/2 for even n, matching the range [-floor(n/2), ceil(n/2) - 1]
    spec *= k
    out = scipy.fft.ifft(spec, overwrite_x=True)
    out *= 2 * np.sin(grid.s) ** 2 / L
    return _finish(out, grid, real)


def half_laplacian_full(samples: SampleVector, eps: float = DEFAULT_KRASNY_EPS,
                        workers: int | None = None) -> HalfLapResult:
    """Half Laplacian of data on the ``2N``-node full-period grid.

    With ``u_hat(k)``, ``k = -N .. N-1`` (``u_hat(-N) = 0``), the result at
    the first ``N`` nodes is the sum of

    * the even modes ``u_hat(2k)``: ``(2/L) sin(s)^2 sum |k| u_hat(2k) exp(2iks)``;
    * a constant ``-(2i / (L pi)) sum sgn(2k+1) u_hat(2k+1) / (|2k+1| + 2)``;
    * ``-(2i / (L pi)) (cos s + sin(s)^2 ln cot(s/2))
      sum (2k+1) u_hat(2k+1) exp(i(2k+1)s)``;
    * ``(2i / (L pi))`` times the positive and negative odd-mode convolution
      sums, merged into a single inverse transform.
    """
    grid = samples.grid
    if not grid.full_period:
        raise ValueError("half_laplacian_full expects a full-period grid")
    n, L = grid.n, grid.map_scale
    real = is_real_input(samples.values)
    n_lo, n_hi = n // 2, (n + 1) // 2  # floor(N/2), ceil(N/2)
    scale = 2j / (L * np.pi)
    s = grid.half().s
    sin_s, cos_s = np.sin(s), np.cos(s)

    spec = scipy.fft.fft(samples.values, workers=workers)
    _krasny(spec, 2 * n, eps)
    spec[n] = 0  # u_hat(-N)

    # with u_hat(k) = spec[k] exp(-i pi k / 2N) / 2N the node-offset phase of
    # the inverse transform cancels for even modes and leaves a constant for
    # odd ones.  spec[::2] and spec[1::2] are already in FFT order.

    # even modes 2k, k in [-floor(N/2), ceil(N/2) - 1]
    k = np.concatenate([np.arange(n_hi), np.arange(-n_lo, 0)])
    even = scipy.fft.ifft(0.5 * np.abs(k) * spec[::2], overwrite_x=True, workers=workers)
    even *= (2 / L) * sin_s * sin_s

    # odd modes 2k+1, k in [-ceil(N/2), floor(N/2) - 1]
    k = np.concatenate([np.arange(n_lo), np.arange(-n_hi, 0)])
    raw = spec[1::2]
    buf = (0.5 * np.exp(-0.5j * np.pi / n)) * (2 * k + 1) * raw
    del k
    pointwise = scipy.fft.ifft(buf, overwrite_x=True, workers=workers)
    factor = np.empty(n, dtype=complex)
    factor.real = cos_s
    factor.imag = sin_s
    factor *= -scale * boundary_factor(s, sin_s, cos_s)
    pointwise *= factor
    del factor
    del buf

    # u_hat(+-(2l+1)), l = 0, 1, ...; ph[l] = exp(i pi l / N) serves twice
    l = np.arange(n_hi)
    ph = _phase(l, n)
    w = np.conj(ph) * (np.exp(-0.5j * np.pi / n) / (2 * n))
    a_pos = raw[:n_lo] * w[:n_lo]
    a_neg = raw[n_lo:][::-1] * np.conj(w)
    del raw, spec, w
    constant = -scale * (np.sum(a_pos / (2 * l[:n_lo] + 3)) - np.sum(a_neg / (2 * l + 3)))
    del l

    # convolution pieces, period P = N
    c_hat = {}
    conv_pos = _odd_convolution(a_pos, n, workers, c_hat)
    if real and n_lo == n_hi:
        # real data: u_hat(-q) = conj(u_hat(q)), so the negative side is a mirror
        conv_neg = np.conj(conv_pos)
    else:
        conv_neg = _odd_convolution(a_neg, n, workers, c_hat)
    del c_hat

    buf = np.zeros(n, dtype=complex)
    buf[0] = n * (conv_pos[0] - conv_neg[0])
    buf[1:n_lo] = n * ph[1:n_lo] * conv_pos[1:n_lo]
    buf[n - 1:n - n_hi:-1] = -n * np.conj(ph[1:]) * conv_neg[1:n_hi]
    del ph
    # slot floor(N/2) stays zero
    conv = scipy.fft.ifft(buf, overwrite_x=True, workers=workers)
    conv *= scale

    out = even
    out += constant
    out += pointwise
    out += conv
    return _finish(out, grid.half(), real)


def _odd_convolution(a, p, workers, c_hat=None):
    # c_hat caches the transform of the data-free c sequence, keyed by M
    m = a.size - 1
    if m < 0:
        return np.zeros(1, dtype=complex)
    if c_hat is None:
        c_hat = {}
    if m not in c_hat:
        # c is real: half-length transform, the rest by conjugate symmetry
        half = scipy.fft.rfft(build_c_sequence(m, p).real, workers=workers)
        full = np.empty(p, dtype=complex)
        full[: half.size] = half
        full[half.size:] = np.conj(half[1 : p - half.size + 1][::-1])
        c_hat[m] = full
    fb = scipy.fft.fft(build_b_sequence(a, m, p), overwrite_x=True, workers=workers)
    fb *= c_hat[m]
    return scipy.fft.ifft(fb, overwrite_x=True, workers=workers)[: m + 1]


def sample_function(f: Callable, grid: GridSpec) -> np.ndarray:
    """``f(x_j)`` at the first ``N`` nodes; raise on non-finite values."""
    x = grid.x[: grid.n]
    with np.errstate(all="ignore"):
        try:
            vals = np.asarray(f(x))
            if vals.shape != x.shape:
                raise TypeError
        except TypeError:
            vals = np.array([f(xi) for xi in x])
    bad = np.nonzero(~np.isfinite(vals))[0]
    if bad.size:
        j = int(bad[0])
        raise EvaluationError(f"f(x) is not finite at node j={j} (x={x[j]!r}, s={grid.s[j]!r})")
    return vals


def apply_to_function(f: Callable, n: int, L: float, ext="even",
                      boundary: BoundaryData | None = None,
                      eps: float = DEFAULT_KRASNY_EPS) -> tuple[np.ndarray, HalfLapResult]:
    """Sample `f` at ``x_j = L cot(s_j)``, extend, and apply the right driver.

    ``ext="none"`` assumes period ``pi`` and uses the periodic driver; every
    other :class:`~halflap.extensions.Extension` builds full-period data.
    ``"smooth"`` is the closed-form extension for ``arctan``.

    Returns
    -------
    x : (N,) ndarray
        Nodes ``x_j``, decreasing.
    result : HalfLapResult
    """
    ext = Extension.parse(ext)
    grid = make_grid(n, L, full_period=False)
    samples = SampleVector(sample_function(f, grid), grid)
    if ext is Extension.NONE:
        return grid.x, half_laplacian_periodic(samples, eps)
    full = extend(samples, ext, boundary)
    return grid.x, half_laplacian_full(full, eps)

