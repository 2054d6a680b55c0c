"""Grids and Fourier conventions on the cotangent-mapped domain.

A function ``u(x)`` on the real line is represented through ``x = L cot(s)``
with ``s`` in ``(0, pi)``.  Two node sets are used:

* half period: ``N`` nodes ``s_j = pi (2j + 1) / (2N)``, ``j = 0..N-1``;
  ``u`` is expanded in ``exp(2iks)`` with ``k`` in
  ``[-floor(N/2), ceil(N/2) - 1]``.
* full period: ``2N`` nodes with the same formula, ``j = 0..2N-1``;
  ``u`` is expanded in ``exp(iks)`` with ``k`` in ``[-N, N - 1]``.

With ``P`` the number of nodes, every mode picks up the node-offset phase
``exp(i pi k / P)`` relative to a plain DFT; the transforms below fold it in
so that :class:`SpectralCoeffs` always hold the true coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.fft

__all__ = [
    "DEFAULT_KRASNY_EPS",
    "GridSpec",
    "SampleVector",
    "SpectralCoeffs",
    "make_grid",
    "forward_coeffs",
    "inverse_samples",
    "krasny_filter",
    "mode_range",
]

#: Default Krasny threshold (machine epsilon of double precision).
DEFAULT_KRASNY_EPS = 2.0**-52


@dataclass(frozen=True)
class GridSpec:
    """Nonterminal node set for ``N`` modes and map scale ``L``.

    Parameters
    ----------
    n : int
        Number of modes ``N`` (``N >= 2``).
    map_scale : float
        Map scale ``L > 0`` of ``x = L cot(s)``.
    full_period : bool
        ``True`` for the ``2N`` nodes on ``(0, 2 pi)``, ``False`` for the
        ``N`` nodes on ``(0, pi)``.
    """

    n: int
    map_scale: float
    full_period: bool = False

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")
        if not (np.isfinite(self.map_scale) and self.map_scale > 0):
            raise ValueError(f"map_scale must be positive, got {self.map_scale!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "map_scale", float(self.map_scale))

    @property
    def size(self) -> int:
        """Number of nodes ``P`` (``N`` or ``2N``)."""
        return 2 * self.n if self.full_period else self.n

    @cached_property
    def s(self) -> np.ndarray:
        j = np.arange(self.size)
        s = np.pi * (2 * j + 1) / (2 * self.n)
        s.flags.writeable = False
        return s

    @cached_property
    def x(self) -> np.ndarray:
        s = self.s
        x = self.map_scale * np.cos(s) / np.sin(s)
        x.flags.writeable = False
        return x

    def half(self) -> GridSpec:
        """The half-period grid sharing the first ``N`` nodes."""
        return GridSpec(self.n, self.map_scale, False)

    def full(self) -> GridSpec:
        return GridSpec(self.n, self.map_scale, True)


def make_grid(n: int, map_scale: float, full_period: bool = False) -> GridSpec:
    """Build the grid ``s_j = pi (2j + 1) / (2N)``, ``x_j = L cot(s_j)``."""
    return GridSpec(n, map_scale, full_period)


def mode_range(grid: GridSpec) -> tuple[int, int]:
    """Signed index range ``(k_min, k_max)`` of the expansion on `grid`."""
    n = grid.n
    if grid.full_period:
        return -n, n - 1
    return -(n // 2), (n + 1) // 2 - 1


@dataclass(frozen=True)
class SampleVector:
    """Complex function values at the nodes of `grid`."""

    values: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size != self.grid.size:
            raise ValueError(
                f"expected {self.grid.size} samples for this grid, got shape {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class SpectralCoeffs:
    """Fourier coefficients ``u_hat(k)`` for ``k = k_min .. k_max``.

    ``values[i]`` is the coefficient of index ``k_min + i``.  On a half-period
    grid index ``k`` multiplies ``exp(2iks)``; on a full-period grid it
    multiplies ``exp(iks)``.
    """

    values: np.ndarray
    k_min: int
    k_max: int = field(init=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "k_min", int(self.k_min))
        object.__setattr__(self, "k_max", int(self.k_min) + v.size - 1)

    @property
    def ks(self) -> np.ndarray:
        return np.arange(self.k_min, self.k_max + 1)

    def __getitem__(self, k: int) -> complex:
        if not self.k_min <= k <= self.k_max:
            raise KeyError(k)
        return self.values[k - self.k_min]

    def __len__(self):
        return self.values.size

    def as_dict(self) -> dict[int, complex]:
        return {int(k): complex(c) for k, c in zip(self.ks, self.values)}


def _check_eps(eps):
    if eps is None:
        return 0.0
    eps = float(eps)
    if not eps >= 0:
        raise ValueError(f"Krasny threshold must be >= 0, got {eps!r}")
    return eps


def krasny_filter(coeffs: SpectralCoeffs, eps: float = DEFAULT_KRASNY_EPS) -> SpectralCoeffs:
    """Zero every coefficient whose modulus is below `eps`."""
    eps = _check_eps(eps)
    v = coeffs.values.copy()
    v[np.abs(v) < eps] = 0
    return SpectralCoeffs(v, coeffs.k_min)


def forward_coeffs(samples: SampleVector, eps: float | None = DEFAULT_KRASNY_EPS) -> SpectralCoeffs:
    """Fourier coefficients of nodal values, Krasny-filtered.

    Computes ``u_hat(k) = exp(-i pi k / P) / P * sum_j u(s_j) exp(-2 pi i j k / P)``.
    On a full-period grid ``u_hat(-N)`` is set to zero.  Pass ``eps=0`` or
    ``None`` to skip the filter.
    """
    grid = samples.grid
    p = grid.size
    k_min, k_max = mode_range(grid)
    ks = np.arange(k_min, k_max + 1)
    spec = scipy.fft.fft(samples.values)
    coeffs = spec[ks % p] * np.exp(-1j * np.pi * ks / p) / p
    if grid.full_period:
        coeffs[0] = 0
    out = SpectralCoeffs(coeffs, k_min)
    eps = _check_eps(eps)
    return krasny_filter(out, eps) if eps > 0 else out


def inverse_samples(coeffs: SpectralCoeffs, grid: GridSpec) -> SampleVector:
    """Evaluate the expansion with coefficients `coeffs` at the nodes of `grid`."""
    k_min, k_max = mode_range(grid)
    if (coeffs.k_min, coeffs.k_max) != (k_min, k_max):
        raise ValueError(
            f"coefficient range [{coeffs.k_min}, {coeffs.k_max}] does not match "
            f"grid range [{k_min}, {k_max}]"
        )
    p = grid.size
    ks = coeffs.ks
    spec = np.empty(p, dtype=complex)
    spec[ks % p] = p * np.exp(1j * np.pi * ks / p) * coeffs.values
    return SampleVector(scipy.fft.ifft(spec), grid)
