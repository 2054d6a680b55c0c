"""Extending nodal values from ``[0, pi]`` to ``[0, 2 pi]``.

The full-period driver needs ``u`` on ``(pi, 2 pi)``.  How it is defined
there controls the decay of the Fourier coefficients and hence the accuracy:

* ``even``:  ``u(pi + t) = u(pi - t)``;
* ``odd``:   ``u(pi + t) = -u(pi - t)``;
* ``smooth``: the degree-5 trigonometric interpolant that makes
  ``arctan(L cot s)`` four times continuously differentiable on the circle;
* ``smooth_generic``: the same ansatz
  ``sum_{k=1}^{5} alpha_k cos(ks) + beta_k sin(ks)`` fitted to arbitrary
  boundary data (values and four derivatives at ``s = pi`` and ``s = 2 pi``).
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from halflap.spectral import GridSpec, SampleVector

__all__ = [
    "Extension",
    "BoundaryData",
    "ExtensionSolveError",
    "SmoothFit",
    "extend",
    "extend_even",
    "extend_odd",
    "extend_smooth_arctan",
    "extend_smooth_generic",
    "arctan_boundary",
    "estimate_boundary",
    "smooth_coefficients",
]

log = logging.getLogger(__name__)

_MODES = np.arange(1, 6)


class Extension(str, enum.Enum):
    NONE = "none"
    EVEN = "even"
    ODD = "odd"
    SMOOTH = "smooth"
    SMOOTH_GENERIC = "smooth-generic"

    @classmethod
    def parse(cls, value) -> Extension:
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        if key == "smooth-closed-form":
            key = "smooth"
        return cls(key)


class ExtensionSolveError(np.linalg.LinAlgError):
    """The boundary conditions cannot be met by the degree-5 ansatz."""

    def __init__(self, msg, condition, residual):
        super().__init__(msg)
        self.condition = condition
        self.residual = residual


@dataclass(frozen=True)
class BoundaryData:
    """``u, u', u'', u''', u''''`` (derivatives in ``s``) at ``s = pi`` and ``s = 2 pi``.

    ``at_two_pi`` equals the one-sided data at ``s = 0``.
    """

    at_pi: tuple
    at_two_pi: tuple

    def __post_init__(self):
        for name in ("at_pi", "at_two_pi"):
            v = tuple(float(x) for x in getattr(self, name))
            if len(v) != 5:
                raise ValueError(f"{name} needs 5 entries (value and 4 derivatives), got {len(v)}")
            if not all(np.isfinite(v)):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class SmoothFit:
    alpha: np.ndarray
    beta: np.ndarray
    condition: float
    residual: float

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        ks = np.outer(s, _MODES)
        return np.cos(ks) @ self.alpha + np.sin(ks) @ self.beta


def _half(samples: SampleVector):
    if samples.grid.full_period:
        raise ValueError("expected samples on a half-period grid")
    return samples.values


def extend_even(samples: SampleVector) -> SampleVector:
    """``[u_0 .. u_{N-1}, u_{N-1} .. u_0]``."""
    v = _half(samples)
    return SampleVector(np.concatenate([v, v[::-1]]), samples.grid.full())


def extend_odd(samples: SampleVector) -> SampleVector:
    """``[u_0 .. u_{N-1}, -u_{N-1} .. -u_0]``."""
    v = _half(samples)
    return SampleVector(np.concatenate([v, -v[::-1]]), samples.grid.full())


def arctan_tail(s, L):
    """Second-half trigonometric interpolant for ``arctan(L cot s)``."""
    s = np.asarray(s, dtype=float)
    return (75 * np.pi / 128 * np.cos(s)
            + (-3 / (4 * L) + 1 / (12 * L**3)) * np.sin(2 * s)
            - 25 * np.pi / 256 * np.cos(3 * s)
            + (1 / (8 * L) - 1 / (24 * L**3)) * np.sin(4 * s)
            + 3 * np.pi / 256 * np.cos(5 * s))


def extend_smooth_arctan(grid: GridSpec, first_half=None) -> SampleVector:
    """C^4 extension of ``arctan(L cot s)`` sampled on the full-period `grid`.

    The first ``N`` values are ``arctan(x_j)`` unless `first_half` is given.
    """
    full = grid.full()
    L = full.map_scale
    n = full.n
    head = np.arctan(full.x[:n]) if first_half is None else np.asarray(first_half)
    return SampleVector(np.concatenate([head, arctan_tail(full.s[n:], L)]), full)


def arctan_boundary(L: float) -> BoundaryData:
    """Exact boundary data of ``arctan(L cot s)``."""
    d3 = -2 / L + 2 / L**3
    return BoundaryData(
        at_pi=(-np.pi / 2, -1 / L, 0.0, d3, 0.0),
        at_two_pi=(np.pi / 2, -1 / L, 0.0, d3, 0.0),
    )


def _derivative_rows(s):
    # rows m = 0..4 of d^m/ds^m [cos(ks), sin(ks)] at s, for k = 1..5
    rows = []
    for m in range(5):
        km = _MODES.astype(float) ** m
        # d^m cos(ks) = k^m cos(ks + m pi/2); d^m sin(ks) = k^m sin(ks + m pi/2)
        c = km * np.cos(_MODES * s + m * np.pi / 2)
        sn = km * np.sin(_MODES * s + m * np.pi / 2)
        rows.append(np.concatenate([c, sn]))
    return np.array(rows)


def smooth_coefficients(boundary: BoundaryData, strict: bool = True, tol: float = 1e-10) -> SmoothFit:
    """Fit ``alpha_k, beta_k`` (``k = 1..5``) to the 10 boundary conditions.

    The 10 x 10 system always has rank 9: at ``s = pi`` and ``2 pi`` the
    value and even derivatives involve only the cosines and the odd
    derivatives only the sines, giving 6 equations for 5 cosine weights and
    4 for 5 sine weights.  The minimum-norm least-squares solution is
    returned; with `strict` an :class:`ExtensionSolveError` is raised when
    the conditions are inconsistent (relative residual above `tol`).
    """
    a = np.vstack([_derivative_rows(np.pi), _derivative_rows(2 * np.pi)])
    rhs = np.concatenate([boundary.at_pi, boundary.at_two_pi])
    sol, _, rank, sv = np.linalg.lstsq(a, rhs, rcond=1e-12)
    condition = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
    residual = float(np.linalg.norm(a @ sol - rhs) / max(1.0, np.linalg.norm(rhs)))
    if residual > tol:
        msg = (f"boundary data inconsistent with the degree-5 ansatz: relative residual "
               f"{residual:.3e}, rank {rank}, condition number {condition:.3e}")
        if strict:
            raise ExtensionSolveError(msg, condition, residual)
        log.warning(msg)
    return SmoothFit(sol[:5], sol[5:], condition, residual)


def estimate_boundary(samples: SampleVector) -> BoundaryData:
    """Boundary data from nodal values by 5-point polynomial extrapolation.

    A quartic through the five nodes nearest each end of ``(0, pi)`` is
    differentiated at the endpoint.  Much less accurate than analytic data,
    especially for the fourth derivative.
    """
    v = _half(samples).real
    s = samples.grid.s
    if v.size < 5:
        raise ValueError("need at least 5 samples to estimate boundary derivatives")

    def ends(nodes, vals, at):
        poly = np.polynomial.Polynomial.fit(nodes - at, vals, 4).convert()
        return tuple(float(poly.deriv(m)(0.0)) for m in range(5))

    return BoundaryData(at_pi=ends(s[-5:], v[-5:], np.pi), at_two_pi=ends(s[:5], v[:5], 0.0))


def extend_smooth_generic(samples: SampleVector, boundary: BoundaryData | None = None,
                          strict: bool = True) -> SampleVector:
    """Extend with the fitted degree-5 trigonometric interpolant.

    Without `boundary`, the data are estimated by :func:`estimate_boundary`
    and the fit is not required to be exact.
    """
    v = _half(samples)
    if boundary is None:
        boundary = estimate_boundary(samples)
        strict = False
    fit = smooth_coefficients(boundary, strict=strict)
    full = samples.grid.full()
    tail = fit(full.s[full.n:])
    return SampleVector(np.concatenate([v, tail]), full)


def extend(samples: SampleVector, kind, boundary: BoundaryData | None = None) -> SampleVector:
    """Dispatch on :class:`Extension`; ``none`` returns `samples` unchanged."""
    kind = Extension.parse(kind)
    if kind is Extension.NONE:
        return samples
    if kind is Extension.EVEN:
        return extend_even(samples)
    if kind is Extension.ODD:
        return extend_odd(samples)
    if kind is Extension.SMOOTH:
        return extend_smooth_arctan(samples.grid, first_half=samples.values)
    return extend_smooth_generic(samples, boundary)
