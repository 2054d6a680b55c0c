"""Spectral half Laplacian ``(-Delta)^(1/2)`` on the real line.

Functions on ``R`` are mapped to ``(0, pi)`` by ``x = L cot(s)`` and expanded
in ``exp(iks)``.  Even modes are diagonal; odd modes use closed-form finite
sums combined through an FFT-based cyclic convolution, so the whole operator
costs ``O(N log N)``.

>>> import numpy as np
>>> from halflap import apply_to_function, ref_quartic
>>> x, res = apply_to_function(lambda x: 1 / (1 + x**4), n=256, L=1.1, ext="even")
>>> bool(np.max(np.abs(res.values - ref_quartic(x))) < 1e-12)
True
"""
from halflap._backend import BACKEND
from halflap.driver import (
    EvaluationError,
    HalfLapResult,
    apply_to_function,
    half_laplacian_full,
    half_laplacian_periodic,
)
from halflap.extensions import (
    BoundaryData,
    Extension,
    ExtensionSolveError,
    extend_even,
    extend_odd,
    extend_smooth_arctan,
    extend_smooth_generic,
)
from halflap.fastconv import (
    build_b_sequence,
    build_c_sequence,
    circular_convolve,
    direct_convolve,
    odd_mode_combination,
)
from halflap.kernel import (
    ConvergenceError,
    atanh_unit_circle,
    gauss_2f1_odd_finite,
    gauss_2f1_series,
    half_lap_mode_cos,
    half_lap_mode_even,
    half_lap_mode_odd,
    half_lap_mode_odd_2f1,
    half_lap_mode_sin,
    pochhammer,
)
from halflap.reference import (
    REFERENCES,
    dawson,
    oracle_mode_series,
    oracle_quadrature,
    ref_arctan,
    ref_erf,
    ref_inv_sqrt,
    ref_odd_sqrt,
    ref_quartic,
)
from halflap.spectral import (
    DEFAULT_KRASNY_EPS,
    GridSpec,
    SampleVector,
    SpectralCoeffs,
    forward_coeffs,
    inverse_samples,
    krasny_filter,
    make_grid,
)

__version__ = "0.1.0"
