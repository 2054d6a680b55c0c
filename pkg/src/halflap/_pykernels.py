"""Pure NumPy versions of the inner loops.

Same signatures as the compiled ``_ckernels`` module; selected by
:mod:`halflap._backend` when the extension is unavailable.
"""
import numpy as np

# rows x nodes budget for one block of the finite sum
_BLOCK = 1 << 20


def log_cot_half(s):
    """``ln(cot(s/2))`` evaluated as ``asinh(cot(s))``."""
    s = np.asarray(s, dtype=float)
    return np.arcsinh(np.cos(s) / np.sin(s))


def odd_mode(k, s, L):
    """Half Laplacian of ``exp(iks)`` for odd `k` at the nodes `s` (1-d array)."""
    k = int(k)
    s = np.ascontiguousarray(s, dtype=float)
    sg = 1 if k > 0 else -1
    n_terms = (abs(k) - 1) // 2 + 1
    acc = np.zeros(s.shape, dtype=complex)
    rows = max(1, _BLOCK // max(1, s.size))
    for start in range(0, n_terms, rows):
        n = np.arange(start, min(n_terms, start + rows), dtype=float)[:, None]
        m = 2.0 * n + 1.0
        w = 4.0 / ((m - 2.0) * m * (m + 2.0))
        acc += np.sum(w * np.exp(-1j * sg * m * s), axis=0)
    sin_s = np.sin(s)
    bracket = np.cos(s) + sin_s * sin_s * log_cot_half(s) + acc
    return (-2j * sg / (L * np.pi * (abs(k) + 2))
            - (2j * k / (L * np.pi)) * np.exp(1j * k * s) * bracket)


def direct_convolve(b, c):
    """Cyclic convolution ``sum_n b[n] c[(l - n) mod P]`` in O(P^2)."""
    b = np.asarray(b, dtype=complex)
    c = np.asarray(c, dtype=complex)
    p = b.size
    n = np.arange(p)
    out = np.empty(p, dtype=complex)
    for l in range(p):
        out[l] = np.sum(b * c[(l - n) % p])
    return out


def mode_series(k, s, L, n_max):
    """Truncated bilateral series for the half Laplacian of ``exp(iks)``, odd `k`."""
    k = int(k)
    s = np.ascontiguousarray(s, dtype=float)
    out = np.empty(s.shape, dtype=complex)
    n = np.arange(1, n_max + 1, dtype=float)
    # n and -n paired; the n = 0 term vanishes (sgn(0) = 0)
    wp = 4.0 / ((2 * n - k) * (4.0 - (2 * n - k) ** 2))
    wm = 4.0 / ((-2 * n - k) * (4.0 - (-2 * n - k) ** 2))
    for i, si in enumerate(s):
        e = np.exp(2j * n * si)
        tail = np.sum(wp * e) - np.sum(wm * np.conj(e))
        out[i] = (1j * k / (L * np.pi)) * (2.0 / (4.0 - k * k) - tail)
    return out
