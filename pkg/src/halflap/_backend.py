"""Pick the compiled kernels when built, else the NumPy fallback."""
try:
    from halflap import _ckernels as kernels

    BACKEND = "cython"
except ImportError:  # extension not compiled
    from halflap import _pykernels as kernels

    BACKEND = "python"

__all__ = ["BACKEND", "kernels"]
