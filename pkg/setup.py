import logging

import numpy as np
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

log = logging.getLogger(__name__)


class OptionalBuildExt(build_ext):
    """Build the compiled kernels if possible; the package runs without them."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            log.warning("compiled kernels not built (%s); using pure-Python fallback", exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            log.warning("failed to build %s (%s); using pure-Python fallback", ext.name, exc)


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "halflap._ckernels",
                ["src/halflap/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
