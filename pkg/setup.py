"""Build the optional compiled kernel for the convex-roof optimizer.

The package is pure Python except for ``qsg._roofkernel``, a Cython
translation of the hot projected-gradient loop.  If Cython or a working C
toolchain is unavailable the build still succeeds and the package falls
back to the NumPy implementation at import time.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "qsg._roofkernel",
                ["src/qsg/_roofkernel.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []


class OptionalBuildExt(build_ext):
    """Treat extension build failures as a warning, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - degrade to pure Python
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building qsg._roofkernel failed ({exc}); "
            "the NumPy kernel will be used",
            file=sys.stderr,
        )


setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
