"""Build script: compiles the Cython kernels when possible.

The package works without the extension (a pure-Python fallback is
selected at import time), so any compilation problem downgrades to a
warning instead of failing the install.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            warnings.warn(f"skipping compiled kernels ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); using pure-Python fallback")


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/intgraph/_fastkernels.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # Cython not installed
    warnings.warn(f"Cython unavailable ({exc}); installing pure-Python kernels only")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
