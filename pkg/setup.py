"""Build script.

The package is pure Python; a small Cython extension accelerates the
arity-2 tournament scans.  The extension is strictly optional: if Cython
or a C compiler is missing, the build falls back to the pure-Python
kernels selected at import time in hypersel._kernels.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install because the speedup module did not build."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"warning: compiled kernels skipped ({exc}); using pure-Python fallback")


extensions = []
if not os.environ.get("HYPERSEL_NO_EXT"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "hypersel._kernels._fast",
                    ["src/hypersel/_kernels/_fast.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:  # pragma: no cover - toolchain dependent
        print("warning: Cython unavailable; compiled kernels skipped")

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
