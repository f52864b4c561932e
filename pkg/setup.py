"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a missing compiler or Cython must not fail the install.
Set OOMCALC_PURE_PYTHON=1 to skip the extension build entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to a source-only install on compile failure."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, broken toolchain, ...
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the accelerator extension failed ({exc}); "
            "falling back to the pure-Python kernel.",
            file=sys.stderr,
        )


ext_modules = []
cmdclass = {}
if not os.environ.get("OOMCALC_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "oomcalc._backend.cy_kernel",
                    ["src/oomcalc/_backend/cy_kernel.pyx"],
                )
            ],
            language_level="3",
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:
        print(
            "WARNING: Cython not available; installing with the pure-Python "
            "kernel only.",
            file=sys.stderr,
        )

setup(ext_modules=ext_modules, cmdclass=cmdclass)
