"""Build script: compiles the optional Cython kernel when Cython is available.

The package is fully functional without the compiled extension; the pure
Python kernel in qcharvar._kernel.pykernel is selected at import time as a
fallback.  Set QCHARVAR_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("QCHARVAR_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "qcharvar._kernel.ckernel",
                    ["src/qcharvar/_kernel/ckernel.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
