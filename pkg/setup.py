"""Build script: compiles the optional Cython sweep kernel.

The package works without the extension (a numpy fallback is selected at
import time), so any failure here is demoted to a warning.
"""

import warnings

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext = Extension(
        "transim._kernels",
        ["src/transim/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    ext_modules = cythonize(
        [ext],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": "3",
        },
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    warnings.warn(f"Cython kernel not built, using pure-python fallback: {exc}")

setup(ext_modules=ext_modules)
