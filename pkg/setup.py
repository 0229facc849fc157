"""Build script: compiles the optional sweep kernels.

The package works without the extension (a pure scipy backend is selected
at import time), so a failed Cython build is not fatal for `pip install`.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "wrcouple.kernels._sweeps",
                ["src/wrcouple/kernels/_sweeps.pyx"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=extensions)
