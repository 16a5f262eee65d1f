"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python kernel is selected at
import time), so a missing compiler or Cython only costs speed.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/cscwalls/_speedups.pyx",
        language_level="3",
    )
except ImportError:
    import warnings

    warnings.warn("Cython not available: building without the compiled kernel")
    ext_modules = []

setup(ext_modules=ext_modules)
