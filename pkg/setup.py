"""Optional compiled kernels; the package works without them."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qaswitch/exactpoly/_kernels.pyx"], language_level=3, quiet=True
    )
except Exception:  # Cython missing or compiler unavailable
    ext_modules = []

setup(ext_modules=ext_modules)
