"""Build the optional Cython kernels.

The package works without them: ``sublogic._kernels`` falls back to the
pure-Python implementations when the extension cannot be imported.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SUBLOGIC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("sublogic._speedups", ["src/sublogic/_speedups.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": 3, "boundscheck": False,
                                 "wraparound": False},
        )

setup(ext_modules=ext_modules)
