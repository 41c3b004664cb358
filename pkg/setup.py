"""Builds the optional compiled kernel; the package works without it."""
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("teamlogic._kernel._ckernel", ["src/teamlogic/_kernel/_ckernel.pyx"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except ImportError:  # no Cython: the pure-Python kernel is used
    pass

setup(ext_modules=ext_modules)
