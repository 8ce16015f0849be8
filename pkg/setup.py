"""Build the optional Cython kernel; the package falls back to pure Python without it.

    pip install -e . --no-build-isolation
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("CRTOOL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/crtool/ring/_ckernels.pyx"],
            compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
            quiet=True,
        )

setup(ext_modules=ext_modules)
