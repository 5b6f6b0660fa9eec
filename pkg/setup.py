"""Build script: compiles the optional fast-counting extension.

The extension is a pure speedup; if the build fails (no compiler, no
Cython) the package installs anyway and falls back to the Python
implementations in hxkit._kernels_py.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/hxkit/_kernels.pyx",
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
