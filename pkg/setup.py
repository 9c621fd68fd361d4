"""Build script for the compiled kernel extension.

The extension is optional: if the toolchain or Cython is unavailable the
install still succeeds and the package falls back to the pure-Python
kernels at import time.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "qmonogamy._kernels_cy",
                ["src/qmonogamy/_kernels_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
