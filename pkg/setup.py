"""Build script for the optional compiled kernels.

The package works without the extension; if Cython or a C compiler is
missing the build falls back to the pure numpy kernels.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("FRACWHITTLE_NO_EXT", "") in ("", "0"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "fracwhittle._ckernels",
                    ["src/fracwhittle/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
