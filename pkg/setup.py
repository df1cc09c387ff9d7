"""Build the optional compiled kernels.

Without Cython or a C compiler the package installs in pure-Python mode.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("QVL_PURE_PYTHON", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("qvl._ckernels", ["src/qvl/_ckernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
