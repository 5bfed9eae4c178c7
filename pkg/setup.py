"""Build script: compiles the optional Cython kernel.

The package is fully functional without the extension (a pure-Python kernel
is selected at import time), so any build failure here only costs speed.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "hopfkit._kernel._ckernel",
                ["src/hopfkit/_kernel/_ckernel.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
