"""Build the optional compiled kernels.

The package works without them: ``sigmalattice.kernels`` falls back to the
pure-Python implementation when ``_ckernels`` cannot be imported.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "sigmalattice._ckernels",
                ["src/sigmalattice/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
