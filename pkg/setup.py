import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# MATBREAK_NO_EXT=1 skips the compiled core; the package then runs on the
# pure-Python kernels.
if cythonize is None or os.environ.get("MATBREAK_NO_EXT"):
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "matbreak._ckernels",
                ["src/matbreak/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
