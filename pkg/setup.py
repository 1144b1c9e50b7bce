"""Build script: compiles the optional Cython speedup kernel.

The package works without the extension (pure NumPy fallback); the build
therefore tolerates a missing compiler and ships pure-Python in that case.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "photonzne._speedups",
                sources=["src/photonzne/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
