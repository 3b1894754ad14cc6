"""Build script: compiles the optional Garside kernel extension.

The package is fully functional without the extension (a pure-Python twin
of the kernel is selected at import time), so the build tolerates a missing
or failing Cython toolchain.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "curvebraid._garside_c",
                ["src/curvebraid/_garside_c.pyx"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
