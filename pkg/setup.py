"""Build script: compiles the optional Cython simulation kernel.

The package works without the extension (a pure-Python kernel is selected
at import when the compiled one is missing), so the extension build is
marked optional and any compile failure degrades to a source-only install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "tritforge.sim._kernel",
                ["src/tritforge/sim/_kernel.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
