"""Build script for the optional compiled kernel extension.

The extension is a pure speedup; if Cython or a C compiler is missing the
package installs anyway and falls back to the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("tspga._kernels", ["src/tspga/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
