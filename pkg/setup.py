"""Build script: compiles the extension kernel when a toolchain is available.

The package works without the extension (a vectorized numpy kernel is
selected at import time), so a failed extension build downgrades to a
warning instead of aborting the install.  Set GIFRC_NO_EXT=1 to skip the
extension on purpose.
"""

import os
import sys

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("GIFRC_NO_EXT") == "1":
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError as exc:
        print(f"gifrc: extension build skipped ({exc})", file=sys.stderr)
        return []
    ext = Extension(
        "gifrc._mi_core",
        ["src/gifrc/_mi_core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions())
