"""Build hook: compile the optional Cython fast path when possible.

The package is fully functional without the extension (a pure-python twin
of each kernel is selected at import time), so any failure here degrades
to a source-only install instead of breaking it.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/oritree/_fastpath.pyx",
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # no Cython or no compiler: pure python install
    print(f"oritree: skipping compiled fast path ({exc})")

setup(ext_modules=ext_modules)
