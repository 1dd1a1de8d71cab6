"""Build script: compiles the optional star-product kernel extension.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so any failure to cythonize or
compile is silently tolerated.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("WEYLSTAR_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "weylstar._star_kernel",
                    ["src/weylstar/_star_kernel.pyx"],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except Exception as exc:  # pragma: no cover - build-environment dependent
        print(f"weylstar: skipping compiled kernel ({exc!r}); pure-Python kernel will be used")
        ext_modules = []

setup(ext_modules=ext_modules)
