"""Build script: compiles the optional Cython enumeration kernel.

The package works without the extension (a pure-Python twin is selected at
import time), so any build failure here downgrades to a warning instead of
aborting the install.
"""

import sys

from setuptools import setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("latwalk: Cython not available, skipping compiled kernel", file=sys.stderr)
        return []
    from setuptools import Extension

    ext = Extension(
        "latwalk.kernel._cyenum",
        ["src/latwalk/kernel/_cyenum.pyx"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


try:
    setup(ext_modules=extensions())
except SystemExit:
    raise
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"latwalk: compiled kernel build failed ({exc}); installing pure-Python build", file=sys.stderr)
    setup(ext_modules=[])
