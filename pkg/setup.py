"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python fallback is
selected at import time), so any failure here downgrades to a pure
build instead of aborting the install.
"""

from setuptools import setup


def extension_modules():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "maxsep._kernels._graphcore",
        ["src/maxsep/_kernels/_graphcore.pyx"],
    )
    try:
        return cythonize([ext], language_level=3)
    except Exception:
        return []


setup(ext_modules=extension_modules())
