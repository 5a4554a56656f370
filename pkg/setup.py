"""Build hook: compile the hot-kernel module when Cython is available.

The package is fully functional without the extension (the same source
runs as plain Python), so any failure here degrades to a pure install.
"""

from setuptools import Extension, setup


def _extensions():
    try:
        from Cython.Build import cythonize
    except Exception:
        return []
    try:
        return cythonize(
            [Extension("besselsum._kernels", ["src/besselsum/_kernels.py"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
            quiet=True,
        )
    except Exception:
        return []


setup(ext_modules=_extensions())
