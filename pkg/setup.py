import sys

from setuptools import Extension, setup

# The compiled kernels are an optional speedup; the package falls back to the
# numpy implementation in kleinwiman.kernels._ref when the extension is absent.
ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "kleinwiman.kernels._speed",
                ["src/kleinwiman/kernels/_speed.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    print(f"skipping compiled kernels ({exc}); pure-python fallback will be used",
          file=sys.stderr)

setup(ext_modules=ext_modules)
