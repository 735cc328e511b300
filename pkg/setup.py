"""Build hook for the optional compiled elimination kernels."""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # fall back to the pure-numpy kernels at import time
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("hopfgalois._kernels", ["src/hopfgalois/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
