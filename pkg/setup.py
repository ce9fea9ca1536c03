from setuptools import Extension, setup
from Cython.Build import cythonize
import numpy

# The compiled kernels are optional: if the build fails the package falls
# back to the numpy implementation selected at import time.
extensions = [
    Extension(
        "supernum._core",
        ["src/supernum/_core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        optional=True,
    )
]

setup(ext_modules=cythonize(extensions, language_level="3"))
