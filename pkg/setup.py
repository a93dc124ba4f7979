from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext = Extension(
    "partition_atlas._ckernels",
    ["src/partition_atlas/_ckernels.pyx"],
    extra_compile_args=["-O3"],
    optional=True,
)

setup(
    ext_modules=cythonize([ext], compiler_directives={"language_level": "3"})
    if cythonize is not None
    else [],
)
