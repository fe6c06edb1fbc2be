import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CASIMIR_RWA_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install; kernels fall back to numpy
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "casimir_rwa._ckernels",
                    ["src/casimir_rwa/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
