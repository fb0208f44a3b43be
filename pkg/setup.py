from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "tailbounds._gridkernels",
                ["src/tailbounds/_gridkernels.pyx"],
                # -ffp-contract=off keeps the compiled kernels bit-identical
                # to the numpy fallback (no FMA contraction).
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
