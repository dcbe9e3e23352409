from setuptools import Extension, setup

# The compiled kernels are optional: if Cython (or a C compiler) is missing
# the package installs pure-python and netsom._backend falls back at import.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "netsom._core_cy",
                ["src/netsom/_core_cy.pyx"],
                # -ffp-contract=off: the kernels must round exactly like the
                # pure backend; fused multiply-adds would change results.
                extra_compile_args=["-O3", "-ffp-contract=off"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
