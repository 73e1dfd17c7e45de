from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "chaoscipher._kernels_cy",
                ["src/chaoscipher/_kernels_cy.pyx"],
                # No value-changing FP optimizations: ciphertexts must be
                # bit-identical to the pure-Python backend.
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
