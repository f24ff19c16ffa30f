from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "fluxcz._kernels._splitstep",
        ["src/fluxcz/_kernels/_splitstep.pyx"],
        # -ffast-math lets the compiler vectorize the reduction loops; the
        # kernel never produces inf/nan operands.
        extra_compile_args=["-O3", "-ffast-math", "-funroll-loops", "-march=native"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
