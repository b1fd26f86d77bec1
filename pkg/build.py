#! /usr/bin/python3.9

"""
Compiling the walk step kernel with Cython. A failed compile is not fatal: the package
falls back to the numpy kernel in `walkmem.core.pykernel`.
"""

from Cython.Build import cythonize
from setuptools import Extension
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError

ext_modules = cythonize(
    [
        Extension(
            name="walkmem.core.kernel",
            include_dirs=["walkmem/core"],
            sources=["walkmem/core/kernel.pyx"],
        ),
    ]
)


class ExtBuilder(build_ext):
    def run(self):
        try:
            super().run()
        except (PlatformError, FileNotFoundError):
            print("Could not compile the Cython kernel, using the numpy one.")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except (CCompilerError, ExecError, PlatformError, ValueError):
            print(f"Could not compile {ext.name}, using the numpy kernel.")


def build(setup_kwargs):
    """
    This function is mandatory in order to build the extensions.
    """
    setup_kwargs.update(
        {"ext_modules": ext_modules, "cmdclass": {"build_ext": ExtBuilder}}
    )
