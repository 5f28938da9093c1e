"""Build hook for the optional compiled kernel.

The package is pure Python; ``qskein._kernels._ckernel`` is a Cython
re-implementation of the two inner loops (coefficient multiplication and
quantum torus products).  If Cython or a C compiler is unavailable the
extension is skipped and the pure Python kernel is used at import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/qskein/_kernels/_ckernel.pyx"],
        language_level="3",
        quiet=True,
    )


class OptionalBuildExt(build_ext):
    """Carry on with the pure Python kernel if compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            print(f"warning: compiled kernel skipped ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel skipped ({exc})")


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
