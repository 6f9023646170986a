"""Build hook for the optional accelerator extension.

The package is pure Python plus one optional Cython module with the two hot
loops (machine stepping, LZ78 parsing).  If Cython or a C compiler is missing,
or the compile fails for any reason, installation proceeds without the
extension and `pdlz.kernels` falls back to the pure-Python twin.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PDLZ_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/pdlz/_speedups.pyx"],
            language_level="3",
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"pdlz: skipping accelerator extension ({exc!r}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
