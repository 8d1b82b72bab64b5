"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``FREECONS_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("FREECONS_PURE_PYTHON"):
    from ._kernels_py import AmalgamKernel, BSKernel

    BACKEND = "python"
else:
    try:
        from ._kernels import AmalgamKernel, BSKernel

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernels_py import AmalgamKernel, BSKernel

        BACKEND = "python"

__all__ = ["AmalgamKernel", "BSKernel", "BACKEND"]
