"""Pick the kernel backend once, at import.

The compiled module is used when it is importable; setting the environment
variable ``RGGRADII_PURE_PYTHON=1`` forces the numpy/pure-Python fallback.
"""
import os

from . import _kernels_py

if os.environ.get("RGGRADII_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND
