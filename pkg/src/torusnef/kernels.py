"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ``TORUSNEF_PURE_PYTHON=1``
to force the pure-Python fallback.
"""

import os

from . import _kernels_py as python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and not os.environ.get("TORUSNEF_PURE_PYTHON"):
    BACKEND = "cython"
    curve_degree_table = compiled_backend.curve_degree_table
else:
    BACKEND = "python"
    curve_degree_table = python_backend.curve_degree_table

curve_bits = python_backend.curve_bits

__all__ = ["BACKEND", "curve_degree_table", "curve_bits", "python_backend", "compiled_backend"]
