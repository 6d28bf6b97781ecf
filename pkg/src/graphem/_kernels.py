"""Kernel backend selection: compiled extension if available, NumPy fallback
otherwise. GRAPHEM_PURE_PYTHON=1 forces the fallback (used by the benchmark
and the backend-parity tests)."""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("GRAPHEM_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

gmle_sweep = _impl.gmle_sweep
gmle_finalize = _impl.gmle_finalize
glasso_column_cd = _impl.glasso_column_cd
