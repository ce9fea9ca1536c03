"""Kernel backend selection.

The compiled extension is preferred when available; setting the
environment variable SUPERNUM_NO_EXT=1 forces the numpy fallback.
Both backends expose: mul_vec, matmul, bracket_apply, norm1,
series_apply, BACKEND.
"""

from __future__ import annotations

import os

from . import _kernels_np

if os.environ.get("SUPERNUM_NO_EXT"):
    _impl = _kernels_np
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_np


def backend_name():
    return getattr(_impl, "BACKEND", "compiled")


mul_vec = _impl.mul_vec
matmul = _impl.matmul
bracket_apply = _impl.bracket_apply
norm1 = _impl.norm1
series_apply = _impl.series_apply
