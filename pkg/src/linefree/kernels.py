"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``LINEFREE_PURE=1`` to force the fallback (used by the benchmark and the
kernel-agreement tests).
"""

from __future__ import annotations

import os

from . import _fallback

BACKEND = "python"

if os.environ.get("LINEFREE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
else:
    _impl = _fallback

rref_mod = _impl.rref_mod
matmul_mod = _impl.matmul_mod
enumerate_box = _impl.enumerate_box

__all__ = ["BACKEND", "rref_mod", "matmul_mod", "enumerate_box"]
