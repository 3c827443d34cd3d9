"""Kernel backend selection.

The compiled extension is used when it imports; set ``BSIM_PURE_PYTHON=1``
to force the NumPy fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("BSIM_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

uplink_receive = _impl.uplink_receive
lack_counts = _impl.lack_counts
plan_pools = _impl.plan_pools


def backend(name: str):
    """Return the kernel module called ``name`` ("cython" or "python")."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels  # type: ignore[attr-defined]
        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
