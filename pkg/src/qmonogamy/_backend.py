"""Kernel backend selection.

Prefers the compiled extension, falling back to the pure-Python twins when
it is missing.  Set ``QMONOGAMY_BACKEND=python`` or ``=cython`` to force a
choice; forcing ``cython`` raises if the extension was never built instead
of silently degrading.
"""

from __future__ import annotations

import os

from . import _kernels_py
from ._kernels_py import JacobiConvergenceError

__all__ = ["backend_name", "jacobi_eigh", "discriminant_per_qubit", "JacobiConvergenceError"]

_forced = os.environ.get("QMONOGAMY_BACKEND", "").strip().lower()
if _forced == "python":
    _impl = _kernels_py
elif _forced == "cython":
    from . import _kernels_cy as _impl
elif _forced == "":
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py
else:
    raise ValueError(f"QMONOGAMY_BACKEND must be 'python' or 'cython', got {_forced!r}")

jacobi_eigh = _impl.jacobi_eigh
discriminant_per_qubit = _impl.discriminant_per_qubit


def backend_name() -> str:
    """Name of the kernel implementation selected at import time."""
    return _impl.BACKEND
