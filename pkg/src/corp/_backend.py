"""Kernel selection: compiled extension when importable, else pure Python.

Set ``CORP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pav_py

if os.environ.get("CORP_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pav_py
else:
    try:
        from . import _pav_ext as _impl
    except ImportError:
        _impl = _pav_py

BACKEND = "compiled" if _impl is not _pav_py else "python"

pav_blocks = _impl.pav_blocks
pav_fitted_batch = _impl.pav_fitted_batch


def kernels(name):
    """Return the kernel module for ``"compiled"`` or ``"python"``."""
    if name == "python":
        return _pav_py
    if name == "compiled":
        from . import _pav_ext
        return _pav_ext
    raise ValueError(f"unknown backend {name!r}")
