"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``TRITFORGE_PURE=1`` to force the pure-Python kernel even when the
compiled one is importable (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernel_py

STATUS_OK = _kernel_py.STATUS_OK
STATUS_CONTENTION = _kernel_py.STATUS_CONTENTION
STATUS_OSCILLATION = _kernel_py.STATUS_OSCILLATION


def _load_compiled():
    try:
        from . import _kernel  # compiled at install time; may be absent
    except ImportError:
        return None
    return _kernel


_compiled = _load_compiled()

if os.environ.get("TRITFORGE_PURE") == "1" or _compiled is None:
    _active = _kernel_py
else:
    _active = _compiled


def active_backend() -> str:
    """Name of the kernel in use: 'compiled' or 'python'."""
    return _active.NAME


def available_backends() -> dict[str, object]:
    backends = {"python": _kernel_py}
    if _compiled is not None:
        backends["compiled"] = _compiled
    return backends


def kernel():
    return _active
