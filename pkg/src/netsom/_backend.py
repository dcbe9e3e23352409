"""Kernel backend selection: compiled extension with pure numpy fallback.

Set ``NETSOM_BACKEND=python`` or ``NETSOM_BACKEND=compiled`` to force one.
"""

from __future__ import annotations

import os

from netsom import _core_py

try:
    from netsom import _core_cy
except ImportError:
    _core_cy = None

_forced = os.environ.get("NETSOM_BACKEND", "").strip().lower()
if _forced == "python":
    _impl = _core_py
elif _forced == "compiled":
    if _core_cy is None:
        raise ImportError(
            "NETSOM_BACKEND=compiled but the netsom._core_cy extension is not built"
        )
    _impl = _core_cy
elif _forced:
    raise ImportError(
        f"unknown NETSOM_BACKEND value {_forced!r}; use 'python' or 'compiled'"
    )
else:
    _impl = _core_cy if _core_cy is not None else _core_py

bmu_batch = _impl.bmu_batch
run_steps = _impl.run_steps


def backend_name() -> str:
    """Name of the kernel implementation in use: 'compiled' or 'python'."""
    return _impl.NAME
