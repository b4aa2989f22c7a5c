"""Kernel backend selection.

The hot all-pairs kernels exist twice: a numba-jitted version and a pure
numpy fallback with identical semantics. Selection order: explicit
`set_backend()` call, then the SETOPTLAB_BACKEND env var ("numba",
"numpy" or "auto"), then auto (numba when importable).
"""

import os
import warnings

from . import _kernels_numpy
from .config import BACKEND_ENV, THREADS_ENV

_requested = None  # programmatic override
_resolved = None  # cached module
_resolved_name = None


def set_backend(name) -> None:
    """Force a backend ("numba" / "numpy" / "auto" / None to re-read env)."""
    global _requested, _resolved, _resolved_name
    if name not in (None, "auto", "numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    _requested = name
    _resolved = None
    _resolved_name = None


def _load_numba_kernels():
    from . import _kernels_numba

    threads = os.environ.get(THREADS_ENV)
    if threads:
        import numba

        numba.set_num_threads(max(1, int(threads)))
    return _kernels_numba


def kernels():
    """Resolve and cache the active kernel module."""
    global _resolved, _resolved_name
    if _resolved is not None:
        return _resolved
    choice = _requested or os.environ.get(BACKEND_ENV, "auto").strip().lower() or "auto"
    if choice == "numpy":
        _resolved, _resolved_name = _kernels_numpy, "numpy"
    elif choice == "numba":
        _resolved, _resolved_name = _load_numba_kernels(), "numba"
    else:
        try:
            _resolved, _resolved_name = _load_numba_kernels(), "numba"
        except Exception as exc:  # pragma: no cover - depends on install
            warnings.warn(f"numba backend unavailable ({exc}); falling back to numpy")
            _resolved, _resolved_name = _kernels_numpy, "numpy"
    return _resolved


def active_backend() -> str:
    """Name of the backend that kernel calls will use."""
    kernels()
    return _resolved_name
