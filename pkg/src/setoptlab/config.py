"""Global comparison tolerance and environment switch names."""

import contextlib

DEFAULT_EPS = 1e-9

#: env var selecting the kernel backend: "numba" (default), "numpy" or "auto"
BACKEND_ENV = "SETOPTLAB_BACKEND"
#: env var capping the numba thread count
THREADS_ENV = "SETOPTLAB_THREADS"

_eps = DEFAULT_EPS


def get_eps() -> float:
    """Current global comparison tolerance."""
    return _eps


def set_eps(value: float) -> None:
    """Override the global comparison tolerance (must be positive)."""
    global _eps
    value = float(value)
    if not value > 0.0:
        raise ValueError(f"tolerance must be positive, got {value}")
    _eps = value


def resolve_eps(eps=None) -> float:
    """Return `eps` if given, else the global tolerance."""
    return _eps if eps is None else float(eps)


@contextlib.contextmanager
def tolerance(value: float):
    """Temporarily override the global tolerance."""
    global _eps
    old = _eps
    set_eps(value)
    try:
        yield
    finally:
        _eps = old
