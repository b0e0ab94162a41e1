"""Backend selection for the hot kernels.

The compiled Cython core is preferred when importable; the numpy fallback in
heatlab._ref is otherwise used transparently.  Set HEATLAB_BACKEND=python or
HEATLAB_BACKEND=compiled to force a choice (forcing `compiled` raises if the
extension is missing).
"""

from __future__ import annotations

import os

from . import _ref

_impl = _ref

_choice = os.environ.get("HEATLAB_BACKEND", "").strip().lower()
if _choice not in ("", "compiled", "python"):
    raise ImportError(f"HEATLAB_BACKEND must be 'compiled' or 'python', got {_choice!r}")

if _choice != "python":
    try:
        from . import _ext  # type: ignore[attr-defined]

        _impl = _ext
    except ImportError:
        if _choice == "compiled":
            raise


def backend_name() -> str:
    return _impl.BACKEND


def get_backend(name: str | None = None):
    """Return the backend module; `name` forces 'compiled' or 'python'."""
    if name is None:
        return _impl
    if name == "python":
        return _ref
    if name == "compiled":
        from . import _ext  # type: ignore[attr-defined]

        return _ext
    raise ValueError(f"unknown backend {name!r}")


def angular_moments(a, m, tol=1e-13):
    return _impl.angular_moments(a, m, tol)


def wrapped_gaussian(d, L, t, cutoff=1e-17):
    return _impl.wrapped_gaussian(d, L, t, cutoff)
