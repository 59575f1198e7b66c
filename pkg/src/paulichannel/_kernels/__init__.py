"""Kernel backend selection.

The hot numerical loops (exact enumeration sums and the simplex grid
search) exist twice: a Cython extension and a pure NumPy implementation.
The extension is preferred when importable; setting the environment
variable ``PAULICHANNEL_PURE=1`` before import forces the fallback. The
active choice is exposed as :func:`active_backend` and recorded in run
manifests.
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _fast
except ImportError:  # extension not built; the fallback covers everything
    _fast = None


def _select():
    forced = os.environ.get("PAULICHANNEL_PURE", "").strip().lower()
    if forced in {"1", "true", "yes", "on"}:
        return pure, "pure"
    if _fast is not None:
        return _fast, "cython"
    return pure, "pure"


_impl, BACKEND = _select()

separable_error_sum = _impl.separable_error_sum
entangled_error_sum = _impl.entangled_error_sum
grid_search_full = _impl.grid_search_full
grid_search_slice = _impl.grid_search_slice


def active_backend() -> str:
    """Name of the backend in use: ``"cython"`` or ``"pure"``."""
    return BACKEND


def available_backends() -> dict:
    """All importable backend modules keyed by name."""
    backends = {"pure": pure}
    if _fast is not None:
        backends["cython"] = _fast
    return backends
