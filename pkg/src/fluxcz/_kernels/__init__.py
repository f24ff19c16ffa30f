"""Propagation kernel backends.

The compiled Cython kernel is preferred; the pure-NumPy implementation is a
drop-in fallback selected at import time.  Set ``FLUXCZ_PURE_PYTHON=1`` to
force the fallback (used by the benchmark and the backend-equivalence
tests).
"""

import os

from . import pure

_FORCE_PURE = os.environ.get("FLUXCZ_PURE_PYTHON", "") not in ("", "0")

try:
    from . import _splitstep as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

if _compiled is not None and not _FORCE_PURE:
    BACKEND = "compiled"
    propagate_window = _compiled.propagate_window
else:
    BACKEND = "pure"
    propagate_window = pure.propagate_window


def get_backend(name: str | None = None):
    """Return (backend_name, kernel) for ``name`` in {None, "compiled", "pure"}.

    ``None`` selects the import-time default.
    """
    if name is None:
        return BACKEND, propagate_window
    if name == "pure":
        return "pure", pure.propagate_window
    if name == "compiled":
        if _compiled is None:
            raise ValueError("compiled kernel is not available in this installation")
        return "compiled", _compiled.propagate_window
    raise ValueError(f"unknown backend {name!r}; expected 'compiled' or 'pure'")
