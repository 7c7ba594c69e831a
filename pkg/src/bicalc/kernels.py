"""Backend selection for the braid/antisymmetrizer kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over.  Set ``BICALC_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py as python_backend

compiled_backend = None
if not os.environ.get("BICALC_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend  # type: ignore[no-redef]
    except ImportError:  # extension not built
        compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "compiled" if compiled_backend is not None else "python"

braid_orbits = backend.braid_orbits
antisym_block = backend.antisym_block
antisymmetrize = backend.antisymmetrize

__all__ = [
    "BACKEND",
    "backend",
    "python_backend",
    "compiled_backend",
    "braid_orbits",
    "antisym_block",
    "antisymmetrize",
]
