"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it imports cleanly; setting the
environment variable ``TIMCM_PURE_PYTHON=1`` forces the fallback.
``BACKEND`` names the active implementation.
"""

import os

from . import _pykernels as python_backend

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

if compiled_backend is not None and os.environ.get("TIMCM_PURE_PYTHON", "") in ("", "0"):
    _active = compiled_backend
    BACKEND = "compiled"
else:
    _active = python_backend
    BACKEND = "python"

canonical_code = _active.canonical_code
enumerate_canonical_codes = _active.enumerate_canonical_codes
ratio_search = _active.ratio_search

__all__ = [
    "BACKEND",
    "canonical_code",
    "enumerate_canonical_codes",
    "ratio_search",
    "python_backend",
    "compiled_backend",
]
