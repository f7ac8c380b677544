"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when importable; set ``POLYCHROME_PURE=1``
to force the fallback.  ``BACKEND`` names the active implementation.
"""

import os

from . import _fallback

if os.environ.get("POLYCHROME_PURE", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
        BACKEND = "python"

enumerate_ranks = _impl.enumerate_ranks
bnb_two_color = _impl.bnb_two_color

__all__ = ["BACKEND", "enumerate_ranks", "bnb_two_color"]
