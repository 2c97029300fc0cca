"""Select the compiled kernels when available.

Set ``SPECTRAL_TURAN_PURE=1`` to force the pure-Python implementation.
"""

import os

if os.environ.get("SPECTRAL_TURAN_PURE"):
    from . import _kernels_py as kernels
    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
        COMPILED = True
    except ImportError:
        from . import _kernels_py as kernels
        COMPILED = False

__all__ = ["kernels", "COMPILED"]
