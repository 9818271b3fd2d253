"""Select the arithmetic kernel at import time.

The compiled ``_kernel`` extension is used when it was built; otherwise the
pure-Python ``_pykernel`` takes over. Setting ``PICGEN_PURE=1`` forces the
fallback, which the test suite uses to run both backends.
"""

import os

if os.environ.get("PICGEN_PURE", "") not in ("", "0"):
    from ._pykernel import BACKEND, FieldKernel
else:
    try:
        from ._kernel import BACKEND, FieldKernel
    except ImportError:
        from ._pykernel import BACKEND, FieldKernel

__all__ = ["BACKEND", "FieldKernel"]
