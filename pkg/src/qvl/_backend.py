"""Select the coefficient kernels at import time.

The compiled extension is preferred; setting ``QVL_PURE_PYTHON=1`` forces
the pure-Python fallback.
"""

import os

if os.environ.get("QVL_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND
poly_mul = kernels.poly_mul
poly_divmod = kernels.poly_divmod
