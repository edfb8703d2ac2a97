"""Pick the compiled kernels when available, numpy otherwise.

Set ``CATDECAY_PURE_PYTHON=1`` to force the numpy path.
"""

import os

from catdecay import _pykernels

BACKEND = "python"
kernels = _pykernels

if not os.environ.get("CATDECAY_PURE_PYTHON"):
    try:
        from catdecay import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"
