"""Kernel backend selection.

The element-enumeration kernels exist twice: a numba @njit version and a pure
numpy fallback. SELMERFLAT_BACKEND picks one ("numba", "numpy", default
"auto" = numba when importable).
"""

import os

import numpy as np

_choice = os.environ.get("SELMERFLAT_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError("SELMERFLAT_BACKEND must be 'numba', 'numpy' or 'auto', got %r" % _choice)

if _choice == "numpy":
    from . import _kernels_numpy as _impl
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        from . import _kernels_numpy as _impl
        BACKEND = "numpy"


def apply_matrix_codes(div_src, mat, div_tgt):
    """Code of f(x) for every source element x, as one int64 array.

    Elements of a group Z/d_1 + ... + Z/d_k are numbered by mixed-radix codes
    (last coordinate fastest). mat is the (len(div_tgt) x len(div_src)) integer
    matrix of the map; entries may be any ints, rows are reduced mod div_tgt.
    """
    div_src = np.ascontiguousarray(div_src, dtype=np.int64)
    div_tgt = np.ascontiguousarray(div_tgt, dtype=np.int64)
    n = int(np.prod(div_src)) if div_src.size else 1
    if div_tgt.size == 0 or div_src.size == 0:
        # trivial source or target: every element maps to code 0
        return np.zeros(n, dtype=np.int64)
    mat = np.ascontiguousarray(mat, dtype=np.int64) % div_tgt[:, None]
    return _impl.apply_matrix_codes(div_src, mat, div_tgt)
