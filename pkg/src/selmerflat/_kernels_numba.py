"""Numba-compiled enumeration kernels (default backend)."""

import numpy as np
from numba import njit


@njit(cache=True)
def apply_matrix_codes(div_src, mat, div_tgt):
    """JIT mixed-radix map application; see _backend.apply_matrix_codes."""
    k = div_src.size
    l = div_tgt.size
    n = np.int64(1)
    for i in range(k):
        n *= div_src[i]
    st_tgt = np.ones(l, dtype=np.int64)
    for i in range(l - 2, -1, -1):
        st_tgt[i] = st_tgt[i + 1] * div_tgt[i + 1]
    out = np.empty(n, dtype=np.int64)
    x = np.zeros(k, dtype=np.int64)
    for code in range(n):
        acc = np.int64(0)
        for i in range(l):
            s = np.int64(0)
            for j in range(k):
                s += mat[i, j] * x[j]
            acc += (s % div_tgt[i]) * st_tgt[i]
        out[code] = acc
        # increment the mixed-radix counter, last coordinate fastest
        for j in range(k - 1, -1, -1):
            x[j] += 1
            if x[j] == div_src[j]:
                x[j] = 0
            else:
                break
    return out
