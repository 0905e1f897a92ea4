"""Pure numpy enumeration kernels (fallback backend)."""

import numpy as np

_CHUNK = 1 << 18


def _strides(div):
    """Mixed-radix strides, last coordinate fastest."""
    k = div.size
    st = np.ones(k, dtype=np.int64)
    for i in range(k - 2, -1, -1):
        st[i] = st[i + 1] * div[i + 1]
    return st


def apply_matrix_codes(div_src, mat, div_tgt):
    """Vectorized mixed-radix map application; see _backend.apply_matrix_codes."""
    n = int(np.prod(div_src))
    st_src = _strides(div_src)
    st_tgt = _strides(div_tgt)
    out = np.empty(n, dtype=np.int64)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        codes = np.arange(lo, hi, dtype=np.int64)
        x = (codes[:, None] // st_src[None, :]) % div_src[None, :]
        y = (x @ mat.T) % div_tgt[None, :]
        out[lo:hi] = y @ st_tgt
    return out
