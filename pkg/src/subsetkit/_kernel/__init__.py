"""Convolution backend selection.

The compiled NTT extension is used when it imported successfully and the
modulus/length combination stays within its CRT headroom; everything else
falls back to the pure-Python Kronecker path.  Set SUBSETKIT_BACKEND to
"python" or "compiled" to force a choice (mainly for benchmarks/tests).
"""

import os

from . import fallback

try:
    from . import _ntt
except ImportError:
    _ntt = None

_FORCED = os.environ.get("SUBSETKIT_BACKEND", "").strip().lower()
if _FORCED == "python":
    _ntt = None
elif _FORCED == "compiled" and _ntt is None:
    raise ImportError("SUBSETKIT_BACKEND=compiled but the extension is unavailable")

BACKEND = "compiled" if _ntt is not None else "python"

_SMALL = 64


def mul_mod(a, b, p):
    """Exact convolution of coefficient lists a, b modulo the prime p."""
    if not a or not b:
        return []
    nmin = min(len(a), len(b))
    if nmin <= _SMALL:
        return fallback._mul_schoolbook(a, b, p)
    if _ntt is not None:
        out_len = len(a) + len(b) - 1
        size = 1
        while size < out_len:
            size <<= 1
        if size <= _ntt.MAX_LEN and nmin * (p - 1) * (p - 1) < _ntt.CRT_BOUND:
            return _ntt.conv(a, b, p)
    return fallback._mul_kronecker(a, b, p)


def mul_mod_backend(a, b, p, backend):
    """Force a specific backend; used by tests and the kernel benchmark."""
    if backend == "python":
        return fallback.mul_mod(a, b, p)
    if backend == "compiled":
        if _ntt is None:
            raise RuntimeError("compiled kernel unavailable")
        if not a or not b:
            return []
        return _ntt.conv(a, b, p)
    raise ValueError(f"unknown backend {backend!r}")
