# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Number-theoretic transform convolution kernel.

Convolves modulo three NTT-friendly primes and recombines with the
Chinese Remainder Theorem, which is exact while the true convolution
entries stay below the product of the three primes (about 2^88).
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64

# primes of the form c*2^e + 1 with primitive root 3
cdef u64 P1 = 998244353      # 119 * 2^23 + 1
cdef u64 P2 = 1004535809     # 479 * 2^21 + 1
cdef u64 P3 = 469762049      # 7 * 2^26 + 1
cdef u64 GROOT = 3

MAX_LEN = 1 << 21            # smallest two-adicity among the primes
CRT_BOUND = int(P1) * int(P2) * int(P3)

cdef inline u64 mulmod(u64 a, u64 b, u64 m) noexcept nogil:
    return <u64>((<u128>a * b) % m)

cdef u64 powmod(u64 base, u64 e, u64 m) noexcept nogil:
    cdef u64 r = 1 % m
    base %= m
    while e:
        if e & 1:
            r = mulmod(r, base, m)
        base = mulmod(base, base, m)
        e >>= 1
    return r

cdef void _ntt(u64 *a, Py_ssize_t n, u64 mod, bint invert) noexcept nogil:
    cdef Py_ssize_t i, j, bit, length, half, k
    cdef u64 w, wlen, u, v, inv_n
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            u = a[i]; a[i] = a[j]; a[j] = u
    length = 2
    while length <= n:
        wlen = powmod(GROOT, (mod - 1) // length, mod)
        if invert:
            wlen = powmod(wlen, mod - 2, mod)
        half = length >> 1
        i = 0
        while i < n:
            w = 1
            for k in range(half):
                u = a[i + k]
                v = mulmod(a[i + k + half], w, mod)
                a[i + k] = u + v if u + v < mod else u + v - mod
                a[i + k + half] = u - v + mod if u < v else u - v
                w = mulmod(w, wlen, mod)
            i += length
        length <<= 1
    if invert:
        inv_n = powmod(<u64>n, mod - 2, mod)
        for i in range(n):
            a[i] = mulmod(a[i], inv_n, mod)

cdef int _conv_one(list a, list b, u64 mod, u64 *out,
                   Py_ssize_t na, Py_ssize_t nb, Py_ssize_t size) except -1:
    cdef u64 *fa = <u64 *>malloc(size * sizeof(u64))
    cdef u64 *fb = <u64 *>malloc(size * sizeof(u64))
    cdef Py_ssize_t i
    if fa == NULL or fb == NULL:
        if fa != NULL: free(fa)
        if fb != NULL: free(fb)
        raise MemoryError()
    for i in range(na):
        fa[i] = <u64>a[i] % mod
    for i in range(na, size):
        fa[i] = 0
    for i in range(nb):
        fb[i] = <u64>b[i] % mod
    for i in range(nb, size):
        fb[i] = 0
    with nogil:
        _ntt(fa, size, mod, 0)
        _ntt(fb, size, mod, 0)
        for i in range(size):
            fa[i] = mulmod(fa[i], fb[i], mod)
        _ntt(fa, size, mod, 1)
    for i in range(size):
        out[i] = fa[i]
    free(fa)
    free(fb)
    return 0

def conv(list a, list b, p):
    """Convolution of coefficient lists modulo p (entries must be < p)."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t out_len, size, i
    cdef u64 pp, inv_p1_p2, inv_p12_p3, p1p2
    cdef u64 v1, v2, v3, k2, k3, mid, acc
    cdef u64 *r1
    cdef u64 *r2
    cdef u64 *r3
    if na == 0 or nb == 0:
        return []
    out_len = na + nb - 1
    size = 1
    while size < out_len:
        size <<= 1
    if size > MAX_LEN:
        raise ValueError("transform length too large for NTT primes")
    pp = <u64>p
    r1 = <u64 *>malloc(size * sizeof(u64))
    r2 = <u64 *>malloc(size * sizeof(u64))
    r3 = <u64 *>malloc(size * sizeof(u64))
    if r1 == NULL or r2 == NULL or r3 == NULL:
        if r1 != NULL: free(r1)
        if r2 != NULL: free(r2)
        if r3 != NULL: free(r3)
        raise MemoryError()
    try:
        _conv_one(a, b, P1, r1, na, nb, size)
        _conv_one(a, b, P2, r2, na, nb, size)
        _conv_one(a, b, P3, r3, na, nb, size)
        # Garner recombination: x = v1 + P1*k2 + P1*P2*k3, reduced mod p.
        inv_p1_p2 = powmod(P1 % P2, P2 - 2, P2)
        inv_p12_p3 = powmod(mulmod(P1 % P3, P2 % P3, P3), P3 - 2, P3)
        p1p2 = mulmod(P1 % pp, P2 % pp, pp)
        out = [0] * out_len
        for i in range(out_len):
            v1 = r1[i]; v2 = r2[i]; v3 = r3[i]
            k2 = mulmod((v2 + P2 - v1 % P2) % P2, inv_p1_p2, P2)
            mid = (v1 % P3 + mulmod(P1 % P3, k2, P3)) % P3
            k3 = mulmod((v3 + P3 - mid) % P3, inv_p12_p3, P3)
            acc = (v1 % pp + mulmod(P1 % pp, k2, pp)) % pp
            acc = (acc + mulmod(p1p2, k3, pp)) % pp
            out[i] = acc
        return out
    finally:
        free(r1)
        free(r2)
        free(r3)
