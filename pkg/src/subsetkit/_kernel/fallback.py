"""Pure-Python convolution over Z/pZ.

Large products go through Kronecker substitution: coefficients are packed
into fixed-width limbs of one big integer and multiplied with gmpy2, which
is exact for any modulus because the limb width is chosen so that no
convolution sum can overflow its limb.
"""

import gmpy2

_SCHOOLBOOK_CUTOFF = 64


def _mul_schoolbook(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return [c % p for c in out]


def _mul_kronecker(a, b, p):
    # Largest possible convolution entry: min(len) terms of (p-1)^2 each.
    bound = min(len(a), len(b)) * (p - 1) * (p - 1)
    limb = (bound.bit_length() + 8) // 8  # bytes, with one spare bit minimum
    abytes = b"".join(c.to_bytes(limb, "little") for c in a)
    bbytes = b"".join(c.to_bytes(limb, "little") for c in b)
    prod = int(gmpy2.mpz(int.from_bytes(abytes, "little"))
               * gmpy2.mpz(int.from_bytes(bbytes, "little")))
    out_len = len(a) + len(b) - 1
    raw = prod.to_bytes(limb * (out_len + 1), "little")
    return [
        int.from_bytes(raw[k * limb:(k + 1) * limb], "little") % p
        for k in range(out_len)
    ]


def mul_mod(a, b, p):
    """Exact convolution of coefficient lists a, b modulo p."""
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _SCHOOLBOOK_CUTOFF:
        return _mul_schoolbook(a, b, p)
    return _mul_kronecker(a, b, p)
