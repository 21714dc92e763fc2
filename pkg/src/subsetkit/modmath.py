"""Prime-field scalars and dense polynomials over an arbitrary prime modulus.

Provides deterministic primality testing, prime search, primitive roots,
integer factorization, and ModPoly with fast multiplication (delegated to
the convolution kernel) and linear synthetic division.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from . import _kernel

# Sound for every integer below 3.3 * 10^24, which covers 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def find_prime_in_interval(lo: int) -> int:
    """Smallest prime >= lo; for lo >= 25 it lies below (6/5)*lo."""
    if lo <= 2:
        return 2
    n = lo | 1
    while not is_prime(n):
        n += 2
    return n


def _brent_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int) -> dict[int, int]:
    """Prime factorization {p: e} by trial division plus Brent's rho."""
    if n < 1:
        raise ValueError("factorint requires a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 7
    # wheel over residues coprime to 30
    incs = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 10000:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += incs[i]
        i = (i + 1) % 8
    if n == 1:
        return out
    rng = random.Random(0x5EED)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        g = _brent_rho(m, rng)
        stack.append(g)
        stack.append(m // g)
    return out


def find_primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod the prime p."""
    if p == 2:
        return 1
    order = p - 1
    prime_divs = list(factorint(order))
    g = 2
    while True:
        if all(pow(g, order // ell, p) != 1 for ell in prime_divs):
            return g
        g += 1


def batch_inverses(n: int, p: int) -> list[int]:
    """inv[i] = i^{-1} mod p for 1 <= i <= min(n, p-1); inv[0] unused."""
    n = min(n, p - 1)
    inv = [0] * (n + 1)
    if n >= 1:
        inv[1] = 1
    for i in range(2, n + 1):
        inv[i] = (p - (p // i) * inv[p % i]) % p
    return inv


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, x: int) -> int:
        return pow(x, self.p - 2, self.p)


@dataclass
class ModPoly:
    """Dense polynomial over a prime field; coeffs[i] is the x^i coefficient."""

    field: PrimeField
    coeffs: list[int] = dc_field(default_factory=list)

    def __post_init__(self):
        p = self.field.p
        self.coeffs = [c % p for c in self.coeffs]

    @property
    def degree(self) -> int:
        """Logical degree; -1 for the zero polynomial."""
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def coef(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def trimmed(self) -> list[int]:
        d = self.degree
        return self.coeffs[: d + 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModPoly):
            return NotImplemented
        return self.field.p == other.field.p and self.trimmed() == other.trimmed()

    def evaluate(self, x: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc


def poly_mul_mod(f: ModPoly, g: ModPoly, trunc: int | None = None) -> ModPoly:
    """Exact product over the common field, truncated to degree < trunc."""
    if f.field.p != g.field.p:
        raise ValueError("field mismatch")
    out = _kernel.mul_mod(f.coeffs, g.coeffs, f.field.p)
    if trunc is not None:
        out = out[:trunc]
    return ModPoly(f.field, out)


def poly_divrem_linear(f: ModPoly, root: int) -> tuple[ModPoly, int]:
    """Divide f by (x - root): returns (quotient, remainder = f(root))."""
    p = f.field.p
    cs = f.coeffs
    if not cs:
        return ModPoly(f.field, []), 0
    q = [0] * (len(cs) - 1)
    acc = 0
    for i in range(len(cs) - 1, 0, -1):
        acc = (acc * root + cs[i]) % p
        q[i - 1] = acc
    rem = (acc * root + cs[0]) % p
    return ModPoly(f.field, q), rem
