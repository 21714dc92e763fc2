"""Truncated power series over a prime field.

Covers the logarithm of products of the form prod_i (1 +- W^b x^{a_i}),
series exp and inverse, and recovery of elementary symmetric polynomials
from power sums.  Exp and the Newton recurrence share one divide-and-
conquer engine for the ratio recurrence u_i = i^{-1} sum c_{i-j} u_j.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import _kernel
from .modmath import ModPoly, PrimeField, batch_inverses

_DC_CUTOFF = 32


@dataclass(frozen=True)
class ProductSpec:
    """Product prod_i (1 + sign * W^b * x^{a_i})."""

    a: tuple[int, ...]
    W: int = 1
    b: int = 0
    sign: int = 1

    def __post_init__(self):
        if not self.a:
            raise ValueError("empty exponent sequence")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.b < 0:
            raise ValueError("b must be nonnegative")
        if any(ai < 0 for ai in self.a):
            raise ValueError("exponents must be nonnegative")


def log_product_coeffs(spec: ProductSpec, t: int, field: PrimeField) -> ModPoly:
    """Coefficients of ln prod (1 + sign*W^b x^{a_i}) up to degree t.

    Zero exponents would contribute a constant factor; they are skipped
    here and must be handled multiplicatively by the caller.
    """
    p = field.p
    if p <= t:
        raise ValueError("field too small: need p > t for inverses")
    inv = batch_inverses(t, p)
    scale = pow(spec.W % p, spec.b, p)
    out = [0] * (t + 1)
    counts = Counter(ai for ai in spec.a if 1 <= ai <= t)
    for val, cnt in counts.items():
        cnt %= p
        wpow = scale
        for j in range(1, t // val + 1):
            # ln(1+u) = sum (-1)^{j-1} u^j / j ; ln(1-u) = -sum u^j / j
            term = cnt * wpow % p * inv[j] % p
            if spec.sign < 0 or j % 2 == 0:
                term = (-term) % p
            idx = j * val
            out[idx] = (out[idx] + term) % p
            wpow = wpow * scale % p
    return ModPoly(field, out)


def _ratio_recurrence(c: list[int], m: int, field: PrimeField) -> list[int]:
    """u_0 = 1, u_i = i^{-1} * sum_{j<i} c[i-j]*u[j] mod p, for i <= m."""
    p = field.p
    if p <= m:
        raise ValueError("field too small: need p > recurrence length")
    inv = batch_inverses(m, p)
    u = [0] * (m + 1)
    u[0] = 1
    acc = [c[i] % p if i < len(c) else 0 for i in range(m + 1)]
    cc = [c[i] % p if i < len(c) else 0 for i in range(m + 1)]

    def compute(lo: int, hi: int) -> None:
        if hi - lo < _DC_CUTOFF:
            for i in range(lo, hi + 1):
                u[i] = acc[i] * inv[i] % p
                ui = u[i]
                if ui:
                    for i2 in range(i + 1, hi + 1):
                        acc[i2] = (acc[i2] + cc[i2 - i] * ui) % p
            return
        mid = (lo + hi) // 2
        compute(lo, mid)
        prod = _kernel.mul_mod(cc[1: hi - lo + 1], u[lo: mid + 1], p)
        for i in range(mid + 1, hi + 1):
            acc[i] = (acc[i] + prod[i - lo - 1]) % p
        compute(mid + 1, hi)

    if m >= 1:
        compute(1, m)
    return u


# beyond this degree the ratio-recurrence tree's extra log factor costs
# more than Newton iteration's constant; both paths are exact
_EXP_NEWTON_MIN = 4096


def series_exp(f: ModPoly, t: int) -> ModPoly:
    """exp(f) truncated to degree t; f must have zero constant term."""
    if f.coef(0) != 0:
        raise ValueError("series_exp requires zero constant term")
    p = f.field.p
    if t < _EXP_NEWTON_MIN:
        c = [d * f.coef(d) % p for d in range(t + 1)]
        return ModPoly(f.field, _ratio_recurrence(c, t, f.field))
    # Newton iteration g <- g*(1 + f - ln g) with the inverse h = g^{-1}
    # carried along incrementally (one correction step per doubling)
    inv = batch_inverses(t, p)
    fc = list(f.coeffs[: t + 1]) + [0] * (t + 1 - len(f.coeffs))
    g = [1]
    h = [1]
    prec = 1
    while prec <= t:
        prec = min(2 * prec, t + 1)
        # refine h to the new precision: h <- h*(2 - g*h); one step
        # suffices because the last g-update only changed coefficients
        # above the precision h already covers
        gh = _kernel.mul_mod(g, h, p)[:prec]
        gh[0] = (gh[0] - 2) % p
        h = [(-x) % p for x in _kernel.mul_mod(h, gh, p)[:prec]]
        # ln g = integral of g'/g at the new precision
        dg = [i * gi % p for i, gi in enumerate(g)][1:]
        ratio = _kernel.mul_mod(dg, h, p)[: prec - 1] if dg else []
        ratio += [0] * (prec - 1 - len(ratio))
        delta = [1] + [
            (fc[i] - ratio[i - 1] * inv[i]) % p for i in range(1, prec)
        ]
        g = _kernel.mul_mod(g, delta, p)[:prec]
    return ModPoly(f.field, g[: t + 1])


def series_inverse(f: ModPoly, t: int) -> ModPoly:
    """g with f*g = 1 mod x^{t+1}, by Newton iteration."""
    p = f.field.p
    f0 = f.coef(0)
    if f0 == 0:
        raise ValueError("constant term not invertible")
    g = [pow(f0, p - 2, p)]
    prec = 1
    while prec <= t:
        prec = min(2 * prec, t + 1)
        fg = _kernel.mul_mod(f.coeffs[:prec], g, p)[:prec]
        fg[0] = (fg[0] - 2) % p
        g = [(-x) % p for x in _kernel.mul_mod(g, fg, p)[:prec]]
    return ModPoly(f.field, g[: t + 1])


def newton_E_from_P(P: list[int], m: int, field: PrimeField) -> list[int]:
    """Elementary symmetric E_1..E_m from power sums P_1..P_m.

    Solves j*E_j = sum_{i=1}^{j} (-1)^{i-1} E_{j-i} P_i over the field.
    """
    p = field.p
    c = [0] * (m + 1)
    for d in range(1, m + 1):
        c[d] = P[d - 1] % p if d % 2 == 1 else (-P[d - 1]) % p
    return _ratio_recurrence(c, m, field)[1:]
