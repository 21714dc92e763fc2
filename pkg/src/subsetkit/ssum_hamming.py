"""Exact counting and hamming-weight recovery for promise Subset Sum.

Given an instance with at most `cap` realisable sets, the solver counts
them exactly over a single large prime field, then recovers the distinct
solution sizes (and their multiplicities) from power sums of mu^{|S|}
via the Newton/Vieta pipeline: coefficient extraction at several powers
of a primitive root, elementary symmetric recovery, and root testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import VerificationError
from .modmath import (
    ModPoly,
    PrimeField,
    find_prime_in_interval,
    find_primitive_root,
    poly_divrem_linear,
)
from .series import ProductSpec, log_product_coeffs, newton_E_from_P, series_exp


@dataclass(frozen=True)
class SsumInstance:
    a: tuple[int, ...]
    t: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if any(ai < 0 for ai in self.a):
            raise ValueError("items must be nonnegative")
        if self.t < 0:
            raise ValueError("target must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class WeightProfile:
    """Distinct solution hamming weights with multiplicities, weight-sorted."""

    entries: tuple[tuple[int, int], ...]

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.entries)

    @property
    def total(self) -> int:
        return sum(lam for _, lam in self.entries)


def _split(inst: SsumInstance) -> tuple[list[int], int]:
    """Items that can participate (1 <= a_i <= t) and the count of zeros."""
    eff = [ai for ai in inst.a if 1 <= ai <= inst.t]
    zeros = sum(1 for ai in inst.a if ai == 0)
    return eff, zeros


def _field_for(inst: SsumInstance, cap: int) -> PrimeField:
    # q > n + cap + t makes every count and weight residue exact, and
    # q - 1 > n leaves room for the weight roots mu^1..mu^n.
    lo = max(25, inst.n + cap + inst.t)
    return PrimeField(find_prime_in_interval(lo))


def _coef_t(eff: list[int], t: int, c: int, field: PrimeField) -> int:
    """coef_{x^t} of prod (1 + c*x^{a_i}) over the field, t >= 1."""
    if not eff:
        return 0
    spec = ProductSpec(a=tuple(eff), W=c, b=1)
    g = series_exp(log_product_coeffs(spec, t, field), t)
    return g.coef(t)


def count_solutions_mod(inst: SsumInstance, cap: int) -> int:
    """Exact number of realisable sets, assuming it is at most cap."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    eff, zeros = _split(inst)
    if inst.t == 0:
        # solutions are exactly the subsets of zero-valued items
        return 2 ** zeros
    field = _field_for(inst, cap)
    m = _coef_t(eff, inst.t, 1, field) * pow(2, zeros, field.p) % field.p
    return m


def _profile(inst: SsumInstance, cap: int) -> WeightProfile:
    eff, zeros = _split(inst)
    if inst.t == 0:
        entries = tuple((w, math.comb(zeros, w)) for w in range(zeros + 1))
        return WeightProfile(entries)
    field = _field_for(inst, cap)
    p = field.p
    m = _coef_t(eff, inst.t, 1, field) * pow(2, zeros, p) % p
    if m == 0:
        return WeightProfile(())
    mu = find_primitive_root(p)
    # P_j = sum over solutions S of mu^{j*|S|}: the x^t coefficient of
    # prod(1 + mu^j x^{a_i}) times the constant factor (1+mu^j)^zeros.
    P = []
    for j in range(1, m + 1):
        c = pow(mu, j, p)
        cj = _coef_t(eff, inst.t, c, field) * pow(1 + c, zeros, p) % p
        P.append(cj)
    E = newton_E_from_P(P, m, field)
    # monic polynomial with the solution-weight roots:
    # g(x) = sum_{j=0}^{m} (-1)^j E_j x^{m-j} = prod (x - mu^{w_i})^{lam_i}
    coeffs = [0] * (m + 1)
    coeffs[m] = 1
    for j in range(1, m + 1):
        coeffs[m - j] = E[j - 1] if j % 2 == 0 else (-E[j - 1]) % p
    g = ModPoly(field, coeffs)
    entries = []
    remaining = m
    for w in range(1, inst.n + 1):
        root = pow(mu, w, p)
        lam = 0
        cur = g
        while cur.degree > 0:
            quo, rem = poly_divrem_linear(cur, root)
            if rem != 0:
                break
            lam += 1
            cur = quo
        if lam:
            entries.append((w, lam))
            g = cur
            remaining -= lam
        if remaining == 0:
            break
    if remaining != 0:
        raise VerificationError(
            "weight multiplicities do not add up to the solution count"
        )
    return WeightProfile(tuple(entries))


def hamming_weights(inst: SsumInstance, cap: int) -> tuple[int, ...]:
    """Distinct hamming weights over all realisable sets, increasing."""
    return _profile(inst, cap).weights


def weight_multiplicities(inst: SsumInstance, cap: int) -> WeightProfile:
    """Full (weight, multiplicity) profile over all realisable sets."""
    return _profile(inst, cap)
