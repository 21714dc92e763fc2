"""Instance transformers between the Subset Sum problem variants.

Covers isolation (many instances, one likely unique-solution member),
the two-way bridge between plain and simultaneous subset sum, the
binary-expansion reduction from unbounded to bounded instances, and
unbounded hamming-weight recovery via series inversion.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import VerificationError
from .modmath import (
    ModPoly,
    PrimeField,
    find_prime_in_interval,
    find_primitive_root,
    poly_divrem_linear,
)
from .series import (
    ProductSpec,
    log_product_coeffs,
    newton_E_from_P,
    series_exp,
    series_inverse,
)
from .simulsum import SimulInstance
from .solution_enum import SolutionSet, enumerate_solutions
from .ssum_hamming import SsumInstance, WeightProfile


@dataclass(frozen=True)
class UbssumInstance:
    a: tuple[int, ...]
    t: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if any(ai < 1 for ai in self.a):
            raise ValueError("unbounded items must be >= 1")
        if self.t < 0:
            raise ValueError("target must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class IsolationBatch:
    b: tuple[int, ...]
    targets: tuple[int, ...]
    w: tuple[int, ...]
    seed: int

    def instances(self) -> list[SsumInstance]:
        return [SsumInstance(self.b, t) for t in self.targets]


def isolate_to_unique(inst: SsumInstance, seed: int) -> IsolationBatch:
    """Randomized batch of 2n^2 instances, one likely uniquely solvable.

    b_i = 4n^2 a_i + w_i with w_i drawn from [1, 2n]; target ell picks
    out the solutions of total weight ell, which is unique for some ell
    with probability >= 1/2.
    """
    n = inst.n
    rng = random.Random(seed)
    w = tuple(rng.randint(1, 2 * n) for _ in range(n))
    scale = 4 * n * n
    b = tuple(scale * ai + wi for ai, wi in zip(inst.a, w))
    targets = tuple(scale * inst.t + ell for ell in range(1, 2 * n * n + 1))
    return IsolationBatch(b, targets, w, seed)


def ssum_to_simul2(inst: SsumInstance) -> tuple[SimulInstance, SimulInstance]:
    """Two k=2 systems pinning whether item 1 participates."""
    rows = tuple(
        (ai, 1 if i == 0 else 0) for i, ai in enumerate(inst.a)
    )
    s0 = SimulInstance(rows, (inst.t, 0))
    s1 = SimulInstance(rows, (inst.t, 1))
    return s0, s1


def ssum_to_simul_pinned(inst: SsumInstance, k: int | None = None) -> list[SimulInstance]:
    """Pin the first k items across 2^k systems (k defaults to ceil(log2 n))."""
    n = inst.n
    if k is None:
        k = max(1, math.ceil(math.log2(max(n, 2))))
    k = min(k, n)
    if k > 20:
        raise ValueError("pinning more than 20 items is not supported")
    out = []
    for mask in range(2 ** k):
        rows = []
        for i, ai in enumerate(inst.a):
            pin = tuple(1 if i == j else 0 for j in range(k))
            rows.append((ai,) + pin)
        bits = tuple((mask >> j) & 1 for j in range(k))
        out.append(SimulInstance(tuple(rows), (inst.t,) + bits))
    return out


_CANONICAL_NO = SsumInstance((2,), 1)
_CANONICAL_YES = SsumInstance((1,), 1)


def simul2_to_ssum(sys: SimulInstance) -> SsumInstance:
    """Collapse a k=2 system into one Subset Sum instance."""
    if sys.k != 2:
        raise ValueError("expected a k=2 system")
    t1, t2 = sys.targets
    if t1 == 0 and t2 == 0:
        return _CANONICAL_YES  # the empty set already solves the system
    if t1 > t2:
        a = [r[1] for r in sys.rows]
        b = [r[0] for r in sys.rows]
        t1, t2 = t2, t1
    else:
        a = [r[0] for r in sys.rows]
        b = [r[1] for r in sys.rows]
    if t1 > sum(a):
        return _CANONICAL_NO
    gamma = 1 + sum(a)
    items = tuple(gamma * bi + ai for ai, bi in zip(a, b))
    return SsumInstance(items, gamma * t2 + t1)


def ubssum_to_ssum(inst: UbssumInstance) -> SsumInstance:
    """Binary-expansion reduction; count-preserving bijection on solutions.

    Item (i, j) at position (i-1)*(gamma+1)+j carries value a_i * 2^j.
    """
    if inst.t < 1:
        raise ValueError("reduction defined for t >= 1")
    gamma = inst.t.bit_length() - 1  # floor(log2 t)
    items = tuple(
        ai << j for ai in inst.a for j in range(gamma + 1)
    )
    return SsumInstance(items, inst.t)


def _ubssum_coef(inst: UbssumInstance, c: int, field: PrimeField) -> int:
    """coef_{x^t} of prod (1 - c x^{a_i})^{-1} over the field."""
    t = inst.t
    spec = ProductSpec(a=inst.a, W=c, b=1, sign=-1)
    h = series_exp(log_product_coeffs(spec, t, field), t)
    return series_inverse(h, t).coef(t)


def ubssum_hamming_weights(inst: UbssumInstance, cap: int) -> WeightProfile:
    """Distinct total multiplicities Sum(beta_i) over all solutions."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if inst.t == 0:
        return WeightProfile(((0, 1),))  # only the all-zero assignment
    t = inst.t
    # weights can reach t (all-ones item), so roots range over mu^1..mu^t
    lo = max(25, inst.n + cap + 2 * t)
    field = PrimeField(find_prime_in_interval(lo))
    p = field.p
    m = _ubssum_coef(inst, 1, field)
    if m == 0:
        return WeightProfile(())
    mu = find_primitive_root(p)
    P = [
        _ubssum_coef(inst, pow(mu, j, p), field)
        for j in range(1, m + 1)
    ]
    E = newton_E_from_P(P, m, field)
    coeffs = [0] * (m + 1)
    coeffs[m] = 1
    for j in range(1, m + 1):
        coeffs[m - j] = E[j - 1] if j % 2 == 0 else (-E[j - 1]) % p
    g = ModPoly(field, coeffs)
    entries = []
    remaining = m
    for wgt in range(1, t + 1):
        root = pow(mu, wgt, p)
        lam = 0
        cur = g
        while cur.degree > 0:
            quo, rem = poly_divrem_linear(cur, root)
            if rem != 0:
                break
            lam += 1
            cur = quo
        if lam:
            entries.append((wgt, lam))
            g = cur
            remaining -= lam
        if remaining == 0:
            break
    if remaining != 0:
        raise VerificationError("unbounded weight multiplicities inconsistent")
    return WeightProfile(tuple(entries))


def ubssum_enumerate(inst: UbssumInstance, cap: int) -> tuple[tuple[int, ...], ...]:
    """All multiplicity vectors beta with sum beta_i * a_i = t."""
    if inst.t == 0:
        return ((0,) * inst.n,)
    reduced = ubssum_to_ssum(inst)
    gamma = inst.t.bit_length() - 1
    sols: SolutionSet = enumerate_solutions(reduced, cap)
    out = []
    for S in sols.sets:
        beta = [0] * inst.n
        for pos in S:
            i, j = divmod(pos - 1, gamma + 1)
            beta[i] += 1 << j
        if sum(b * ai for b, ai in zip(beta, inst.a)) != inst.t:
            raise VerificationError("recombined multiplicity vector is invalid")
        out.append(tuple(beta))
    out = sorted(set(out))
    if len(out) != len(sols.sets):
        raise VerificationError("bit recombination produced duplicate solutions")
    return tuple(out)
