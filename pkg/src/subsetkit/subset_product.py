"""Subset Product solvers.

The randomized pipeline filters non-divisors of the target, factors the
target, reduces to a simultaneous subset sum over exponent vectors, and
delegates to simul_decide.  The deterministic low-space variant sums the
multivariate coefficient identity over (F_q*)^k for several primes q.
A pseudo-prime-factor set (gcd-splitting recursion) supplies pairwise
coprime bases without genuine factoring where full factorization is not
needed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import BudgetExceeded
from .modmath import factorint, find_prime_in_interval
from .simulsum import SimulDecision, SimulInstance, simul_decide


@dataclass(frozen=True)
class ProductInstance:
    a: tuple[int, ...]
    t: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if any(ai < 1 for ai in self.a):
            raise ValueError("items must be positive")
        if self.t < 1:
            raise ValueError("target must be positive")

    @property
    def n(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class PseudoPrimeFactorization:
    """Pairwise-coprime base over which every input factors exactly."""

    base: tuple[int, ...]
    exponents: tuple[tuple[int, ...], ...]
    depth: int

    def reconstruct(self, row: int) -> int:
        out = 1
        for b, e in zip(self.base, self.exponents[row]):
            out *= b ** e
        return out


def factorize(m: int) -> dict[int, int]:
    """Prime factorization of m >= 1."""
    if m == 1:
        return {}
    return factorint(m)


def _strip(v: int, b: int) -> int:
    """v with every power of b removed (the a//b reduction)."""
    while v % b == 0:
        v //= b
    return v


def _dedupe(vals: list[int]) -> list[int]:
    seen: set[int] = set()
    out = []
    for v in vals:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def pseudo_prime_factor_set(inputs) -> PseudoPrimeFactorization:
    """Pairwise-coprime base for the inputs via gcd splitting.

    Each step either emits a base element coprime to everything left or
    replaces the worklist by a gcd refinement; the product of the
    worklist at least halves per step, bounding the depth by the total
    bit-length of the inputs.
    """
    inputs = [int(v) for v in inputs]
    if any(v < 1 for v in inputs):
        raise ValueError("inputs must be positive")
    work = _dedupe([v for v in inputs if v >= 2])
    base: list[int] = []
    depth = 0
    while work:
        depth += 1
        head = work[0]
        rest = _dedupe([w for w in (_strip(v, head) for v in work[1:]) if w > 1])
        g = next((math.gcd(head, v) for v in rest if math.gcd(head, v) > 1), None)
        if g is None:
            base.append(head)
            work = rest
        else:
            refined = [g] + [_strip(v, g) for v in [head] + rest]
            work = _dedupe([v for v in refined if v > 1])
    exps = []
    for v in inputs:
        row = []
        for b in base:
            e = 0
            while v % b == 0:
                v //= b
                e += 1
            row.append(e)
        if v != 1:
            raise ValueError(f"input does not factor over the computed base")
        exps.append(tuple(row))
    return PseudoPrimeFactorization(tuple(base), tuple(exps), depth)


@dataclass(frozen=True)
class ProductReduction:
    simul: SimulInstance
    base: tuple[int, ...]
    kept: tuple[int, ...]      # 1-based indices of surviving items
    dropped: tuple[int, ...]


def _exponent_rows(inst: ProductInstance, base: list[int], base_exp_of):
    """Kept/dropped split plus exponent rows over the given base."""
    kept, dropped, rows = [], [], []
    for idx, ai in enumerate(inst.a, start=1):
        if inst.t % ai != 0:
            dropped.append(idx)
            continue
        row = base_exp_of(ai)
        if row is None:
            dropped.append(idx)
            continue
        kept.append(idx)
        rows.append(tuple(row))
    return kept, dropped, rows


def reduce_to_simul(inst: ProductInstance) -> ProductReduction:
    """Exponent-vector reduction over a pseudo-prime-factor base."""
    divisors = [ai for ai in inst.a if inst.t % ai == 0]
    ppf = pseudo_prime_factor_set(divisors + [inst.t])
    base = list(ppf.base)

    def exp_of(v: int):
        row = []
        for b in base:
            e = 0
            while v % b == 0:
                v //= b
                e += 1
            row.append(e)
        return row if v == 1 else None

    kept, dropped, rows = _exponent_rows(inst, base, exp_of)
    targets = tuple(exp_of(inst.t)) if inst.t > 1 else ()
    if inst.t == 1:
        base = []
        rows = [() for _ in kept]
    simul = SimulInstance(tuple(rows), targets)
    return ProductReduction(simul, tuple(base), tuple(kept), tuple(dropped))


def product_decide(inst: ProductInstance, seed: int) -> SimulDecision:
    """Randomized decision over the exact prime factorization of t."""
    if inst.t == 1:
        return SimulDecision(True, None, None, seed)
    primes = sorted(factorize(inst.t))
    targets = tuple(factorize(inst.t)[p] for p in primes)

    def exp_of(v: int):
        row = []
        for p in primes:
            e = 0
            while v % p == 0:
                v //= p
                e += 1
            row.append(e)
        return row if v == 1 else None

    kept, dropped, rows = _exponent_rows(inst, primes, exp_of)
    if not rows:
        return SimulDecision(False, 0, None, seed)
    return simul_decide(SimulInstance(tuple(rows), targets), seed)


def kane_coeff_multivar(inst: SimulInstance, field) -> int:
    """coef at the target tuple of prod(1 + prod_j x_j^{a_ij}) mod p.

    Full sum (-1)^k sum over (F_q*)^k of f(x) * prod x_j^{q-1-t_j}.
    """
    q = field.p
    k = inst.k
    targets = inst.targets
    degs = [sum(r[j] for r in inst.rows) for j in range(k)]
    if any(q <= max(degs[j], targets[j]) + 1 for j in range(k)):
        raise ValueError("field too small for the coefficient identity")
    total = 0
    for point in itertools.product(range(1, q), repeat=k):
        weight = 1
        for j in range(k):
            weight = weight * pow(point[j], q - 1 - targets[j], q) % q
        fval = 1
        for row in inst.rows:
            mono = 1
            for j in range(k):
                if row[j]:
                    mono = mono * pow(point[j], row[j], q) % q
            fval = fval * (1 + mono) % q
        total = (total + weight * fval) % q
    if k % 2 == 1:
        total = (-total) % q
    return total


@dataclass(frozen=True)
class LowspaceDecision:
    yes: bool
    primes_tried: tuple[int, ...]


def product_decide_lowspace(inst: ProductInstance,
                            budget: int = 80_000_000) -> LowspaceDecision:
    """Deterministic decision by coefficient sums over successive primes.

    Exponents of each surviving item are recomputed by repeated division
    at every use; no exponent matrix is stored.  The true coefficient is
    at most 2^n, so it cannot vanish modulo n+1 distinct primes > N
    unless it is zero.
    """
    if inst.t == 1:
        return LowspaceDecision(True, ())
    n = inst.n
    primes_t = sorted(factorize(inst.t))
    k = len(primes_t)
    N = max(math.ceil(n * math.log2(max(inst.t, 2))), 2)

    def exps_of(v: int):
        # recomputed on demand; returns None when v leaves t's support
        row = []
        for p in primes_t:
            e = 0
            while v % p == 0:
                v //= p
                e += 1
            row.append(e)
        return row if v == 1 else None

    targets = exps_of(inst.t)
    survivors = [ai for ai in inst.a if inst.t % ai == 0 and exps_of(ai) is not None]
    if not survivors:
        return LowspaceDecision(False, ())
    # identity needs q-1 strictly above every individual degree and target
    maxdeg = max(
        sum(exps_of(ai)[j] for ai in survivors) for j in range(k)
    )
    N = max(N, maxdeg + 1, max(targets) + 1)
    # upfront work estimate: (q-1)^k points, ~n*k pow/div ops per point
    qs: list[int] = []
    q = find_prime_in_interval(N + 1)
    work = 0
    for _ in range(n + 1):
        work += (q - 1) ** k * max(1, len(survivors)) * max(1, k)
        qs.append(q)
        q = find_prime_in_interval(q + 1)
    if work > budget:
        raise BudgetExceeded("low-space sum over (q-1)^k points exceeds budget")
    tried = []
    for q in qs:
        tried.append(q)
        total = 0
        for point in itertools.product(range(1, q), repeat=k):
            weight = 1
            for j in range(k):
                tj = 0
                rest = inst.t
                while rest % primes_t[j] == 0:
                    rest //= primes_t[j]
                    tj += 1
                weight = weight * pow(point[j], q - 1 - tj, q) % q
            fval = 1
            for ai in survivors:
                mono = 1
                rest = ai
                for j in range(k):
                    e = 0
                    while rest % primes_t[j] == 0:
                        rest //= primes_t[j]
                        e += 1
                    if e:
                        mono = mono * pow(point[j], e, q) % q
                fval = fval * (1 + mono) % q
            total = (total + weight * fval) % q
        if k % 2 == 1:
            total = (-total) % q
        if total != 0:
            return LowspaceDecision(True, tuple(tried))
    return LowspaceDecision(False, tuple(tried))
