"""Ground-truth solvers: brute force and dynamic programming.

These exist to validate the algebraic solvers, so they favor obviousness
over speed and refuse (with BudgetExceeded) rather than degrade.
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded
from .modmath import factorint
from .ssum_hamming import SsumInstance

DEFAULT_BUDGET = 50_000_000


def _check_solution_budget(count: int, limit: int = 1_000_000) -> None:
    if count > limit:
        raise BudgetExceeded(f"solution count {count} exceeds {limit}")


def brute_force_enumerate(inst: SsumInstance) -> list[tuple[int, ...]]:
    """All realisable sets (1-based, sorted), by recursive subset scan."""
    if inst.n > 24:
        raise BudgetExceeded("brute force limited to n <= 24")
    a = inst.a
    n = inst.n
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + a[i]
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(i: int, rem: int) -> None:
        if rem < 0 or rem > suffix[i]:
            return
        if i == n:
            if rem == 0:
                out.append(tuple(chosen))
            return
        rec(i + 1, rem)
        chosen.append(i + 1)
        rec(i + 1, rem - a[i])
        chosen.pop()

    rec(0, inst.t)
    return sorted(out)


def dp_enumerate(inst: SsumInstance, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All realisable sets via Bellman's table plus DFS over the solution DAG."""
    n, t, a = inst.n, inst.t, inst.a
    if (n + 1) * (t + 1) > budget:
        raise BudgetExceeded("DP table exceeds budget")
    # feasible[i][r]: some subset of the first i items sums to r
    feasible = np.zeros((n + 1, t + 1), dtype=bool)
    feasible[0, 0] = True
    for i in range(1, n + 1):
        feasible[i] = feasible[i - 1]
        ai = a[i - 1]
        if ai <= t:
            feasible[i, ai:] |= feasible[i - 1, : t + 1 - ai]
    if not feasible[n, t]:
        return []
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def rec(i: int, rem: int) -> None:
        if i == 0:
            out.append(tuple(reversed(chosen)))
            _check_solution_budget(len(out))
            return
        ai = a[i - 1]
        if feasible[i - 1, rem]:
            rec(i - 1, rem)
        if ai <= rem and feasible[i - 1, rem - ai]:
            chosen.append(i)
            rec(i - 1, rem - ai)
            chosen.pop()

    rec(n, t)
    return sorted(out)


def dp_simul_decide(inst, budget: int = DEFAULT_BUDGET) -> bool:
    """Exact decision for simultaneous subset sum by a k-dimensional table."""
    rows = [tuple(r) for r in inst.rows]
    targets = tuple(inst.targets)
    shape = tuple(tj + 1 for tj in targets)
    cells = 1
    for s in shape:
        cells *= s
    if cells * max(1, len(rows)) > budget:
        raise BudgetExceeded("DP table exceeds budget")
    reach = np.zeros(shape, dtype=bool)
    reach[(0,) * len(targets)] = True
    for row in rows:
        if any(row[j] > targets[j] for j in range(len(targets))):
            continue  # can never be taken
        src = tuple(slice(0, shape[j] - row[j]) for j in range(len(targets)))
        dst = tuple(slice(row[j], shape[j]) for j in range(len(targets)))
        reach[dst] |= reach[src]
    return bool(reach[targets])


def dp_product_decide(inst, budget: int = DEFAULT_BUDGET) -> bool:
    """Exact subset-product decision over the exponent space of t's primes."""
    from .simulsum import SimulInstance

    if inst.t == 1:
        return True
    primes = sorted(factorint(inst.t))
    targets = tuple(factorint(inst.t)[p] for p in primes)
    rows = []
    for ai in inst.a:
        if inst.t % ai != 0:
            continue
        row = []
        rest = ai
        for p in primes:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            row.append(e)
        if rest != 1:
            continue  # ai has a prime outside t's support
        rows.append(tuple(row))
    if not rows:
        return False
    return dp_simul_decide(SimulInstance(tuple(rows), targets), budget)
