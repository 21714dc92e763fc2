"""The ground-truth solvers agree with each other and with direct scans."""

import itertools
import random

import pytest

from subsetkit.errors import BudgetExceeded
from subsetkit.oracles import (
    brute_force_enumerate,
    dp_enumerate,
    dp_product_decide,
    dp_simul_decide,
)
from subsetkit.simulsum import SimulInstance
from subsetkit.ssum_hamming import SsumInstance
from subsetkit.subset_product import ProductInstance


def test_brute_force_examples():
    assert brute_force_enumerate(SsumInstance((3, 1, 2), 3)) == [(1,), (2, 3)]
    assert brute_force_enumerate(SsumInstance((), 0)) == [()]
    assert brute_force_enumerate(SsumInstance((1,), 2)) == []


def test_dp_enumerate_matches_brute_force():
    rng = random.Random(1)
    for _ in range(150):
        n = rng.randint(0, 10)
        t = rng.randint(0, 40)
        inst = SsumInstance(tuple(rng.randint(0, t + 5) for _ in range(n)), t)
        assert dp_enumerate(inst) == brute_force_enumerate(inst)


def test_brute_force_size_guard():
    with pytest.raises(BudgetExceeded):
        brute_force_enumerate(SsumInstance((1,) * 25, 3))


def test_dp_enumerate_budget_guard():
    with pytest.raises(BudgetExceeded):
        dp_enumerate(SsumInstance((1,), 10**9), budget=1000)


def test_dp_simul_examples():
    assert dp_simul_decide(SimulInstance(((1, 2), (2, 1)), (3, 3))) is True
    assert dp_simul_decide(SimulInstance(((1, 2), (2, 1)), (1, 1))) is False
    assert dp_simul_decide(SimulInstance(((4, 5),), (4, 5))) is True


def test_dp_simul_matches_subset_scan():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(1, 10)
        k = rng.randint(1, 3)
        rows = tuple(tuple(rng.randint(0, 5) for _ in range(k)) for _ in range(n))
        targets = tuple(rng.randint(0, 6) for _ in range(k))
        want = any(
            all(
                sum(rows[i][j] for i in range(n) if mask >> i & 1) == targets[j]
                for j in range(k)
            )
            for mask in range(2 ** n)
        )
        assert dp_simul_decide(SimulInstance(rows, targets)) == want


def test_dp_product_examples():
    assert dp_product_decide(ProductInstance((2, 3, 6, 5), 30)) is True
    assert dp_product_decide(ProductInstance((2, 2), 8)) is False
    assert dp_product_decide(ProductInstance((7,), 1)) is True


def test_dp_product_matches_subset_scan():
    rng = random.Random(3)
    for _ in range(120):
        n = rng.randint(1, 10)
        a = tuple(rng.randint(1, 40) for _ in range(n))
        t = rng.randint(1, 200)
        want = any(
            t == _prod(a[i] for i in range(n) if mask >> i & 1)
            for mask in range(2 ** n)
        )
        assert dp_product_decide(ProductInstance(a, t)) == want


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out
