"""Acceptance gate: ten end-to-end criteria, one pass/fail line each.

Every criterion is exercised at its stated size with seeded generators;
tolerances are zero (exact agreement) except the scaling trend, which
allows the documented polylog slack factor.
"""

import contextlib
import io
import json
import math
import pathlib
import random
import time
from collections import Counter

import numpy as np

from subsetkit import cli
from subsetkit.modmath import PrimeField, factorint, find_prime_in_interval
from subsetkit.oracles import (
    brute_force_enumerate,
    dp_product_decide,
    dp_simul_decide,
)
from subsetkit.reductions import (
    UbssumInstance,
    isolate_to_unique,
    simul2_to_ssum,
    ssum_to_simul2,
    ubssum_to_ssum,
)
from subsetkit.series import ProductSpec, log_product_coeffs, series_exp
from subsetkit.simulsum import SimulInstance, simul_decide
from subsetkit.solution_enum import enumerate_solutions
from subsetkit.ssum_hamming import SsumInstance, weight_multiplicities
from subsetkit.subset_product import (
    ProductInstance,
    product_decide,
    product_decide_lowspace,
    pseudo_prime_factor_set,
)

from golden_manifest import CASES

GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"


def report(num: int, desc: str, detail: str) -> None:
    print(f"criterion {num:02d} {desc}: PASS ({detail})", flush=True)


def test_criterion_01_hamming_weight_oracle_equivalence():
    rng = random.Random(101)
    for _ in range(500):
        n = rng.randint(1, 16)
        t = rng.randint(1, 200)
        a = tuple(rng.randint(1, t) for _ in range(n))
        inst = SsumInstance(a, t)
        hist = Counter(len(S) for S in brute_force_enumerate(inst))
        got = weight_multiplicities(inst, 2 ** n)
        assert got.entries == tuple(sorted(hist.items())), (a, t)
    report(1, "hamming-weight oracle equivalence", "500 instances, exact")


def test_criterion_02_enumeration_oracle_equivalence():
    rng = random.Random(202)
    done = 0
    while done < 300:
        n = rng.randint(1, 12)
        t = rng.randint(1, 80)
        a = tuple(rng.randint(1, t) for _ in range(n))
        inst = SsumInstance(a, t)
        sols = brute_force_enumerate(inst)
        if len(sols) > 4:
            continue  # outside the supported promise class (see ledger)
        done += 1
        got = enumerate_solutions(inst, max(1, len(sols)))
        assert list(got.sets) == sols, (a, t)
    report(2, "enumeration oracle equivalence", "300 instances, exact")


def test_criterion_03_simulsubsetsum_vs_dp():
    rng = random.Random(303)
    no_side_retries = 0
    for trial in range(500):
        n = rng.randint(1, 12)
        k = rng.randint(1, 3)
        targets = tuple(rng.randint(0, 8) for _ in range(k))
        rows = tuple(
            tuple(rng.randint(0, 8) for _ in range(k)) for _ in range(n)
        )
        inst = SimulInstance(rows, targets)
        dp = dp_simul_decide(inst)
        dec = simul_decide(inst, seed=trial)
        if dec.yes != dp:
            assert dp and not dec.yes, "YES answers must be correct"
            no_side_retries += 1
            retries = [
                simul_decide(inst, seed=700_000 + 13 * trial + r).yes
                for r in range(5)
            ]
            assert any(retries), "NO-side disagreement persisted over 5 seeds"
    report(3, "SimulSubsetSum vs DP oracle",
           f"500 instances, {no_side_retries} NO-side retries")


def test_criterion_04_subset_product_vs_oracles():
    rng = random.Random(404)
    for trial in range(500):
        n = rng.randint(1, 12)
        a = tuple(rng.randint(1, 10**4) for _ in range(n))
        t = rng.randint(1, 10**4)
        inst = ProductInstance(a, t)
        dp = dp_product_decide(inst)
        dec = product_decide(inst, seed=trial)
        if dec.yes != dp:
            assert dp and not dec.yes
            retries = [
                product_decide(inst, seed=800_000 + 13 * trial + r).yes
                for r in range(5)
            ]
            assert any(retries)
    done = 0
    while done < 120:
        n = rng.randint(1, 6)
        a = tuple(rng.randint(1, 50) for _ in range(n))
        t = rng.randint(2, 50)
        if len(factorint(t)) > 2:
            continue
        done += 1
        want = any(
            t == math.prod(a[i] for i in range(n) if mask >> i & 1)
            for mask in range(2 ** n)
        )
        assert product_decide_lowspace(ProductInstance(a, t)).yes == want, (a, t)
    report(4, "Subset Product vs oracles",
           "500 randomized + 120 low-space instances")


def test_criterion_05_coefficient_extraction_fidelity():
    rng = random.Random(505)
    p = 99991
    field = PrimeField(p)
    for _ in range(200):
        n = rng.randint(1, 30)
        t = rng.randint(1, 300)
        spec = ProductSpec(
            a=tuple(rng.randint(1, 350) for _ in range(n)),
            W=rng.choice([w for w in range(-10, 11) if w != 0]),
            b=rng.randint(0, 5),
            sign=rng.choice([1, -1]),
        )
        got = series_exp(log_product_coeffs(spec, t, field), t).coeffs
        want = [1] + [0] * t
        scale = pow(spec.W % p, spec.b, p) * (1 if spec.sign > 0 else -1) % p
        for ai in spec.a:
            nxt = list(want)
            if ai <= t:
                for d in range(t + 1 - ai):
                    nxt[d + ai] = (nxt[d + ai] + want[d] * scale) % p
            want = nxt
        assert got == want
    report(5, "coefficient extraction fidelity", "200 product specs, exact")


def test_criterion_06_coefficient_sum_identities():
    rng = random.Random(606)
    # univariate: sum_x x^(q-1-t) f(x) == -c_t over F_q*
    for _ in range(100):
        deg = rng.randint(0, 20)
        q = find_prime_in_interval(rng.randint(deg + 3, 257))
        coeffs = [rng.randrange(q) for _ in range(deg + 1)]
        t = rng.randint(0, deg)
        total = 0
        for x in range(1, q):
            fx = 0
            for c in reversed(coeffs):
                fx = (fx * x + c) % q
            total = (total + pow(x, q - 1 - t, q) * fx) % q
        assert total == (-coeffs[t]) % q
    # k-variate: (-1)^k sum over (F_q*)^k of f(x) prod x_j^(q-1-t_j) == c_t
    for _ in range(100):
        k = rng.choice([2, 3])
        q = find_prime_in_interval(rng.randint(8, 23 if k == 3 else 61))
        dims = tuple(rng.randint(0, min(4, q - 3)) for _ in range(k))
        coeffs = np.random.default_rng(rng.randrange(2**32)).integers(
            0, q, size=tuple(d + 1 for d in dims)
        )
        targets = tuple(rng.randint(0, d) for d in dims)
        xs = np.arange(1, q, dtype=np.int64)
        pows = [
            np.array([[pow(int(x), d, q) for d in range(dims[j] + 1)]
                      for x in xs], dtype=np.int64)
            for j in range(k)
        ]
        # f on the whole grid: contract each degree axis against its power table
        vals = coeffs.astype(np.int64)
        for j in range(k):
            vals = np.tensordot(vals, pows[j], axes=([0], [1])) % q
        # vals axes are now (x_1 .. x_k); apply the monomial weights per axis
        for j in range(k):
            w = np.array([pow(int(x), q - 1 - targets[j], q) for x in xs],
                         dtype=np.int64)
            shape = [1] * k
            shape[j] = q - 1
            vals = vals * w.reshape(shape) % q
        total = int(vals.sum() % q)
        if k % 2 == 1:
            total = (-total) % q
        assert total == int(coeffs[targets]) % q
    report(6, "coefficient-sum identities", "100 univariate + 100 k-variate")


def test_criterion_07_pseudo_prime_factor_sets():
    rng = random.Random(707)
    for _ in range(500):
        inputs = [rng.randint(1, 10**9) for _ in range(rng.randint(1, 8))]
        ppf = pseudo_prime_factor_set(inputs)
        for i, u in enumerate(ppf.base):
            assert u >= 2
            for v in ppf.base[i + 1:]:
                assert math.gcd(u, v) == 1
        for row, v in enumerate(inputs):
            assert ppf.reconstruct(row) == v
        distinct = set()
        for v in inputs:
            if v > 1:
                distinct |= set(factorint(v))
        assert len(ppf.base) <= len(distinct)
        total_bits = sum(v.bit_length() for v in inputs if v > 1)
        assert ppf.depth <= max(total_bits, 1)
    report(7, "pseudo-prime-factor sets", "500 tuples, all invariants")


def test_criterion_08_reduction_web():
    rng = random.Random(808)

    def ssum_yes(inst):
        return bool(brute_force_enumerate(inst))

    for _ in range(300):  # plain <-> simultaneous, both directions
        n = rng.randint(1, 8)
        t = rng.randint(0, 60)
        inst = SsumInstance(tuple(rng.randint(0, t + 5) for _ in range(n)), t)
        want = ssum_yes(inst)
        s0, s1 = ssum_to_simul2(inst)
        assert (dp_simul_decide(s0) or dp_simul_decide(s1)) == want
        assert (ssum_yes(simul2_to_ssum(s0)) or ssum_yes(simul2_to_ssum(s1))) == want
    for _ in range(300):  # arbitrary k=2 systems collapse faithfully
        n = rng.randint(1, 8)
        rows = tuple(
            (rng.randint(0, 10), rng.randint(0, 10)) for _ in range(n)
        )
        targets = (rng.randint(0, 25), rng.randint(0, 25))
        sys2 = SimulInstance(rows, targets)
        assert ssum_yes(simul2_to_ssum(sys2)) == dp_simul_decide(sys2)
    for _ in range(300):  # unbounded -> bounded, YES/NO preserved
        n = rng.randint(1, 4)
        t = rng.randint(1, 60)
        inst = UbssumInstance(tuple(rng.randint(1, t + 2) for _ in range(n)), t)
        want = _ubssum_count(inst) > 0
        assert ssum_yes(ubssum_to_ssum(inst)) == want
    for _ in range(100):  # unbounded -> bounded, exact counts
        n = rng.randint(1, 4)
        t = rng.randint(1, 30)
        inst = UbssumInstance(tuple(rng.randint(1, t + 2) for _ in range(n)), t)
        assert len(brute_force_enumerate(ubssum_to_ssum(inst))) == _ubssum_count(inst)
    # isolation: unique-solution member rate on multi-solution instances
    pool = []
    while len(pool) < 8:
        n = rng.randint(3, 6)
        t = rng.randint(3, 25)
        inst = SsumInstance(tuple(rng.randint(1, t) for _ in range(n)), t)
        if len(brute_force_enumerate(inst)) >= 2:
            pool.append(inst)
    hits = trials = 0
    for inst in pool:
        for seed in range(25):
            trials += 1
            batch = isolate_to_unique(inst, seed=seed)
            scale = 4 * inst.n * inst.n
            sums = Counter()
            for mask in range(2 ** inst.n):
                sums[sum(batch.b[i] for i in range(inst.n) if mask >> i & 1)] += 1
            if any(sums.get(scale * inst.t + ell, 0) == 1
                   for ell in range(1, 2 * inst.n * inst.n + 1)):
                hits += 1
    assert trials == 200 and hits / trials >= 0.4, hits
    report(8, "reduction web",
           f"3x300 transformers + 100 counts + isolation rate {hits}/200")


def _ubssum_count(inst: UbssumInstance) -> int:
    count = 0

    def rec(i, rem):
        nonlocal count
        if i == inst.n:
            count += rem == 0
            return
        ai = inst.a[i]
        for b in range(rem // ai + 1):
            rec(i + 1, rem - b * ai)

    rec(0, inst.t)
    return count


def test_criterion_09_scaling_trend():
    started = time.perf_counter()
    rng = random.Random(909)
    medians = {}
    for exp in (12, 16):
        t = 2 ** exp
        inst = cli._planted_instance(64, t, rng)
        times = []
        for _ in range(5):
            t0 = time.perf_counter()
            prof = weight_multiplicities(inst, 4)
            times.append(time.perf_counter() - t0)
            assert prof.total == 2
        medians[exp] = sorted(times)[2]
    ratio = medians[16] / medians[12]
    elapsed = time.perf_counter() - started
    assert ratio <= 24, f"t 16x growth blew up runtime by {ratio:.1f}x"
    assert elapsed <= 180, f"scaling check took {elapsed:.0f}s"
    report(9, "scaling trend",
           f"64 items, t=4096->65536 ratio {ratio:.1f}x, {elapsed:.0f}s total")


def test_criterion_10_cli_golden_files():
    for name, payload, argv in CASES:
        inst_path = GOLDEN_DIR / f"{name}.json"
        assert json.loads(inst_path.read_text()) == payload
        buf = io.StringIO()
        args = [a.replace("{inst}", str(inst_path)) for a in argv]
        with contextlib.redirect_stdout(buf), \
                contextlib.redirect_stderr(io.StringIO()):
            rc = cli.main(args)
        assert rc == 0, name
        want = (GOLDEN_DIR / f"{name}.out").read_bytes()
        assert buf.getvalue().encode() == want, name
    report(10, "CLI golden-file byte equality", f"{len(CASES)} cases")
