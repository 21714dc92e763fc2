"""The reduction web: every transformer preserves YES/NO and counts."""

import random

from subsetkit.oracles import brute_force_enumerate, dp_simul_decide
from subsetkit.reductions import (
    UbssumInstance,
    isolate_to_unique,
    simul2_to_ssum,
    ssum_to_simul2,
    ssum_to_simul_pinned,
    ubssum_enumerate,
    ubssum_hamming_weights,
    ubssum_to_ssum,
)
from subsetkit.simulsum import SimulInstance
from subsetkit.ssum_hamming import SsumInstance


def ubssum_brute(inst: UbssumInstance) -> list[tuple[int, ...]]:
    out = []

    def rec(i, rem, beta):
        if i == inst.n:
            if rem == 0:
                out.append(tuple(beta))
            return
        ai = inst.a[i]
        for b in range(rem // ai + 1):
            rec(i + 1, rem - b * ai, beta + [b])

    rec(0, inst.t, [])
    return sorted(out)


def ssum_yes(inst: SsumInstance) -> bool:
    return bool(brute_force_enumerate(inst))


def test_isolation_examples():
    batch = isolate_to_unique(SsumInstance((1,), 1), seed=0)
    assert len(batch.targets) == 2
    yes = [t for t in batch.targets if ssum_yes(SsumInstance(batch.b, t))]
    assert yes == [4 + batch.w[0]]

    inst = SsumInstance((1, 2), 4)  # NO instance
    batch = isolate_to_unique(inst, seed=1)
    assert len(batch.targets) == 8
    assert not any(ssum_yes(m) for m in batch.instances())


def test_isolation_structure():
    inst = SsumInstance((3, 1, 2), 3)
    batch = isolate_to_unique(inst, seed=5)
    n = inst.n
    assert all(1 <= wi <= 2 * n for wi in batch.w)
    assert batch.b == tuple(4 * n * n * ai + wi for ai, wi in zip(inst.a, batch.w))
    assert batch.targets == tuple(4 * n * n * inst.t + ell
                                  for ell in range(1, 2 * n * n + 1))
    # YES instance: some member is YES; each YES member's solutions solve inst
    members_yes = [t for t in batch.targets
                   if ssum_yes(SsumInstance(batch.b, t))]
    assert members_yes
    for t in members_yes:
        for S in brute_force_enumerate(SsumInstance(batch.b, t)):
            assert sum(inst.a[i - 1] for i in S) == inst.t


def test_isolation_unique_member_rate():
    # on multi-solution YES instances a unique-solution member must
    # appear in well over 40% of seeded trials
    pool = [
        SsumInstance((3, 1, 2), 3),
        SsumInstance((2, 2, 2, 3), 4),
        SsumInstance((1, 1, 2, 2), 3),
        SsumInstance((1, 2, 3, 4, 5), 6),
    ]
    hits = trials = 0
    for inst in pool:
        for seed in range(25):
            trials += 1
            batch = isolate_to_unique(inst, seed=seed)
            if any(len(brute_force_enumerate(m)) == 1 for m in batch.instances()):
                hits += 1
    assert hits / trials >= 0.4


def test_ssum_to_simul2_examples():
    s0, s1 = ssum_to_simul2(SsumInstance((3, 1, 2), 3))
    assert dp_simul_decide(s0) and dp_simul_decide(s1)
    s0, s1 = ssum_to_simul2(SsumInstance((1,), 2))
    assert not dp_simul_decide(s0) and not dp_simul_decide(s1)
    s0, s1 = ssum_to_simul2(SsumInstance((2,), 2))
    assert not dp_simul_decide(s0) and dp_simul_decide(s1)


def test_simul2_to_ssum_examples():
    sys = SimulInstance(((1, 2), (2, 1)), (3, 3))
    out = simul2_to_ssum(sys)
    assert out.a == (9, 6) and out.t == 15
    assert ssum_yes(out)
    sys_no = SimulInstance(((1, 2), (2, 1)), (1, 1))
    assert not ssum_yes(simul2_to_ssum(sys_no))
    pre_reduced = SimulInstance(((1, 1),), (0, 0))
    assert ssum_yes(simul2_to_ssum(pre_reduced))


def test_ssum_simul_roundtrip():
    rng = random.Random(33)
    for _ in range(120):
        n = rng.randint(1, 8)
        t = rng.randint(0, 40)
        inst = SsumInstance(tuple(rng.randint(0, t + 3) for _ in range(n)), t)
        want = ssum_yes(inst)
        s0, s1 = ssum_to_simul2(inst)
        assert (dp_simul_decide(s0) or dp_simul_decide(s1)) == want
        # collapse both systems back to plain instances
        back = ssum_yes(simul2_to_ssum(s0)) or ssum_yes(simul2_to_ssum(s1))
        assert back == want


def test_pinned_generalization():
    rng = random.Random(35)
    for _ in range(40):
        n = rng.randint(1, 7)
        t = rng.randint(0, 25)
        inst = SsumInstance(tuple(rng.randint(0, t + 2) for _ in range(n)), t)
        systems = ssum_to_simul_pinned(inst, k=min(3, n))
        assert any(dp_simul_decide(s) for s in systems) == ssum_yes(inst)


def test_ubssum_to_ssum_examples():
    out = ubssum_to_ssum(UbssumInstance((1,), 1))
    assert out.a == (1,) and out.t == 1
    out = ubssum_to_ssum(UbssumInstance((1, 3), 5))
    assert out.a == (1, 2, 4, 3, 6, 12) and out.t == 5
    assert len(brute_force_enumerate(out)) == 2
    out = ubssum_to_ssum(UbssumInstance((2,), 5))
    assert brute_force_enumerate(out) == []


def test_ubssum_count_preservation():
    rng = random.Random(37)
    for _ in range(60):
        n = rng.randint(1, 4)
        t = rng.randint(1, 30)
        inst = UbssumInstance(tuple(rng.randint(1, t + 2) for _ in range(n)), t)
        want = len(ubssum_brute(inst))
        got = len(brute_force_enumerate(ubssum_to_ssum(inst)))
        assert got == want


def test_ubssum_weights_examples():
    prof = ubssum_hamming_weights(UbssumInstance((1, 3), 5), 2)
    assert prof.weights == (3, 5)
    assert ubssum_hamming_weights(UbssumInstance((2,), 4), 1).weights == (2,)
    assert ubssum_hamming_weights(UbssumInstance((2,), 3), 1).weights == ()


def test_ubssum_enumerate_examples():
    assert ubssum_enumerate(UbssumInstance((1, 3), 5), 2) == ((2, 1), (5, 0))
    assert ubssum_enumerate(UbssumInstance((1,), 3), 1) == ((3,),)
    assert ubssum_enumerate(UbssumInstance((2, 4), 3), 1) == ()


def test_ubssum_pipeline_random():
    rng = random.Random(39)
    done = 0
    while done < 25:
        n = rng.randint(1, 3)
        t = rng.randint(1, 20)
        inst = UbssumInstance(tuple(rng.randint(1, t + 2) for _ in range(n)), t)
        sols = ubssum_brute(inst)
        if len(sols) > 4:
            continue
        done += 1
        cap = max(1, len(sols))
        assert list(ubssum_enumerate(inst, cap)) == sols
        from collections import Counter

        hist = Counter(sum(beta) for beta in sols)
        prof = ubssum_hamming_weights(inst, cap)
        assert prof.entries == tuple(sorted(hist.items()))
