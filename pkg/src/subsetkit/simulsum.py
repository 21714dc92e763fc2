"""Simultaneous subset sum via multivariate truncated log/exp.

The generating function prod_i (1 + prod_j x_j^{a_ij}) is expanded
modulo the ideal <x_1^{t_1+1},..,x_k^{t_k+1}, p> by taking its log
directly from occurrence counts and exponentiating with a divide-and-
conquer recurrence on the first axis.  The instance is a YES iff the
coefficient at (t_1..t_k) is nonzero mod a random large prime.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from math import prod

from . import _kernel
from .modmath import PrimeField, batch_inverses, is_prime


@dataclass(frozen=True)
class SimulInstance:
    rows: tuple[tuple[int, ...], ...]
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        object.__setattr__(self, "targets", tuple(self.targets))
        k = len(self.targets)
        if any(len(r) != k for r in self.rows):
            raise ValueError("ragged row in simultaneous instance")
        if any(x < 0 for r in self.rows for x in r):
            raise ValueError("entries must be nonnegative")
        if any(t < 0 for t in self.targets):
            raise ValueError("targets must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def k(self) -> int:
        return len(self.targets)


@dataclass
class MultiPoly:
    """Dense multivariate polynomial truncated to per-axis degree bounds.

    coeffs is flat in row-major order (axis 0 outermost); axis j is
    indexed 0..dims[j].
    """

    field: PrimeField
    dims: tuple[int, ...]
    coeffs: list[int]

    def __post_init__(self):
        size = prod(d + 1 for d in self.dims)
        if len(self.coeffs) != size:
            raise ValueError("coefficient array size mismatch")

    def strides(self) -> tuple[int, ...]:
        out = []
        w = 1
        for d in reversed(self.dims):
            out.append(w)
            w *= d + 1
        return tuple(reversed(out))

    def get(self, idx: tuple[int, ...]) -> int:
        flat = sum(i * s for i, s in zip(idx, self.strides()))
        return self.coeffs[flat]


def _pack(flat: list[int], shape: tuple[int, ...], radices: tuple[int, ...]) -> list[int]:
    """Kronecker-flatten a row-major array into mixed-radix positions."""
    k = len(shape)
    pw = [0] * k
    w = 1
    for j in range(k - 1, -1, -1):
        pw[j] = w
        w *= radices[j]
    out = [0] * w
    sstrides = [0] * k
    s = 1
    for j in range(k - 1, -1, -1):
        sstrides[j] = s
        s *= shape[j]

    def rec(axis: int, src: int, dst: int) -> None:
        if axis == k - 1:
            out[dst: dst + shape[axis]] = flat[src: src + shape[axis]]
            return
        for i in range(shape[axis]):
            rec(axis + 1, src + i * sstrides[axis], dst + i * pw[axis])

    if k == 0:
        return list(flat)
    rec(0, 0, 0)
    return out


def _unpack(packed: list[int], out_shape: tuple[int, ...], radices: tuple[int, ...]) -> list[int]:
    k = len(out_shape)
    if k == 0:
        return [packed[0] if packed else 0]
    pw = [0] * k
    w = 1
    for j in range(k - 1, -1, -1):
        pw[j] = w
        w *= radices[j]
    if len(packed) < w:
        packed = packed + [0] * (w - len(packed))
    dstrides = [0] * k
    s = 1
    for j in range(k - 1, -1, -1):
        dstrides[j] = s
        s *= out_shape[j]
    out = [0] * s

    def rec(axis: int, src: int, dst: int) -> None:
        if axis == k - 1:
            out[dst: dst + out_shape[axis]] = packed[src: src + out_shape[axis]]
            return
        for i in range(out_shape[axis]):
            rec(axis + 1, src + i * pw[axis], dst + i * dstrides[axis])

    rec(0, 0, 0)
    return out


def multi_mul(fa: list[int], shape_a: tuple[int, ...],
              fb: list[int], shape_b: tuple[int, ...],
              out_shape: tuple[int, ...], p: int) -> list[int]:
    """Truncated multidimensional product via one univariate convolution.

    Radix (sa+sb-1) per axis leaves no room for carries between axes, so
    the flattened product is exact.
    """
    radices = tuple(sa + sb - 1 for sa, sb in zip(shape_a, shape_b))
    if len(radices) == 0:
        return [fa[0] * fb[0] % p]
    pa = _pack(fa, shape_a, radices)
    pb = _pack(fb, shape_b, radices)
    pc = _kernel.mul_mod(pa, pb, p)
    return _unpack(pc, out_shape, radices)


def _effective_rows(inst: SimulInstance) -> list[tuple[int, ...]]:
    """Rows that can appear in a solution and touch at least one axis."""
    out = []
    for r in inst.rows:
        if any(r[j] > inst.targets[j] for j in range(inst.k)):
            continue
        if any(r):
            out.append(r)
    return out


def multivar_log_product(inst: SimulInstance, field: PrimeField) -> MultiPoly:
    """ln prod (1 + prod_j x_j^{a_ij}) truncated to the target box.

    All-zero rows contribute a constant factor and are excluded here;
    callers account for them multiplicatively.
    """
    p = field.p
    targets = inst.targets
    rows = _effective_rows(inst)
    counts = Counter(rows)
    lmax = 0
    for row in counts:
        lmax = max(lmax, min(targets[j] // row[j] for j in range(inst.k) if row[j]))
    if p <= lmax:
        raise ValueError("field too small for log inverses")
    inv = batch_inverses(lmax, p)
    dims = targets
    strides = MultiPoly(field, dims, [0] * prod(d + 1 for d in dims)).strides()
    out = [0] * prod(d + 1 for d in dims)
    for row, s in counts.items():
        bound = min(targets[j] // row[j] for j in range(inst.k) if row[j])
        base = sum(row[j] * strides[j] for j in range(inst.k))
        for ell in range(1, bound + 1):
            term = s % p * inv[ell] % p
            if ell % 2 == 0:
                term = (-term) % p
            out[ell * base] = (out[ell * base] + term) % p
    return MultiPoly(field, dims, out)


def multivar_exp(f: MultiPoly) -> MultiPoly:
    """exp(f) truncated to f's box; f must have zero constant term."""
    field = f.field
    p = field.p
    dims = f.dims
    if f.coeffs[0] != 0:
        raise ValueError("multivar_exp requires zero constant term")
    if len(dims) == 0:
        return MultiPoly(field, (), [1])
    t1 = dims[0]
    sub = dims[1:]
    K = prod(d + 1 for d in sub)
    fblocks = [f.coeffs[d * K:(d + 1) * K] for d in range(t1 + 1)]
    g0 = multivar_exp(MultiPoly(field, sub, fblocks[0])).coeffs
    if t1 == 0:
        return MultiPoly(field, dims, g0)
    if p <= t1:
        raise ValueError("field too small for exp inverses")
    inv = batch_inverses(t1, p)
    subshape = tuple(d + 1 for d in sub)
    cblocks = [None] + [
        [d * x % p for x in fblocks[d]] for d in range(1, t1 + 1)
    ]
    # acc[i] starts with the u_0 = g0 contribution, computed in one sweep
    cflat = [0] * K
    for d in range(1, t1 + 1):
        cflat.extend(cblocks[d])
    init = multi_mul(cflat, (t1 + 1,) + subshape, g0, (1,) + subshape,
                     (t1 + 1,) + subshape, p)
    u: list[list[int] | None] = [g0] + [None] * t1
    acc = [init[i * K:(i + 1) * K] for i in range(t1 + 1)]

    def compute(lo: int, hi: int) -> None:
        if lo == hi:
            u[lo] = [x * inv[lo] % p for x in acc[lo]]
            return
        mid = (lo + hi) // 2
        compute(lo, mid)
        wa = hi - lo          # x1-window of c[1..hi-lo]
        wb = mid - lo + 1     # x1-window of u[lo..mid]
        fa = []
        for d in range(1, wa + 1):
            fa.extend(cblocks[d])
        fb = []
        for j in range(lo, mid + 1):
            fb.extend(u[j])
        prodv = multi_mul(fa, (wa,) + subshape, fb, (wb,) + subshape,
                          (wa,) + subshape, p)
        for i in range(mid + 1, hi + 1):
            s = i - lo - 1
            blk = prodv[s * K:(s + 1) * K]
            ai = acc[i]
            for idx in range(K):
                ai[idx] = (ai[idx] + blk[idx]) % p
        compute(mid + 1, hi)

    compute(1, t1)
    out: list[int] = []
    for blk in u:
        out.extend(blk)
    return MultiPoly(field, dims, out)


@dataclass(frozen=True)
class SimulDecision:
    yes: bool
    count_mod: int | None
    prime: int | None
    seed: int | None = None


def _normalize(inst: SimulInstance):
    """Apply the zero-target reduction and row filters.

    Returns (rows, targets, free_rows) where free_rows counts surviving
    all-zero rows (each doubles the solution count).
    """
    rows = [tuple(r) for r in inst.rows]
    targets = list(inst.targets)
    while True:
        zero_axes = [j for j, tj in enumerate(targets) if tj == 0]
        if not zero_axes:
            break
        keep = [j for j, tj in enumerate(targets) if tj != 0]
        rows = [
            tuple(r[j] for j in keep)
            for r in rows
            if all(r[j] == 0 for j in zero_axes)
        ]
        targets = [targets[j] for j in keep]
    k = len(targets)
    rows = [r for r in rows if all(r[j] <= targets[j] for j in range(k))]
    free = sum(1 for r in rows if not any(r))
    rows = [r for r in rows if any(r)]
    return rows, tuple(targets), free


def sample_prime(lo: int, hi: int, rng: random.Random) -> int:
    """Uniformly sample a prime from [lo, hi] by rejection."""
    while True:
        cand = rng.randrange(lo, hi + 1)
        if is_prime(cand):
            return cand


def simul_decide(inst: SimulInstance, seed: int) -> SimulDecision:
    """Randomized decision: one-sided error on the NO side only."""
    rows, targets, free = _normalize(inst)
    if not targets:
        return SimulDecision(True, None, None, seed)
    if not rows:
        return SimulDecision(False, 0, None, seed)
    n = len(rows)
    N = prod(2 * tj + 1 for tj in targets)
    rng = random.Random(seed)
    p = sample_prime(N + 1, (n + N) ** 3, rng)
    field = PrimeField(p)
    # rotate the smallest target onto the recursion axis
    k = len(targets)
    jmin = min(range(k), key=lambda j: targets[j])
    perm = [jmin] + [j for j in range(k) if j != jmin]
    prows = tuple(tuple(r[j] for j in perm) for r in rows)
    ptargets = tuple(targets[j] for j in perm)
    pinst = SimulInstance(prows, ptargets)
    G = multivar_exp(multivar_log_product(pinst, field))
    coef = G.get(ptargets) * pow(2, free, p) % p
    return SimulDecision(coef != 0, coef, p, seed)
