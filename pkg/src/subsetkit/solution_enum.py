"""Solution enumeration for promise Subset Sum.

The solution polynomial p_t(y_1..y_n) = sum over realisable sets S of
prod_{i in S} y_i is evaluated as a blackbox through the coefficient
identity  p_t(c) = -sum_{alpha in F_q*} alpha^{q-1-t} prod(1+c_i alpha^{a_i})
and recovered by sparse multilinear interpolation: substitute
y_i <- y^{k^{i-1} mod p0}, interpolate the univariate image at powers of
a primitive root, then attribute variables with coefficient-doubling
probes.  Everything is verified post hoc; a failed candidate k retries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, InterpolationError, VerificationError
from .modmath import PrimeField, find_prime_in_interval, find_primitive_root
from .ssum_hamming import SsumInstance, count_solutions_mod

_MAX_SWEEP_POINTS = 200_000
_CHUNK = 512


@dataclass
class SparseMultilinear:
    """Multilinear polynomial as {sorted 1-based index tuple: nonzero coef}."""

    terms: dict[tuple[int, ...], int]


@dataclass(frozen=True)
class SolutionSet:
    sets: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.sets)


def kane_coeff_eval(inst: SsumInstance, assignment, field: PrimeField) -> int:
    """p_t(c_1..c_n) in O(1) working space beyond the input.

    Requires q > deg_x + 2 where deg_x = sum(a_i); targets beyond deg_x
    short-circuit to 0 (the polynomial is identically zero there).
    """
    q = field.p
    a = inst.a
    deg = sum(a)
    if q <= deg + 2:
        raise ValueError("field too small for the coefficient identity")
    if inst.t > deg:
        return 0
    total = 0
    for alpha in range(1, q):
        acc = pow(alpha, q - 1 - inst.t, q)
        for ci, ai in zip(assignment, a):
            acc = acc * (1 + ci * pow(alpha, ai, q)) % q
        total = (total + acc) % q
    return (-total) % q


def _vpow(base: np.ndarray, e: int, q: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % q
    while e:
        if e & 1:
            out = out * b % q
        b = b * b % q
        e >>= 1
    return out


def make_kane_batch(inst: SsumInstance, field: PrimeField):
    """Vectorized evaluator: list of assignments -> list of p_t values."""
    q = field.p
    a = inst.a
    deg = sum(a)
    if q <= deg + 2:
        raise ValueError("field too small for the coefficient identity")
    if inst.t > deg:
        return lambda assignments: [0] * len(assignments)
    alphas = np.arange(1, q, dtype=np.int64)
    w = _vpow(alphas, (q - 1 - inst.t) % (q - 1), q)
    apows = [_vpow(alphas, ai, q) for ai in a]

    def batch(assignments) -> list[int]:
        cs = np.asarray(assignments, dtype=np.int64)
        out: list[int] = []
        for lo in range(0, cs.shape[0], _CHUNK):
            block = cs[lo: lo + _CHUNK]
            acc = np.broadcast_to(w, (block.shape[0], q - 1)).copy()
            for i, ap in enumerate(apows):
                acc = acc * ((1 + block[:, i: i + 1] * ap[None, :]) % q) % q
            out.extend(int(x) for x in (-acc.sum(axis=1)) % q)
        return out

    return batch


def _solve_power_vandermonde(nodes: list[int], values: list[int], q: int) -> list[int]:
    """Solve sum_l x_l * nodes[l]^r = values[r] for r = 0..s-1, mod q."""
    s = len(nodes)
    A = [[pow(nodes[l], r, q) for l in range(s)] + [values[r] % q]
         for r in range(s)]
    for col in range(s):
        piv = next(r for r in range(col, s) if A[r][col] % q != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = pow(A[col][col], q - 2, q)
        A[col] = [x * inv % q for x in A[col]]
        for r in range(s):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [(x - f * y) % q for x, y in zip(A[r], A[col])]
    return [A[r][s] for r in range(s)]


def _univariate_coeffs(evals: list[int], order: int, q: int,
                       ginv_pows: np.ndarray, limit: int) -> dict[int, int] | None:
    """Inverse full-group DFT; None if more than `limit` nonzero terms."""
    v = np.asarray(evals, dtype=np.int64)
    inv_order = pow(order, q - 2, q)
    erange = np.arange(order, dtype=np.int64)
    found: dict[int, int] = {}
    for lo in range(0, order, _CHUNK):
        hi = min(lo + _CHUNK, order)
        idx = (np.arange(lo, hi, dtype=np.int64)[:, None] * erange[None, :]) % order
        sums = ginv_pows[idx] @ v
        coefs = sums % q * inv_order % q
        for off in np.nonzero(coefs)[0]:
            found[lo + int(off)] = int(coefs[off])
            if len(found) > limit:
                return None
    return found


def sparse_interpolate(blackbox, n: int, sparsity_bound: int, degree_bound: int,
                       field: PrimeField, *, batch_blackbox=None,
                       max_points: int = _MAX_SWEEP_POINTS) -> SparseMultilinear:
    """Recover the exact term set of a multilinear blackbox polynomial.

    Works in verified mode: every candidate substitution is checked by
    exponent consistency and fresh-point evaluation, so a field smaller
    than the worst-case deterministic bound still yields correct output
    (or moves on to the next candidate).
    """
    q = field.p
    order = q - 1
    if order > max_points:
        raise BudgetExceeded(f"sweep of {order} points exceeds the budget")
    s = max(1, sparsity_bound)
    p0 = find_prime_in_interval(2 * s * s * n + 1)
    if n * (p0 - 1) >= order:
        raise ValueError("field too small for the substitution degrees")
    g = find_primitive_root(q)
    gpow = [1] * order
    for e in range(1, order):
        gpow[e] = gpow[e - 1] * g % q
    ginv_pows = np.empty(order, dtype=np.int64)
    ginv = pow(g, q - 2, q)
    acc = 1
    for e in range(order):
        ginv_pows[e] = acc
        acc = acc * ginv % q

    def evaluate(points):
        if batch_blackbox is not None:
            return batch_blackbox(points)
        return [blackbox(c) % q for c in points]

    for k in range(1, 2 * s * s * n + 1):
        d = [pow(k, i, p0) for i in range(n)]
        if n > 1 and len(set(d)) == 1:
            continue  # k=1-style degenerate substitution
        base_points = [
            [gpow[e * di % order] for di in d] for e in range(order)
        ]
        evals = evaluate(base_points)
        found = _univariate_coeffs(evals, order, q, ginv_pows, s)
        if found is None:
            continue
        verify_rng = random.Random(0xA5C3D1 + k)

        def verified(terms: dict[tuple[int, ...], int]) -> bool:
            points = [[verify_rng.randrange(q) for _ in range(n)] for _ in range(3)]
            wants = evaluate(points)
            for c, want in zip(points, wants):
                got = 0
                for S, coef in terms.items():
                    m = coef
                    for i in S:
                        m = m * c[i - 1] % q
                    got = (got + m) % q
                if want % q != got:
                    return False
            return True

        if not found:
            if verified({}):
                return SparseMultilinear({})
            continue
        dd_list = sorted(found)
        nnz = len(dd_list)
        nodes = [pow(g, dd, q) for dd in dd_list]
        if len(set(nodes)) < nnz:
            continue
        membership: list[set[int]] = [set() for _ in range(nnz)]
        ok = True
        for var in range(n):
            probe_points = []
            for e in range(nnz):
                c = [gpow[e * di % order] for di in d]
                c[var] = c[var] * 2 % q
                probe_points.append(c)
            pvals = evaluate(probe_points)
            cprime = _solve_power_vandermonde(nodes, pvals, q)
            for l, dd in enumerate(dd_list):
                base_c = found[dd]
                if cprime[l] == 2 * base_c % q:
                    membership[l].add(var + 1)
                elif cprime[l] != base_c:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        terms: dict[tuple[int, ...], int] = {}
        for l, dd in enumerate(dd_list):
            S = tuple(sorted(membership[l]))
            if sum(d[i - 1] for i in S) != dd or S in terms:
                ok = False
                break
            terms[S] = found[dd]
        if not ok:
            continue
        if verified(terms):
            return SparseMultilinear(terms)
    raise InterpolationError("all substitution candidates failed verification")


def enumerate_solutions(inst: SsumInstance, cap: int, *, strict: bool = False,
                        max_points: int = _MAX_SWEEP_POINTS) -> SolutionSet:
    """All realisable sets (1-based, lexicographically sorted)."""
    m = count_solutions_mod(inst, cap)
    if m == 0:
        return SolutionSet(())
    n, a, t = inst.n, inst.a, inst.t
    if n == 0:
        return SolutionSet(((),))  # t must be 0 here; the empty set solves it
    s = m
    p0 = find_prime_in_interval(2 * s * s * n + 1)
    deg = sum(a)
    lo = max(deg + 3, n * (p0 - 1) + 2, m + 2, 5)
    if strict:
        lo = max(lo, n * t + 3, n ** 12)
    q = find_prime_in_interval(lo)
    field = PrimeField(q)

    def blackbox(c):
        return kane_coeff_eval(inst, c, field)

    poly = sparse_interpolate(
        blackbox, n, s, n, field,
        batch_blackbox=make_kane_batch(inst, field),
        max_points=max_points,
    )
    sets = sorted(poly.terms)
    if len(sets) != m:
        raise VerificationError("interpolated term count disagrees with the count")
    for S in sets:
        if sum(a[i - 1] for i in S) != t:
            raise VerificationError(f"interpolated set {S} does not sum to target")
        if poly.terms[S] != 1:
            raise VerificationError(f"solution monomial {S} has coefficient != 1")
    return SolutionSet(tuple(sets))
