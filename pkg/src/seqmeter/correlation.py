"""Correlation measure of order k for binary and m-ary sequences.

The binary measure is the maximum over lag tuples D = (d_1 < ... < d_k)
and window lengths U (U + d_k <= N) of the absolute windowed sum of
(-1)^(s_{i+d_1} + ... + s_{i+d_k}).  Two independent engines compute it:

* scalar reference: per lag tuple, a direct pass over the symbols with a
  running signed sum;
* bit-parallel: the sequence is packed into a big integer, each lag tuple
  becomes one XOR of shifted words, and the running-extremum of the +/-1
  walk is read off 16-bit chunks through precomputed walk tables (small
  windows hit a full per-word table).

Both engines enumerate lag tuples in the same canonical order (d_k
ascending, then lexicographic) and break ties identically (smallest d_k,
then lexicographically smallest D, then smallest U), so their results are
bit-identical and independent of worker count.

The m-ary form maximizes |sum of xi^(h_1 s_{i+d_1} + ... + h_k s_{i+d_k})|
for a primitive m-th root of unity xi, optionally over multiplier tuples
1 <= h_j < m.  For m in {2, 3, 4, 6} partial sums are exact integer pairs
in a cyclotomic basis; other m fall back to complex doubles with a 1e-9
comparison tolerance.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from itertools import combinations, product
from math import comb, sqrt

from . import _par
from .errors import BudgetExceededError, UnsupportedAlphabetError, ValidationError
from .seqcore import Sequence

DEFAULT_BUDGET = 10_000_000_000

_FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class MeasureResult:
    """A correlation value with the witness attaining it.

    Re-evaluating the single sum at (witness_lags, witness_U) (and
    witness multipliers, if m-ary) reproduces value exactly.
    """

    value: int | float
    k: int
    n: int
    witness_lags: tuple[int, ...]
    witness_U: int
    mode: str  # "exact" | "bounded" | "sampled"
    alphabet_m: int = 2
    max_lag: int | None = None
    n_samples: int | None = None
    seed: int | None = None
    multipliers: tuple[int, ...] | None = None
    value_squared: int | float | None = None

    def to_dict(self) -> dict:
        d = {
            "value": self.value,
            "k": self.k,
            "N": self.n,
            "witness_lags": list(self.witness_lags),
            "witness_U": self.witness_U,
            "mode": self.mode,
            "alphabet_m": self.alphabet_m,
        }
        if self.max_lag is not None:
            d["max_lag"] = self.max_lag
        if self.n_samples is not None:
            d["n_samples"] = self.n_samples
            d["seed"] = self.seed
        if self.multipliers is not None:
            d["multipliers"] = list(self.multipliers)
        if self.value_squared is not None:
            d["value_squared"] = self.value_squared
        return d


# --- validation and budget ---------------------------------------------------


def _resolve_args(seq: Sequence, n: int | None, k: int, max_lag: int | None):
    if n is None:
        n = len(seq)
    if n < 1 or n > len(seq):
        raise ValidationError(f"N={n} outside [1, {len(seq)}]")
    if k < 1:
        raise ValidationError(f"order k must be >= 1, got {k}")
    if k > n:
        raise ValidationError(f"order k={k} exceeds N={n}")
    if max_lag is not None:
        if max_lag < k - 1:
            raise ValidationError(
                f"max_lag={max_lag} leaves no room for {k} increasing lags"
            )
        bound = min(max_lag, n - 1)
    else:
        bound = n - 1
    # a bound covering every admissible tuple is plain exact mode
    mode = "exact" if bound == n - 1 else "bounded"
    return n, bound, mode


def _check_budget(n: int, k: int, bound: int, budget: int, factor: int = 1) -> int:
    steps = comb(bound + 1, k) * n * factor
    if steps > budget:
        raise BudgetExceededError(
            steps, budget, "use max_lag or sampled_correlation to shrink the search"
        )
    return steps


# --- scalar reference engine -------------------------------------------------


def _scan_scalar(sym: tuple, n: int, k: int, bound: int):
    """Direct per-tuple summation over the symbol tuple.  Returns the best
    (value, lags, first U) in canonical tie-break order."""
    best = -1
    best_lags = None
    best_u = 0
    if k == 1:
        for d in range(bound + 1):
            run = 0
            mx = 0
            fu = 0
            for i in range(n - d):
                run += 1 - (sym[i + d] << 1)
                a = run if run >= 0 else -run
                if a > mx:
                    mx = a
                    fu = i + 1
            if mx > best:
                best, best_lags, best_u = mx, (d,), fu
        return best, best_lags, best_u
    for d in range(k - 1, bound + 1):
        ell = n - d
        for rest in combinations(range(d), k - 1):
            run = 0
            mx = 0
            fu = 0
            if k == 2:
                d1 = rest[0]
                for i in range(ell):
                    run += 1 - ((sym[i + d1] ^ sym[i + d]) << 1)
                    a = run if run >= 0 else -run
                    if a > mx:
                        mx = a
                        fu = i + 1
            elif k == 3:
                d1, d2 = rest
                for i in range(ell):
                    run += 1 - ((sym[i + d1] ^ sym[i + d2] ^ sym[i + d]) << 1)
                    a = run if run >= 0 else -run
                    if a > mx:
                        mx = a
                        fu = i + 1
            elif k == 4:
                d1, d2, d3 = rest
                for i in range(ell):
                    run += 1 - (
                        (sym[i + d1] ^ sym[i + d2] ^ sym[i + d3] ^ sym[i + d]) << 1
                    )
                    a = run if run >= 0 else -run
                    if a > mx:
                        mx = a
                        fu = i + 1
            else:
                for i in range(ell):
                    x = sym[i + d]
                    for dj in rest:
                        x ^= sym[i + dj]
                    run += 1 - (x << 1)
                    a = run if run >= 0 else -run
                    if a > mx:
                        mx = a
                        fu = i + 1
            if mx > best:
                best, best_lags, best_u = mx, rest + (d,), fu
    return best, best_lags, best_u


# --- bit-parallel engine ------------------------------------------------------

_LUT_MAX = 12
_lut_val: list = [None] * (_LUT_MAX + 1)
_lut_fu: list = [None] * (_LUT_MAX + 1)
_SUM16: list | None = None
_MAXP16: list | None = None
_MINP16: list | None = None


def _build_luts() -> None:
    """Per-word walk tables for window lengths <= _LUT_MAX: max |prefix sum|
    of the +/-1 walk and the first U attaining it."""
    global _lut_val, _lut_fu
    if _lut_val[1] is not None:
        return
    _lut_val[1] = [1, 1]
    _lut_fu[1] = [1, 1]
    for ell in range(2, _LUT_MAX + 1):
        prev_val = _lut_val[ell - 1]
        prev_fu = _lut_fu[ell - 1]
        size = 1 << ell
        half = size >> 1
        vals = [0] * size
        fus = [0] * size
        for w in range(size):
            pv = prev_val[w & (half - 1)]
            p = ell - 2 * w.bit_count()
            a = p if p >= 0 else -p
            if a > pv:
                vals[w] = a
                fus[w] = ell
            else:
                vals[w] = pv
                fus[w] = prev_fu[w & (half - 1)]
        _lut_val[ell] = vals
        _lut_fu[ell] = fus


def _build_chunk_tables() -> None:
    """16-bit walk tables: chunk sum and max/min prefix of the walk."""
    global _SUM16, _MAXP16, _MINP16
    if _SUM16 is not None:
        return
    sum8 = [0] * 256
    maxp8 = [0] * 256
    minp8 = [0] * 256
    for w in range(256):
        run = 0
        mx = -9
        mn = 9
        for j in range(8):
            run += 1 - (((w >> j) & 1) << 1)
            if run > mx:
                mx = run
            if run < mn:
                mn = run
        sum8[w] = run
        maxp8[w] = mx
        minp8[w] = mn
    _SUM16 = [0] * 65536
    _MAXP16 = [0] * 65536
    _MINP16 = [0] * 65536
    for w in range(65536):
        lo = w & 255
        hi = w >> 8
        s = sum8[lo]
        _SUM16[w] = s + sum8[hi]
        a = maxp8[lo]
        b = s + maxp8[hi]
        _MAXP16[w] = a if a > b else b
        a = minp8[lo]
        b = s + minp8[hi]
        _MINP16[w] = a if a < b else b


def _walk_extrema(t: int, ell: int):
    """Max |prefix sum| of the +/-1 walk encoded by the low ell bits of t
    (bit = 1 means a -1 step) and the first U attaining it."""
    if ell <= _LUT_MAX:
        if _lut_val[1] is None:
            _build_luts()
        return _lut_val[ell][t], _lut_fu[ell][t]
    if _SUM16 is None:
        _build_chunk_tables()
    sum16 = _SUM16
    maxp16 = _MAXP16
    minp16 = _MINP16
    full = ell >> 4
    rem = ell & 15
    run = 0
    mx = 0
    mn = 0
    sh = 0
    for _ in range(full):
        w = (t >> sh) & 0xFFFF
        v = run + maxp16[w]
        if v > mx:
            mx = v
        v = run + minp16[w]
        if v < mn:
            mn = v
        run += sum16[w]
        sh += 16
    for j in range(rem):
        run += 1 - (((t >> (sh + j)) & 1) << 1)
        if run > mx:
            mx = run
        elif run < mn:
            mn = run
    value = mx if mx > -mn else -mn
    # second pass: locate the first U with |walk| == value
    run = 0
    sh = 0
    off = 0
    for _ in range(full):
        w = (t >> sh) & 0xFFFF
        if run + maxp16[w] == value or run + minp16[w] == -value:
            for j in range(16):
                run += 1 - (((t >> (sh + j)) & 1) << 1)
                if run == value or -run == value:
                    return value, off + j + 1
        run += sum16[w]
        sh += 16
        off += 16
    for j in range(rem):
        run += 1 - (((t >> (sh + j)) & 1) << 1)
        if run == value or -run == value:
            return value, off + j + 1
    raise AssertionError("walk extremum not found on re-scan")


def _scan_bitparallel(bits: int, n: int, k: int, d_lo: int, d_hi: int):
    """Best (value, lags, first U) over canonical tuples with d_k in
    [d_lo, d_hi]."""
    best = -1
    best_lags = None
    best_u = 0
    shifted = [bits >> j for j in range(d_hi + 1)]
    for d in range(max(d_lo, k - 1), d_hi + 1):
        ell = n - d
        mask = (1 << ell) - 1
        base = shifted[d]
        if k == 1:
            val, fu = _walk_extrema(base & mask, ell)
            if val > best:
                best, best_lags, best_u = val, (d,), fu
            continue
        for rest in combinations(range(d), k - 1):
            t = base
            for dj in rest:
                t ^= shifted[dj]
            val, fu = _walk_extrema(t & mask, ell)
            if val > best:
                best, best_lags, best_u = val, rest + (d,), fu
    return best, best_lags, best_u


# worker-side state for parallel d_k-partitioned search
_par_state: dict = {}


def _par_init(bits: int, n: int, k: int) -> None:
    _par_state["args"] = (bits, n, k)


def _par_chunk(span: tuple) -> tuple:
    bits, n, k = _par_state["args"]
    return _scan_bitparallel(bits, n, k, span[0], span[1])


def _scan_parallel(bits: int, n: int, k: int, bound: int, workers: int):
    spans: list[tuple[int, int]] = []
    step = max(1, (bound + 1) // (workers * 8))
    lo = k - 1
    while lo <= bound:
        hi = min(bound, lo + step - 1)
        spans.append((lo, hi))
        lo = hi + 1
    results = _par.run_ordered(
        _par_chunk, spans, workers, initializer=_par_init, initargs=(bits, n, k)
    )
    best = -1
    best_lags = None
    best_u = 0
    for val, lags, fu in results:
        if val > best:
            best, best_lags, best_u = val, lags, fu
    return best, best_lags, best_u


# --- public binary API --------------------------------------------------------


def correlation(
    seq: Sequence,
    n: int | None = None,
    k: int = 1,
    max_lag: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    engine: str = "bitparallel",
) -> MeasureResult:
    """Exact correlation measure of order k of the length-n prefix.

    max_lag bounds d_k; a bound of n-1 (or above) covers every admissible
    tuple and is reported as plain exact mode.  The witness is the
    canonical maximizer: smallest d_k, then lexicographically smallest
    lags, then smallest U.
    """
    seq.require_binary()
    n, bound, mode = _resolve_args(seq, n, k, max_lag)
    _check_budget(n, k, bound, budget)
    if engine == "scalar":
        val, lags, fu = _scan_scalar(seq.symbols, n, k, bound)
    elif engine == "bitparallel":
        bits = seq.bits_int()
        if workers > 1 and comb(bound + 1, k) * n >= 4_000_000:
            val, lags, fu = _scan_parallel(bits, n, k, bound, workers)
        else:
            val, lags, fu = _scan_bitparallel(bits, n, k, 0, bound)
    else:
        raise ValidationError(f"unknown engine {engine!r}")
    return MeasureResult(
        value=val,
        k=k,
        n=n,
        witness_lags=lags,
        witness_U=fu,
        mode=mode,
        max_lag=bound if mode == "bounded" else None,
    )


def correlation_all(
    seq: Sequence,
    n: int | None = None,
    k_max: int = 1,
    max_lag: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    engine: str = "bitparallel",
) -> dict[int, MeasureResult]:
    """correlation() for every order 1..k_max (same options)."""
    if n is None:
        n = len(seq)
    if k_max > n:
        raise ValidationError(f"k_max={k_max} exceeds N={n}")
    return {
        k: correlation(
            seq, n, k, max_lag, budget=budget, workers=workers, engine=engine
        )
        for k in range(1, k_max + 1)
    }


def evaluate_sum(seq: Sequence, lags, u: int) -> int:
    """Signed correlation sum at one (lags, U): independent re-evaluation
    used to validate witnesses."""
    seq.require_binary()
    lags = tuple(lags)
    if not lags or list(lags) != sorted(set(lags)):
        raise ValidationError(f"lags must be strictly increasing, got {lags}")
    if u < 1 or u + lags[-1] > len(seq):
        raise ValidationError(f"window U={u} with d_k={lags[-1]} exceeds sequence")
    sym = seq.symbols
    total = 0
    for i in range(u):
        x = 0
        for d in lags:
            x ^= sym[i + d]
        total += 1 - (x << 1)
    return total


def sampled_correlation(
    seq: Sequence,
    n: int | None = None,
    k: int = 1,
    n_samples: int = 1000,
    seed: int = 0,
    max_lag: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> MeasureResult:
    """Maximum over n_samples uniformly drawn lag tuples: a certified lower
    bound on the exact measure, deterministic for a fixed seed.

    If n_samples covers every admissible tuple the search switches to the
    canonical full enumeration and the result matches exact mode.
    """
    seq.require_binary()
    if n_samples < 1:
        raise ValidationError(f"n_samples must be >= 1, got {n_samples}")
    n, bound, _ = _resolve_args(seq, n, k, max_lag)
    total = comb(bound + 1, k)
    bits = seq.bits_int()
    if n_samples >= total:
        _check_budget(n, k, bound, budget)
        val, lags, fu = _scan_bitparallel(bits, n, k, 0, bound)
    else:
        if n_samples * n > budget:
            raise BudgetExceededError(n_samples * n, budget, "reduce n_samples")
        rng = random.Random(seed)
        best = -1
        best_lags = None
        best_u = 0
        population = range(bound + 1)
        for _ in range(n_samples):
            lags = tuple(sorted(rng.sample(population, k)))
            d = lags[-1]
            ell = n - d
            t = 0
            for dj in lags:
                t ^= bits >> dj
            v, fu = _walk_extrema(t & ((1 << ell) - 1), ell)
            if v > best or (
                v == best
                and (lags[-1], lags, fu) < (best_lags[-1], best_lags, best_u)
            ):
                best, best_lags, best_u = v, lags, fu
        val, lags, fu = best, best_lags, best_u
    return MeasureResult(
        value=val,
        k=k,
        n=n,
        witness_lags=lags,
        witness_U=fu,
        mode="sampled",
        max_lag=bound if bound != n - 1 else None,
        n_samples=n_samples,
        seed=seed,
    )


# --- m-ary multiplier form ------------------------------------------------------

# exact cyclotomic coordinates: for m in {3, 4, 6} partial sums live in
# Z[xi] = Z a + Z b with an integer norm form
_EXACT_ROOTS = {
    3: ((1, 0), (0, 1), (-1, -1)),
    4: ((1, 0), (0, 1), (-1, 0), (0, -1)),
    6: ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)),
}


def _norm_sq(m: int, a: int, b: int) -> int:
    if m == 3:
        return a * a - a * b + b * b
    if m == 4:
        return a * a + b * b
    return a * a + a * b + b * b  # m == 6


def _mary_pass_exact(sym, n, m, lags, mods):
    """(best |sum|^2, first U) for one (lags, multipliers), exact integers."""
    d = lags[-1]
    roots = _EXACT_ROOTS[m]
    a = 0
    b = 0
    mx = -1
    fu = 0
    for i in range(n - d):
        e = 0
        for h, dj in zip(mods, lags):
            e += h * sym[i + dj]
        ra, rb = roots[e % m]
        a += ra
        b += rb
        nsq = _norm_sq(m, a, b)
        if nsq > mx:
            mx = nsq
            fu = i + 1
    return mx, fu


def _mary_pass_binary(sym, n, lags, mods):
    run = 0
    mx = -1
    fu = 0
    d = lags[-1]
    for i in range(n - d):
        x = 0
        for h, dj in zip(mods, lags):
            x += h * sym[i + dj]
        run += 1 - ((x & 1) << 1)
        a = run if run >= 0 else -run
        if a > mx:
            mx = a
            fu = i + 1
    return mx * mx, fu


def _mary_pass_float(sym, n, m, lags, mods, roots):
    z = 0j
    mx = -1.0
    fu = 0
    d = lags[-1]
    for i in range(n - d):
        e = 0
        for h, dj in zip(mods, lags):
            e += h * sym[i + dj]
        z += roots[e % m]
        nsq = z.real * z.real + z.imag * z.imag
        if nsq > mx + _FLOAT_TOL:
            mx = nsq
            fu = i + 1
    return mx, fu


def mary_correlation(
    seq: Sequence,
    n: int | None = None,
    k: int = 1,
    use_multipliers: bool = True,
    max_lag: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> MeasureResult:
    """Correlation measure of order k in the root-of-unity multiplier form.

    Maximizes |sum_i xi^(h_1 s_{i+d_1} + ... + h_k s_{i+d_k})| over lag
    tuples, window lengths, and (optionally) multipliers 1 <= h_j < m.
    For m = 2 the value coincides with the binary measure exactly.
    """
    m = seq.alphabet_m
    n, bound, mode = _resolve_args(seq, n, k, max_lag)
    h_count = (m - 1) ** k if use_multipliers else 1
    _check_budget(n, k, bound, budget, factor=h_count)
    sym = seq.symbols
    exact = m == 2 or m in _EXACT_ROOTS
    roots = None
    if not exact:
        roots = tuple(cmath.exp(2j * cmath.pi * r / m) for r in range(m))
    if use_multipliers:
        h_space = tuple(product(range(1, m), repeat=k))
    else:
        h_space = ((1,) * k,)
    best_sq: int | float = -1
    best_lags = None
    best_u = 0
    best_h = None
    for d in range(k - 1, bound + 1):
        for rest in combinations(range(d), k - 1):
            lags = rest + (d,)
            # within one lag tuple: largest value, then smallest U, then
            # lexicographically smallest multipliers
            loc_sq: int | float = -1
            loc_u = 0
            loc_h = None
            for mods in h_space:
                if m == 2:
                    nsq, fu = _mary_pass_binary(sym, n, lags, mods)
                elif exact:
                    nsq, fu = _mary_pass_exact(sym, n, m, lags, mods)
                else:
                    nsq, fu = _mary_pass_float(sym, n, m, lags, mods, roots)
                if nsq > loc_sq + (_FLOAT_TOL if not exact else 0) or (
                    _close(nsq, loc_sq, exact) and fu < loc_u
                ):
                    loc_sq, loc_u, loc_h = nsq, fu, mods
            if loc_sq > best_sq + (_FLOAT_TOL if not exact else 0):
                best_sq, best_lags, best_u, best_h = loc_sq, lags, loc_u, loc_h
    if m == 2:
        value: int | float = int(sqrt(best_sq) + 0.5)
        value_sq = value * value
    elif exact:
        value = sqrt(best_sq)
        value_sq = best_sq
    else:
        value = sqrt(best_sq) if best_sq > 0 else 0.0
        value_sq = best_sq
    return MeasureResult(
        value=value,
        k=k,
        n=n,
        witness_lags=best_lags,
        witness_U=best_u,
        mode=mode,
        alphabet_m=m,
        max_lag=bound if mode == "bounded" else None,
        multipliers=best_h,
        value_squared=value_sq,
    )


def _close(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(a - b) <= _FLOAT_TOL


def evaluate_mary_sum(seq: Sequence, lags, multipliers, u: int):
    """|sum|^2 (exact int for m in {2,3,4,6}, float otherwise) of one m-ary
    correlation sum: independent witness re-evaluation."""
    m = seq.alphabet_m
    lags = tuple(lags)
    mods = tuple(multipliers)
    if len(mods) != len(lags):
        raise ValidationError("one multiplier per lag required")
    if any(not 1 <= h < m for h in mods):
        raise ValidationError(f"multipliers must lie in [1, {m - 1}]")
    if u < 1 or u + lags[-1] > len(seq):
        raise ValidationError(f"window U={u} with d_k={lags[-1]} exceeds sequence")
    sym = seq.symbols
    if m == 2:
        run = 0
        for i in range(u):
            x = 0
            for h, dj in zip(mods, lags):
                x += h * sym[i + dj]
            run += 1 - ((x & 1) << 1)
        return run * run
    if m in _EXACT_ROOTS:
        roots = _EXACT_ROOTS[m]
        a = b = 0
        for i in range(u):
            e = 0
            for h, dj in zip(mods, lags):
                e += h * sym[i + dj]
            ra, rb = roots[e % m]
            a += ra
            b += rb
        return _norm_sq(m, a, b)
    z = 0j
    for i in range(u):
        e = 0
        for h, dj in zip(mods, lags):
            e += h * sym[i + dj]
        z += cmath.exp(2j * cmath.pi * (e % m) / m)
    return z.real * z.real + z.imag * z.imag


# --- brute-force oracles (tests only) -----------------------------------------


def oracle_correlation(
    seq: Sequence, n: int | None = None, k: int = 1, max_lag: int | None = None
) -> MeasureResult:
    """Definition-level search recomputing every (D, U) sum from scratch."""
    seq.require_binary()
    n, bound, mode = _resolve_args(seq, n, k, max_lag)
    if comb(bound + 1, k) * n * n > 20_000_000:
        raise ValidationError("oracle_correlation instance too large")
    best = -1
    best_lags = None
    best_u = 0
    for d in range(k - 1, bound + 1):
        for rest in combinations(range(d), k - 1):
            lags = rest + (d,)
            for u in range(1, n - d + 1):
                v = abs(evaluate_sum(seq, lags, u))
                if v > best:
                    best, best_lags, best_u = v, lags, u
    return MeasureResult(
        value=best,
        k=k,
        n=n,
        witness_lags=best_lags,
        witness_U=best_u,
        mode=mode,
        max_lag=bound if mode == "bounded" else None,
    )


def oracle_mary_correlation(
    seq: Sequence,
    n: int | None = None,
    k: int = 1,
    use_multipliers: bool = True,
    max_lag: int | None = None,
) -> MeasureResult:
    """Definition-level m-ary search recomputing every (D, H, U) sum."""
    m = seq.alphabet_m
    n, bound, mode = _resolve_args(seq, n, k, max_lag)
    h_count = (m - 1) ** k if use_multipliers else 1
    if comb(bound + 1, k) * h_count * n * n > 20_000_000:
        raise ValidationError("oracle_mary_correlation instance too large")
    exact = m == 2 or m in _EXACT_ROOTS
    h_space = (
        tuple(product(range(1, m), repeat=k)) if use_multipliers else ((1,) * k,)
    )
    best_sq: int | float = -1
    best_lags = None
    best_u = 0
    best_h = None
    for d in range(k - 1, bound + 1):
        for rest in combinations(range(d), k - 1):
            lags = rest + (d,)
            for u in range(1, n - d + 1):
                for mods in h_space:
                    nsq = evaluate_mary_sum(seq, lags, mods, u)
                    better = (
                        nsq > best_sq + (_FLOAT_TOL if not exact else 0)
                        if not exact
                        else nsq > best_sq
                    )
                    if better:
                        best_sq, best_lags, best_u, best_h = nsq, lags, u, mods
    if m == 2:
        value: int | float = int(sqrt(best_sq) + 0.5)
    else:
        value = sqrt(best_sq) if best_sq > 0 else 0.0
    return MeasureResult(
        value=value,
        k=k,
        n=n,
        witness_lags=best_lags,
        witness_U=best_u,
        mode=mode,
        alphabet_m=m,
        max_lag=bound if mode == "bounded" else None,
        multipliers=best_h,
        value_squared=best_sq,
    )
