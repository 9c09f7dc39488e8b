"""Empirical verification of the complexity/correlation inequalities.

Three point checks produce BoundReports:

* eq1:   L >= N - max_{1<=k<=L+1} C_k
* thm1:  M >= N - 2^(M+1) * max_{1<=k<=M+1} C_k, optionally with all lags
         restricted to [0, M] (a strictly stronger variant: only those lags
         arise when the window-map constraint is expanded)
* prime_m: the m-ary analogue M >= N - 2 m^M max_k C_k for prime m, with
         the multiplier-form correlation

A violated inequality signals an implementation bug, never a finding: the
statements are theorems.  Reports therefore carry every component and the
full witnesses so a failure can be isolated.

Drivers: exhaustive small-case sweeps, the two-prime structured-lag
demonstration, Legendre-sequence scale reports, and Monte Carlo ensemble
statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import _par
from .complexity import linear_complexity, max_order_complexity
from .correlation import (
    DEFAULT_BUDGET,
    MeasureResult,
    correlation,
    evaluate_sum,
    mary_correlation,
    sampled_correlation,
)
from .errors import UnsupportedAlphabetError, ValidationError
from .seqcore import Sequence, derive_seed, gen_legendre, gen_random, gen_two_prime, is_prime

_INEQUALITIES = ("eq1", "thm1", "thm1_bounded_lags", "prime_m")

# sequence digits are embedded in reports up to this length so witnesses
# can be re-evaluated from the report alone
_EMBED_LIMIT = 4096


@dataclass(frozen=True)
class BoundReport:
    """All components of one inequality check."""

    inequality_id: str
    n: int
    left_value: int
    per_k: dict
    max_correlation: int | float
    right_value: int | float
    holds: bool
    parameters: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    sequence_digits: str | None = None

    def recompute_right(self) -> int | float:
        """Right-hand side rebuilt from the stored components."""
        mx = max(self.per_k.values())
        if self.inequality_id == "eq1":
            return self.n - mx
        if self.inequality_id in ("thm1", "thm1_bounded_lags"):
            return self.n - (1 << (self.left_value + 1)) * mx
        if self.inequality_id == "prime_m":
            m = self.parameters["m"]
            return self.n - 2 * m**self.left_value * mx
        raise ValidationError(f"unknown inequality {self.inequality_id!r}")

    def to_dict(self) -> dict:
        d = {
            "inequality_id": self.inequality_id,
            "N": self.n,
            "left_value": self.left_value,
            "per_k": {str(k): v for k, v in sorted(self.per_k.items())},
            "max_correlation": self.max_correlation,
            "right_value": self.right_value,
            "holds": self.holds,
            "parameters": dict(self.parameters),
            "witnesses": {str(k): w for k, w in sorted(self.witnesses.items())},
        }
        if self.sequence_digits is not None:
            d["sequence"] = self.sequence_digits
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(
            inequality_id=d["inequality_id"],
            n=d["N"],
            left_value=d["left_value"],
            per_k={int(k): v for k, v in d["per_k"].items()},
            max_correlation=d["max_correlation"],
            right_value=d["right_value"],
            holds=d["holds"],
            parameters=dict(d.get("parameters", {})),
            witnesses={int(k): w for k, w in d.get("witnesses", {}).items()},
            sequence_digits=d.get("sequence"),
        )


@dataclass(frozen=True)
class ExperimentSummary:
    """Aggregate statistics over a sequence ensemble or sweep."""

    kind: str
    params: dict
    stats: dict
    reference_scales: dict
    violations: int
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "stats": {k: dict(v) for k, v in self.stats.items()},
            "reference_scales": dict(self.reference_scales),
            "violations": self.violations,
            "extras": dict(self.extras),
        }


def _witness_dict(r: MeasureResult) -> dict:
    w = {"lags": list(r.witness_lags), "U": r.witness_U, "mode": r.mode}
    if r.multipliers is not None:
        w["multipliers"] = list(r.multipliers)
    return w


def _k_range(left: int, n: int) -> tuple[int, bool]:
    """k runs to left+1 as written, clamped to n (C_k undefined for k > n)."""
    want = left + 1
    return min(want, n), want > n


def check_eq1(
    seq: Sequence,
    n: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> BoundReport:
    seq.require_binary()
    if n is None:
        n = len(seq)
    left = linear_complexity(seq, n)
    k_max, clamped = _k_range(left, n)
    per_k: dict = {}
    witnesses: dict = {}
    for k in range(1, k_max + 1):
        r = correlation(seq, n, k, budget=budget, workers=workers)
        per_k[k] = r.value
        witnesses[k] = _witness_dict(r)
    mx = max(per_k.values())
    right = n - mx
    return BoundReport(
        inequality_id="eq1",
        n=n,
        left_value=left,
        per_k=per_k,
        max_correlation=mx,
        right_value=right,
        holds=left >= right,
        parameters={"m": 2, "k_range": [1, k_max], "k_range_clamped": clamped},
        witnesses=witnesses,
        sequence_digits=seq.digits() if n <= _EMBED_LIMIT else None,
    )


def check_thm1(
    seq: Sequence,
    n: int | None = None,
    restrict_lags: bool = False,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> BoundReport:
    seq.require_binary()
    if n is None:
        n = len(seq)
    left = max_order_complexity(seq, n)
    k_max, clamped = _k_range(left, n)
    lag_bound = left if restrict_lags else None
    per_k: dict = {}
    witnesses: dict = {}
    for k in range(1, k_max + 1):
        r = correlation(seq, n, k, lag_bound, budget=budget, workers=workers)
        per_k[k] = r.value
        witnesses[k] = _witness_dict(r)
    mx = max(per_k.values())
    right = n - (1 << (left + 1)) * mx
    return BoundReport(
        inequality_id="thm1_bounded_lags" if restrict_lags else "thm1",
        n=n,
        left_value=left,
        per_k=per_k,
        max_correlation=mx,
        right_value=right,
        holds=left >= right,
        parameters={
            "m": 2,
            "k_range": [1, k_max],
            "k_range_clamped": clamped,
            "lag_bound": lag_bound,
        },
        witnesses=witnesses,
        sequence_digits=seq.digits() if n <= _EMBED_LIMIT else None,
    )


def check_prime_m(
    seq: Sequence,
    n: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> BoundReport:
    """m-ary extension for prime alphabet size, multiplier-form correlation.

    For m = 2 the right-hand side equals check_thm1's exactly.  holds is
    decided in exact integer arithmetic whenever the alphabet admits exact
    cyclotomic coordinates (m in {2, 3}); the reported right_value is then
    the rounded float image of the same quantity.
    """
    m = seq.alphabet_m
    if not is_prime(m):
        raise UnsupportedAlphabetError(
            f"prime alphabet required (power correlation for composite m "
            f"is out of scope), got m={m}"
        )
    if n is None:
        n = len(seq)
    left = max_order_complexity(seq, n)
    k_max, clamped = _k_range(left, n)
    per_k: dict = {}
    per_k_sq: dict = {}
    witnesses: dict = {}
    for k in range(1, k_max + 1):
        r = mary_correlation(seq, n, k, use_multipliers=True, budget=budget)
        per_k[k] = r.value
        per_k_sq[k] = r.value_squared
        witnesses[k] = _witness_dict(r)
    exact = all(isinstance(v, int) for v in per_k_sq.values())
    scale = 2 * m**left
    if m == 2:
        mx = max(per_k.values())
        right: int | float = n - scale * mx
        holds = left >= right
    elif exact:
        mx_sq = max(per_k_sq.values())
        mx = math.sqrt(mx_sq)
        right = n - scale * mx
        gap = n - left
        # left >= n - scale*sqrt(mx_sq)  <=>  scale^2 * mx_sq >= (n - left)^2
        holds = gap <= 0 or scale * scale * mx_sq >= gap * gap
    else:
        mx = max(per_k.values())
        right = n - scale * mx
        holds = left >= right - 1e-9
    return BoundReport(
        inequality_id="prime_m",
        n=n,
        left_value=left,
        per_k=per_k,
        max_correlation=mx,
        right_value=right,
        holds=holds,
        parameters={
            "m": m,
            "k_range": [1, k_max],
            "k_range_clamped": clamped,
            "exact_arithmetic": exact or m == 2,
            "per_k_squared": {str(k): v for k, v in sorted(per_k_sq.items())},
        },
        witnesses=witnesses,
        sequence_digits=seq.digits() if n <= _EMBED_LIMIT else None,
    )


def run_check(
    seq: Sequence,
    inequality_id: str,
    n: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> BoundReport:
    if inequality_id == "eq1":
        return check_eq1(seq, n, budget=budget, workers=workers)
    if inequality_id == "thm1":
        return check_thm1(seq, n, budget=budget, workers=workers)
    if inequality_id == "thm1_bounded_lags":
        return check_thm1(seq, n, restrict_lags=True, budget=budget, workers=workers)
    if inequality_id == "prime_m":
        return check_prime_m(seq, n, budget=budget)
    raise ValidationError(
        f"unknown inequality {inequality_id!r}, expected one of {_INEQUALITIES}"
    )


# --- exhaustive sweeps --------------------------------------------------------

_sweep_state: dict = {}


def _sweep_init(m: int, inequality_id: str, budget: int) -> None:
    _sweep_state["args"] = (m, inequality_id, budget)


def _sweep_chunk(task: tuple) -> tuple:
    """Check every m-ary sequence of length n with code in [lo, hi).

    Codes enumerate symbol tuples little-endian in base m.  Returns
    (violations, min_slack, argmin_digits, first_violation_digits).
    """
    m, inequality_id, budget = _sweep_state["args"]
    n, lo, hi = task
    violations = 0
    min_slack = None
    argmin = None
    first_violation = None
    for code in range(lo, hi):
        c = code
        sym = [0] * n
        for i in range(n):
            sym[i] = c % m
            c //= m
        seq = Sequence(tuple(sym), m)
        rep = run_check(seq, inequality_id, n, budget=budget)
        slack = rep.left_value - rep.right_value
        if not rep.holds:
            violations += 1
            if first_violation is None:
                first_violation = seq.digits()
        if min_slack is None or slack < min_slack:
            min_slack = slack
            argmin = seq.digits()
    return violations, min_slack, argmin, first_violation


def exhaustive_sweep(
    m: int,
    n_max: int,
    inequality_id: str,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    max_sequences: int = 20_000,
) -> ExperimentSummary:
    """Run one inequality check on every m-ary sequence of every length
    <= n_max.  Violations must be zero; the minimum slack (left - right)
    and its witness sequence are recorded and re-checkable."""
    if inequality_id not in _INEQUALITIES:
        raise ValidationError(f"unknown inequality {inequality_id!r}")
    if inequality_id != "prime_m" and m != 2:
        raise ValidationError(f"{inequality_id} is a binary check, got m={m}")
    if inequality_id == "prime_m" and not is_prime(m):
        raise UnsupportedAlphabetError(f"prime m required, got {m}")
    total = sum(m**n for n in range(1, n_max + 1))
    if total > max_sequences:
        raise ValidationError(
            f"sweep of {total} sequences exceeds max_sequences={max_sequences}"
        )
    tasks = []
    chunk = 512
    for n in range(1, n_max + 1):
        count = m**n
        for lo in range(0, count, chunk):
            tasks.append((n, lo, min(lo + chunk, count)))
    results = _par.run_ordered(
        _sweep_chunk,
        tasks,
        workers,
        initializer=_sweep_init,
        initargs=(m, inequality_id, budget),
    )
    violations = 0
    min_slack = None
    argmin = None
    first_violation = None
    for v, slack, digits, viol_digits in results:
        violations += v
        if first_violation is None and viol_digits is not None:
            first_violation = viol_digits
        if slack is not None and (min_slack is None or slack < min_slack):
            min_slack = slack
            argmin = digits
    extras = {"min_slack_sequence": argmin}
    if first_violation is not None:
        extras["first_violation_sequence"] = first_violation
    return ExperimentSummary(
        kind="exhaustive_sweep",
        params={
            "m": m,
            "n_max": n_max,
            "inequality_id": inequality_id,
            "sequences": total,
        },
        stats={"slack": {"min": min_slack}},
        reference_scales={},
        violations=violations,
        extras=extras,
    )


# --- structured generator reports ----------------------------------------------


@dataclass(frozen=True)
class TwoPrimeReport:
    p: int
    q: int
    n: int
    identity_rate: float
    identity_rate_full: float
    safe_count: int
    full_count: int
    c4_structured: int
    structured_lags: tuple
    structured_U: int
    bounded: dict  # k -> MeasureResult, lags below max_lag
    max_lag: int

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "N": self.n,
            "identity_rate": self.identity_rate,
            "identity_rate_full": self.identity_rate_full,
            "safe_count": self.safe_count,
            "full_count": self.full_count,
            "C4_structured": self.c4_structured,
            "structured_lags": list(self.structured_lags),
            "structured_U": self.structured_U,
            "bounded": {str(k): r.to_dict() for k, r in sorted(self.bounded.items())},
            "max_lag": self.max_lag,
        }


def two_prime_report(
    p: int,
    q: int,
    max_lag: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> TwoPrimeReport:
    """Order-4 blow-up demonstration for the two-prime sequence.

    (a) rate of indices satisfying the 4-term identity, over the safe set
    (all four window positions coprime to pq) and over the full
    gcd(i, pq) = 1 set; (b) the single structured sum at lags
    (0, p, q, p+q) with U = pq - p - q; (c) exact bounded-lag C_k for
    k <= 4 with lags below p.
    """
    n = p * q
    seq = gen_two_prime(p, q, n + p + q)
    sym = seq.symbols
    safe = safe_ok = full = full_ok = 0
    for i in range(n):
        parity = (sym[i] + sym[i + p] + sym[i + q] + sym[i + p + q]) & 1
        if math.gcd(i, n) == 1:
            full += 1
            full_ok += parity == 0
            if math.gcd(i + q, p) == 1 and math.gcd(i + p, q) == 1:
                safe += 1
                safe_ok += parity == 0
    lags = (0, p, q, p + q)
    u = n - p - q
    c4 = abs(evaluate_sum(seq, lags, u))
    bound = max_lag if max_lag is not None else p - 1
    # orders whose tuples cannot fit under the bound are omitted
    bounded = {
        k: correlation(seq, n, k, bound, budget=budget, workers=workers)
        for k in range(1, 5)
        if bound >= k - 1
    }
    return TwoPrimeReport(
        p=p,
        q=q,
        n=n,
        identity_rate=safe_ok / safe,
        identity_rate_full=full_ok / full,
        safe_count=safe,
        full_count=full,
        c4_structured=c4,
        structured_lags=lags,
        structured_U=u,
        bounded=bounded,
        max_lag=bound,
    )


@dataclass(frozen=True)
class LegendreReport:
    p: int
    n: int
    max_order: int
    per_k: dict  # k -> MeasureResult
    ratios: dict  # k -> value / (k sqrt(p) ln p)
    scale_eq3: float  # log2(min(N, p) / sqrt(p))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "N": self.n,
            "max_order": self.max_order,
            "per_k": {str(k): r.to_dict() for k, r in sorted(self.per_k.items())},
            "ratios": {str(k): v for k, v in sorted(self.ratios.items())},
            "scale_eq3": self.scale_eq3,
        }


def legendre_report(
    p: int,
    n: int | None = None,
    k_max: int = 2,
    *,
    n_samples: int = 2000,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> LegendreReport:
    """Correlation scales of the Legendre sequence: exact C_k for k <= 2,
    sampled lower bounds beyond, each against the k sqrt(p) log p scale,
    plus the maximum-order complexity and its log2(min(N,p)/sqrt(p))
    reference."""
    if n is None:
        n = p
    if n > p:
        raise ValidationError(f"N={n} exceeds the period p={p}")
    seq = gen_legendre(p, n)
    per_k: dict = {}
    ratios: dict = {}
    for k in range(1, k_max + 1):
        if k <= 2:
            r = correlation(seq, n, k, budget=budget, workers=workers)
        else:
            r = sampled_correlation(
                seq, n, k, n_samples=n_samples, seed=derive_seed(seed, k)
            )
        per_k[k] = r
        ratios[k] = r.value / (k * math.sqrt(p) * math.log(p))
    return LegendreReport(
        p=p,
        n=n,
        max_order=max_order_complexity(seq, n),
        per_k=per_k,
        ratios=ratios,
        scale_eq3=math.log2(min(n, p) / math.sqrt(p)),
    )


# --- Monte Carlo ensembles ------------------------------------------------------

_stats_state: dict = {}


def _stats_init(m, n, seed, c2_exact_limit, n_samples, budget) -> None:
    _stats_state["args"] = (m, n, seed, c2_exact_limit, n_samples, budget)


def _stats_trial(t: int) -> tuple:
    m, n, seed, c2_exact_limit, n_samples, budget = _stats_state["args"]
    trial_seed = derive_seed(seed, t)
    seq = gen_random(m, n, trial_seed)
    order = max_order_complexity(seq, n)
    c2 = None
    c2_mode = None
    if m == 2 and n >= 2:
        if n <= c2_exact_limit:
            r = correlation(seq, n, 2, budget=budget)
        else:
            r = sampled_correlation(
                seq, n, 2, n_samples=n_samples, seed=derive_seed(trial_seed, 1)
            )
        c2 = r.value
        c2_mode = r.mode
    return t, trial_seed, order, c2, c2_mode


def _describe(values: list) -> dict:
    vals = sorted(values)
    count = len(vals)
    mid = count // 2
    median = vals[mid] if count % 2 else (vals[mid - 1] + vals[mid]) / 2
    return {
        "mean": sum(vals) / count,
        "min": vals[0],
        "max": vals[-1],
        "median": median,
        "count": count,
    }


def random_stats(
    m: int,
    n: int,
    trials: int,
    seed: int,
    *,
    c2_exact_limit: int = 1024,
    n_samples: int = 300,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> ExperimentSummary:
    """Ensemble statistics of M and C_2 over seeded random sequences,
    against the log2(N) and sqrt(2 N ln N) magnitude baselines.

    Purely descriptive: no inequality checks are run here (violations is
    0 by construction); acceptance asserts the ensemble bands.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    rows = _par.run_ordered(
        _stats_trial,
        range(trials),
        workers,
        initializer=_stats_init,
        initargs=(m, n, seed, c2_exact_limit, n_samples, budget),
    )
    orders = [r[2] for r in rows]
    c2s = [r[3] for r in rows if r[3] is not None]
    stats = {"max_order": _describe(orders)}
    if c2s:
        stats["C2"] = _describe(c2s)
        stats["C2"]["mode"] = rows[0][4]
    return ExperimentSummary(
        kind="random_stats",
        params={"generator": "random", "m": m, "N": n, "trials": trials, "seed": seed},
        stats=stats,
        reference_scales={
            "log2_N": math.log2(n),
            "sqrt_2N_lnN": math.sqrt(2 * n * math.log(n)),
        },
        violations=0,
        extras={
            "checks": "none",
            "rows": [
                {"trial": r[0], "seed": r[1], "M": r[2], "C2": r[3]} for r in rows
            ],
        },
    )
