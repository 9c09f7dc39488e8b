"""Nth linear complexity and Nth maximum-order complexity.

Linear complexity is computed by Berlekamp-Massey over GF(2) on a
bit-packed prefix, one pass yielding the whole per-prefix profile.
Maximum-order complexity uses an online suffix automaton: M equals one
plus the length of the longest word that occurs twice in the prefix with
different successor symbols, and that conflict length is exactly the
largest state length whose out-degree reaches two during construction.

Both measures come with definition-level brute-force oracles used only by
tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .seqcore import Sequence


@dataclass(frozen=True)
class ComplexityProfile:
    """Per-prefix-length measure values: values[n-1] is the measure of the
    length-n prefix."""

    kind: str  # "linear" | "maximum-order"
    values: tuple[int, ...]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("linear", "maximum-order"):
            raise ValidationError(f"unknown profile kind {self.kind!r}")
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "values": list(self.values),
            "provenance": dict(self.provenance),
        }


def _check_prefix(seq: Sequence, n: int, binary: bool = True) -> None:
    if binary:
        seq.require_binary()
    if n < 1:
        raise ValidationError(f"N must be >= 1, got {n}")
    if n > len(seq):
        raise ValidationError(f"N={n} exceeds sequence length {len(seq)}")


def _bm_pass(seq: Sequence, n: int, want_profile: bool):
    """Berlekamp-Massey over GF(2) with bit-packed polynomials.

    Connection polynomial C(x) = 1 + C_1 x + ... satisfies
    sum_j C_j s_{i-j} = 0 for L <= i < n.  R holds the processed bits
    reversed (bit j = s_{i-1-j}) so the discrepancy is one AND + popcount.
    """
    sym = seq.symbols
    c_poly = 1
    b_poly = 1
    length = 0
    m_gap = 1
    rev = 0
    profile = [] if want_profile else None
    for i in range(n):
        bit = sym[i]
        if length:
            d = bit ^ (((c_poly >> 1) & rev & ((1 << length) - 1)).bit_count() & 1)
        else:
            d = bit
        if d:
            if 2 * length <= i:
                c_poly, b_poly = c_poly ^ (b_poly << m_gap), c_poly
                length = i + 1 - length
                m_gap = 1
            else:
                c_poly ^= b_poly << m_gap
                m_gap += 1
        else:
            m_gap += 1
        rev = (rev << 1) | bit
        if want_profile:
            profile.append(length)
    return length, c_poly, profile


def linear_complexity(seq: Sequence, n: int) -> int:
    """Shortest linear recurrence over GF(2) fitting the length-n prefix.

    Conventions: 0 for the all-zero prefix; n when only the last bit of
    the prefix is nonzero.
    """
    _check_prefix(seq, n)
    length, _, _ = _bm_pass(seq, n, False)
    return length


def linear_recurrence(seq: Sequence, n: int) -> tuple[int, tuple[int, ...]]:
    """Linear complexity L plus recurrence coefficients (c_0, ..., c_{L-1})
    with s_{i+L} = c_{L-1} s_{i+L-1} + ... + c_0 s_i over GF(2), valid for
    0 <= i <= n-L-1."""
    _check_prefix(seq, n)
    length, c_poly, _ = _bm_pass(seq, n, False)
    coeffs = tuple((c_poly >> (length - t)) & 1 for t in range(length))
    return length, coeffs


def linear_complexity_profile(seq: Sequence, n: int) -> ComplexityProfile:
    _check_prefix(seq, n)
    _, _, profile = _bm_pass(seq, n, True)
    return ComplexityProfile("linear", tuple(profile), dict(seq.provenance))


class SuffixAutomaton:
    """Online suffix automaton over an arbitrary integer alphabet.

    Tracks the largest state length whose out-degree reaches two, i.e. the
    longest word seen at two positions with different successors.  After
    feeding a prefix, max_order() is that conflict length plus one.
    """

    __slots__ = ("nxt", "link", "length", "last", "best_conflict", "size")

    def __init__(self):
        self.nxt: list[dict] = [{}]
        self.link = [-1]
        self.length = [0]
        self.last = 0
        self.best_conflict = 0
        self.size = 0

    def extend(self, c: int) -> None:
        nxt = self.nxt
        link = self.link
        length = self.length
        cur = len(nxt)
        nxt.append({})
        length.append(length[self.last] + 1)
        link.append(0)
        best = self.best_conflict
        p = self.last
        while p != -1 and c not in nxt[p]:
            if nxt[p] and length[p] > best:
                best = length[p]
            nxt[p][c] = cur
            p = link[p]
        if p != -1:
            q = nxt[p][c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = len(nxt)
                nxt.append(dict(nxt[q]))
                length.append(length[p] + 1)
                link.append(link[q])
                while p != -1 and nxt[p].get(c) == q:
                    nxt[p][c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        self.last = cur
        self.best_conflict = best
        self.size += 1

    def max_order(self) -> int:
        return self.best_conflict + 1


def max_order_complexity(seq: Sequence, n: int) -> int:
    """Smallest window length M whose windows-to-successor map is
    single-valued on the length-n prefix (1 when the constraint range is
    empty, e.g. n = 1)."""
    _check_prefix(seq, n, binary=False)
    sa = SuffixAutomaton()
    sym = seq.symbols
    for i in range(n):
        sa.extend(sym[i])
    return sa.max_order()


def max_order_profile(seq: Sequence, n: int) -> ComplexityProfile:
    _check_prefix(seq, n, binary=False)
    sa = SuffixAutomaton()
    sym = seq.symbols
    values = []
    for i in range(n):
        sa.extend(sym[i])
        values.append(sa.max_order())
    return ComplexityProfile("maximum-order", tuple(values), dict(seq.provenance))


# --- brute-force oracles (tests only) ---------------------------------------

_ORACLE_LINEAR_MAX_N = 24
_ORACLE_MAXORDER_MAX_N = 4096


def oracle_linear_complexity(seq: Sequence, n: int) -> int:
    """Exhaustive search over all 2^L coefficient vectors, smallest L first.

    Definition-level; limited to n <= 24.
    """
    _check_prefix(seq, n)
    if n > _ORACLE_LINEAR_MAX_N:
        raise ValidationError(
            f"linear oracle limited to N <= {_ORACLE_LINEAR_MAX_N}, got {n}"
        )
    sym = seq.symbols[:n]
    if not any(sym):
        return 0
    for order in range(1, n):
        windows = []
        for i in range(n - order):
            w = 0
            for t in range(order):
                w |= sym[i + t] << t
            windows.append((w, sym[i + order]))
        for coeff in range(1 << order):
            if all((coeff & w).bit_count() & 1 == target for w, target in windows):
                return order
    return n


def oracle_max_order(seq: Sequence, n: int) -> int:
    """Quadratic window-map scan, smallest M first; limited to n <= 4096."""
    _check_prefix(seq, n, binary=False)
    if n > _ORACLE_MAXORDER_MAX_N:
        raise ValidationError(
            f"max-order oracle limited to N <= {_ORACLE_MAXORDER_MAX_N}, got {n}"
        )
    if n == 1:
        return 1
    sym = seq.symbols
    for order in range(1, n):
        seen: dict = {}
        ok = True
        for i in range(n - order):
            w = sym[i : i + order]
            nxt = sym[i + order]
            prev = seen.get(w)
            if prev is None:
                seen[w] = nxt
            elif prev != nxt:
                ok = False
                break
        if ok:
            return order
    return n - 1
