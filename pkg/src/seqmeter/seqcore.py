"""Sequence representation, number-theoretic generators, and file I/O.

A Sequence is an immutable finite string of symbols over {0, ..., m-1}
together with a provenance record describing how it was produced.  The
generators here are exact integer constructions: the Legendre sequence
(quadratic residues modulo an odd prime), the two-prime product-of-
characters sequence, and a seeded uniform random sequence.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    NotPrimeError,
    SequenceFormatError,
    SymbolOutOfRangeError,
    UnsupportedAlphabetError,
    ValidationError,
)

# Deterministic Miller-Rabin witness set, valid for all n < 2^64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 1 << 64


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^64.

    Inputs >= 2^64 are rejected: every parameter this package accepts is
    desk-scale.
    """
    if n >= _MR_LIMIT:
        raise ValidationError(f"primality test limited to n < 2^64, got {n}")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre_symbol(a: int, p: int) -> int:
    """Quadratic character of a modulo an odd prime p via Euler's criterion.

    Returns 1 if a is a nonzero square mod p, -1 if a nonsquare, 0 if p | a.
    """
    ls = pow(a % p, (p - 1) // 2, p)
    return -1 if ls == p - 1 else ls


def _require_odd_prime(p: int, name: str = "p") -> None:
    if not is_prime(p):
        raise NotPrimeError(p, f"{name} must be an odd prime")
    if p == 2:
        raise NotPrimeError(p, f"{name} = 2 rejected, odd prime required")


@dataclass(frozen=True)
class PrimeParam:
    """One odd prime p, optionally paired with a larger odd prime q.

    Primality is verified at construction, so downstream code can trust
    the fields.
    """

    p: int
    q: int | None = None

    def __post_init__(self):
        _require_odd_prime(self.p, "p")
        if self.q is not None:
            _require_odd_prime(self.q, "q")
            if self.q == self.p:
                raise ValidationError(f"p and q must be distinct, got p = q = {self.p}")
            if self.q < self.p:
                raise ValidationError(f"require p < q, got p={self.p} > q={self.q}")


@dataclass(frozen=True)
class Sequence:
    """Finite symbol string over {0, ..., alphabet_m - 1}.

    Immutable after construction; safe to share across workers.  The
    provenance dict records generator name, parameters, and seed, and is
    treated as read-only.
    """

    symbols: tuple[int, ...]
    alphabet_m: int = 2
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.alphabet_m < 2:
            raise UnsupportedAlphabetError(
                f"alphabet_m must be >= 2, got {self.alphabet_m}"
            )
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        m = self.alphabet_m
        for i, s in enumerate(self.symbols):
            if not 0 <= s < m:
                raise SymbolOutOfRangeError(s, m, i)

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def require_binary(self) -> None:
        if self.alphabet_m != 2:
            raise UnsupportedAlphabetError(
                f"binary sequence required, alphabet_m={self.alphabet_m}"
            )

    def bits_int(self) -> int:
        """Bit-packed form of a binary sequence: bit i = symbols[i]."""
        self.require_binary()
        if not self.symbols:
            return 0
        # int() parses the reversed digit string at C speed
        return int("".join(map(str, reversed(self.symbols))), 2)

    def digits(self) -> str:
        return "".join(map(str, self.symbols))


def gen_legendre(p: int, length: int) -> Sequence:
    """Legendre sequence: 1 at quadratic non-residues mod p, 0 elsewhere.

    Position i gets 1 iff (i mod p) is a non-residue; multiples of p get 0.
    Period p.
    """
    _require_odd_prime(p)
    if length < 1:
        raise ValidationError(f"length must be >= 1, got {length}")
    period = [0] * p
    for r in range(1, p):
        if legendre_symbol(r, p) == -1:
            period[r] = 1
    reps = length // p + 1
    symbols = (period * reps)[:length]
    return Sequence(
        tuple(symbols),
        2,
        {"generator": "legendre", "p": p, "length": length},
    )


def gen_two_prime(p: int, q: int, length: int) -> Sequence:
    """Two-prime sequence of period pq from the product of the quadratic
    characters mod p and mod q.

    For gcd(i, pq) = 1 the symbol is 0 iff chi_p(i) * chi_q(i) = 1.  At
    indices sharing a factor with pq the zero character value is replaced
    by +1 before taking the product (character-extension convention), so
    the four-term relation t_i + t_{i+p} + t_{i+q} + t_{i+p+q} = 0 (mod 2)
    holds at every index.  In particular t_0 = 0.
    """
    PrimeParam(p, q)
    if length < 1:
        raise ValidationError(f"length must be >= 1, got {length}")
    pq = p * q
    period = [0] * pq
    chi_p = [legendre_symbol(r, p) or 1 for r in range(p)]
    chi_q = [legendre_symbol(r, q) or 1 for r in range(q)]
    for r in range(pq):
        period[r] = 0 if chi_p[r % p] * chi_q[r % q] == 1 else 1
    reps = length // pq + 1
    symbols = (period * reps)[:length]
    return Sequence(
        tuple(symbols),
        2,
        {
            "generator": "twoprime",
            "p": p,
            "q": q,
            "length": length,
            "boundary": "character-extension",
        },
    )


def gen_random(m: int, length: int, seed: int) -> Sequence:
    """Uniform i.i.d. symbols from a seeded Mersenne Twister.

    Deterministic function of (m, length, seed); the seed is recorded in
    provenance.
    """
    if m < 2:
        raise UnsupportedAlphabetError(f"m must be >= 2, got {m}")
    if length < 1:
        raise ValidationError(f"length must be >= 1, got {length}")
    rng = random.Random(seed)
    symbols = tuple(rng.randrange(m) for _ in range(length))
    return Sequence(
        symbols,
        m,
        {"generator": "random", "length": length, "seed": seed},
    )


def derive_seed(master: int, index: int) -> int:
    """Stable per-trial seed derivation (splitmix-style mix)."""
    x = (master + (index + 1) * 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


# --- file format -----------------------------------------------------------
#
# ASCII digits, one symbol per character ('0'-'9', so m <= 10), line breaks
# and other whitespace ignored.  Lines starting with '#' are header lines
# carrying key=value metadata (values JSON-encoded).

_MAX_FILE_ALPHABET = 10


def write_sequence(seq: Sequence, path) -> None:
    if seq.alphabet_m > _MAX_FILE_ALPHABET:
        raise UnsupportedAlphabetError(
            f"file format supports m <= {_MAX_FILE_ALPHABET}, got {seq.alphabet_m}"
        )
    meta = {"m": seq.alphabet_m}
    meta.update(seq.provenance)
    header = "# " + " ".join(f"{k}={json.dumps(v)}" for k, v in meta.items())
    digits = seq.digits()
    lines = [header]
    for i in range(0, len(digits), 80):
        lines.append(digits[i : i + 80])
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_sequence(path, alphabet_m: int | None = None) -> Sequence:
    """Read a sequence file.

    Alphabet size resolution: explicit argument wins, then an 'm' header
    key, then max(symbol) + 1 (at least 2).
    """
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise SequenceFormatError(f"non-ASCII byte in {path}: {exc}") from exc
    meta: dict = {}
    digits: list[int] = []
    pos = 0
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("#"):
            for token in stripped[1:].split():
                if "=" in token:
                    key, _, raw = token.partition("=")
                    try:
                        meta[key] = json.loads(raw)
                    except json.JSONDecodeError:
                        meta[key] = raw
            continue
        for ch in line:
            if ch.isspace():
                continue
            if not ch.isdigit():
                raise SequenceFormatError(
                    f"illegal character {ch!r} at symbol position {pos} in {path}"
                )
            digits.append(int(ch))
            pos += 1
    if not digits:
        raise SequenceFormatError(f"no symbols found in {path}")
    if alphabet_m is not None:
        m = alphabet_m
    elif isinstance(meta.get("m"), int):
        m = meta["m"]
    else:
        m = max(2, max(digits) + 1)
    meta.pop("m", None)
    return Sequence(tuple(digits), m, meta)
