import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqmeter import (
    NotPrimeError,
    PrimeParam,
    Sequence,
    SequenceFormatError,
    SymbolOutOfRangeError,
    UnsupportedAlphabetError,
    ValidationError,
    gen_legendre,
    gen_random,
    gen_two_prime,
    is_prime,
    legendre_symbol,
    read_sequence,
    write_sequence,
)

from conftest import bits_seq


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 1009}
    for n in range(2, 50):
        assert is_prime(n) == (n in primes)
    assert is_prime(1009)
    assert not is_prime(1)
    assert not is_prime(1007)  # 19 * 53


def test_legendre_symbol_euler():
    for p in (3, 5, 7, 11, 13):
        squares = {(x * x) % p for x in range(1, p)}
        for a in range(p):
            expected = 0 if a == 0 else (1 if a in squares else -1)
            assert legendre_symbol(a, p) == expected


def test_gen_legendre_examples():
    assert list(gen_legendre(3, 3)) == [0, 0, 1]
    assert list(gen_legendre(7, 7)) == [0, 0, 0, 1, 0, 1, 1]
    # position 7 wraps to position 0, the "otherwise" branch
    assert list(gen_legendre(7, 8)) == [0, 0, 0, 1, 0, 1, 1, 0]


def test_gen_legendre_rejects():
    with pytest.raises(NotPrimeError):
        gen_legendre(8, 5)
    with pytest.raises(NotPrimeError):
        gen_legendre(2, 5)
    with pytest.raises(ValidationError):
        gen_legendre(7, 0)


def test_gen_legendre_periodicity():
    for p in (3, 5, 7, 11, 31, 97):
        seq = gen_legendre(p, 3 * p)
        period = seq.symbols[:p]
        for start in range(0, 2 * p + 1, p):
            assert seq.symbols[start : start + p] == period


def test_gen_legendre_ones_count():
    # exactly (p-1)/2 non-residues per period
    p = 3
    while p <= 1000:
        if is_prime(p):
            seq = gen_legendre(p, p)
            assert sum(seq) == (p - 1) // 2, p
        p += 2


def test_gen_two_prime_examples():
    t = gen_two_prime(3, 5, 16)
    assert t[1] == 0  # chi_3(1) = chi_5(1) = 1
    assert t[2] == 0  # (-1) * (-1)
    assert t[7] == 1  # (+1) * (-1)
    assert t[0] == 0


def test_gen_two_prime_character_values():
    # on indices coprime to pq the symbol encodes the character product
    p, q = 5, 7
    t = gen_two_prime(p, q, p * q)
    for i in range(p * q):
        if math.gcd(i, p * q) == 1:
            expect = 0 if legendre_symbol(i, p) * legendre_symbol(i, q) == 1 else 1
            assert t[i] == expect


def test_gen_two_prime_identity_safe_set():
    for p, q in ((3, 5), (5, 7), (7, 11)):
        pq = p * q
        t = gen_two_prime(p, q, pq + p + q)
        for i in range(pq):
            if (
                math.gcd(i, pq) == 1
                and math.gcd(i + q, p) == 1
                and math.gcd(i + p, q) == 1
            ):
                assert (t[i] + t[i + p] + t[i + q] + t[i + p + q]) % 2 == 0


def test_gen_two_prime_rejects():
    with pytest.raises(NotPrimeError):
        gen_two_prime(2, 7, 5)
    with pytest.raises(NotPrimeError):
        gen_two_prime(5, 9, 5)
    with pytest.raises(ValidationError):
        gen_two_prime(5, 5, 5)
    with pytest.raises(ValidationError):
        gen_two_prime(7, 5, 5)


def test_prime_param_validates_on_construction():
    PrimeParam(7)
    PrimeParam(5, 7)
    with pytest.raises(NotPrimeError):
        PrimeParam(9)
    with pytest.raises(NotPrimeError):
        PrimeParam(2)
    with pytest.raises(NotPrimeError):
        PrimeParam(5, 15)
    with pytest.raises(ValidationError):
        PrimeParam(7, 5)
    with pytest.raises(ValidationError):
        PrimeParam(5, 5)


def test_gen_random_deterministic():
    a = gen_random(2, 1000, 42)
    b = gen_random(2, 1000, 42)
    assert a == b
    assert a.provenance["seed"] == 42
    assert gen_random(2, 1000, 43) != a


def test_gen_random_alphabet():
    seq = gen_random(3, 5, 9)
    assert all(0 <= s < 3 for s in seq)
    with pytest.raises(UnsupportedAlphabetError):
        gen_random(1, 5, 0)


def test_gen_random_balance():
    # binomial concentration: ones fraction near 1/2 for most seeds
    hits = 0
    for seed in range(100):
        seq = gen_random(2, 10_000, seed)
        if 0.45 <= sum(seq) / 10_000 <= 0.55:
            hits += 1
    assert hits >= 99


def test_sequence_validation():
    with pytest.raises(SymbolOutOfRangeError):
        Sequence((0, 1, 2), 2)
    with pytest.raises(UnsupportedAlphabetError):
        Sequence((0,), 1)
    bits_seq("01").require_binary()  # fine
    with pytest.raises(UnsupportedAlphabetError):
        Sequence((0, 1, 2), 3).require_binary()


def test_bits_int():
    assert bits_seq("0011").bits_int() == 0b1100
    assert bits_seq("1").bits_int() == 1


def test_read_write_round_trip(tmp_path):
    seq = gen_two_prime(3, 5, 20)
    path = tmp_path / "t.txt"
    write_sequence(seq, path)
    back = read_sequence(path)
    assert back == seq


@settings(max_examples=60)
@given(
    symbols=st.lists(st.integers(0, 2), min_size=1, max_size=200),
    seed=st.integers(0, 2**32),
)
def test_round_trip_property(symbols, seed):
    import tempfile

    seq = Sequence(tuple(symbols), 3, {"generator": "test", "seed": seed})
    with tempfile.TemporaryDirectory() as tmp:
        path = f"{tmp}/s.txt"
        write_sequence(seq, path)
        assert read_sequence(path) == seq


def test_read_plain_digits(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("0101\n")
    seq = read_sequence(path, 2)
    assert list(seq) == [0, 1, 0, 1]
    assert seq.alphabet_m == 2


def test_read_symbol_out_of_range(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("012\n")
    with pytest.raises(SymbolOutOfRangeError):
        read_sequence(path, 2)


def test_read_rejects_garbage(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("01a1\n")
    with pytest.raises(SequenceFormatError):
        read_sequence(path)
    path.write_text("")
    with pytest.raises(SequenceFormatError):
        read_sequence(path)
    path.write_text("# m=2 only a header\n")
    with pytest.raises(SequenceFormatError):
        read_sequence(path)
    path.write_bytes("01\xc2\xb301".encode("latin-1"))
    with pytest.raises(SequenceFormatError):
        read_sequence(path)


def test_read_infers_alphabet(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("0120\n")
    assert read_sequence(path).alphabet_m == 3
    path.write_text("000\n")
    assert read_sequence(path).alphabet_m == 2


def test_read_ignores_line_breaks(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("01\n01\n 11\n")
    assert list(read_sequence(path, 2)) == [0, 1, 0, 1, 1, 1]
