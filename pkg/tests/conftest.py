import itertools

from seqmeter import Sequence


def bits_seq(bits_str: str) -> Sequence:
    return Sequence(tuple(int(c) for c in bits_str), 2)


def seq_from_code(code: int, n: int, m: int = 2) -> Sequence:
    """Sequence number `code` of length n, symbols little-endian base m."""
    sym = [0] * n
    for i in range(n):
        sym[i] = code % m
        code //= m
    return Sequence(tuple(sym), m)


def all_sequences(n: int, m: int = 2):
    for code in range(m**n):
        yield seq_from_code(code, n, m)


def all_tuples(n: int, m: int = 2):
    return itertools.product(range(m), repeat=n)
