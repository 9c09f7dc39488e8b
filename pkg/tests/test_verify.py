import math
import random

import pytest

from seqmeter import (
    Sequence,
    UnsupportedAlphabetError,
    ValidationError,
    check_eq1,
    check_prime_m,
    check_thm1,
    exhaustive_sweep,
    gen_random,
    legendre_report,
    random_stats,
    run_check,
    two_prime_report,
)
from seqmeter.verify import BoundReport

from conftest import all_sequences, bits_seq


def test_eq1_all_zero_boundary():
    rep = check_eq1(bits_seq("00000000"), 8)
    assert rep.left_value == 0
    assert rep.per_k == {1: 8}
    assert rep.right_value == 0
    assert rep.holds
    assert rep.recompute_right() == rep.right_value


def test_eq1_alternating():
    rep = check_eq1(bits_seq("0101010101"), 10)
    assert rep.left_value == 2
    assert rep.max_correlation == 9
    assert rep.right_value == 1
    assert rep.holds


def test_eq1_convention_case():
    rep = check_eq1(bits_seq("00001"), 5)
    assert rep.left_value == 5
    assert rep.parameters["k_range_clamped"]  # k would run to L+1 = 6 > N
    assert rep.parameters["k_range"] == [1, 5]
    assert rep.holds


def test_thm1_001011():
    rep = check_thm1(bits_seq("001011"), 6)
    assert rep.left_value == 3
    assert rep.right_value <= 6 - 16
    assert rep.holds


def test_thm1_all_zero():
    rep = check_thm1(bits_seq("00000000"), 8)
    assert rep.left_value == 1
    assert rep.per_k[1] == 8
    assert rep.right_value == 8 - 4 * 8
    assert rep.holds


def test_thm1_restricted_lags_stronger():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randrange(2, 14)
        seq = Sequence(tuple(rng.randrange(2) for _ in range(n)), 2)
        loose = check_thm1(seq, n, restrict_lags=False)
        tight = check_thm1(seq, n, restrict_lags=True)
        assert tight.right_value >= loose.right_value
        assert tight.holds and loose.holds
        assert tight.inequality_id == "thm1_bounded_lags"
        assert tight.parameters["lag_bound"] == tight.left_value


def test_exhaustive_small_binary():
    for ineq in ("eq1", "thm1", "thm1_bounded_lags"):
        summary = exhaustive_sweep(2, 7, ineq)
        assert summary.violations == 0
        assert summary.params["sequences"] == 2**8 - 2
        assert summary.extras["min_slack_sequence"] is not None


def test_exhaustive_sweep_witness_rechecks():
    summary = exhaustive_sweep(2, 6, "thm1")
    digits = summary.extras["min_slack_sequence"]
    seq = bits_seq(digits)
    rep = check_thm1(seq, len(seq))
    assert rep.left_value - rep.right_value == summary.stats["slack"]["min"]


def test_exhaustive_sweep_guards():
    with pytest.raises(ValidationError):
        exhaustive_sweep(3, 7, "thm1")
    with pytest.raises(ValidationError):
        exhaustive_sweep(2, 30, "thm1")
    with pytest.raises(UnsupportedAlphabetError):
        exhaustive_sweep(4, 3, "prime_m")


def test_prime_m_ternary_all_zero():
    rep = check_prime_m(Sequence((0,) * 6, 3), 6)
    assert rep.left_value == 1
    assert rep.max_correlation == 6
    assert rep.right_value == 6 - 6 * 6
    assert rep.holds
    assert rep.parameters["exact_arithmetic"]


def test_prime_m_matches_thm1_at_m2():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randrange(2, 12)
        seq = Sequence(tuple(rng.randrange(2) for _ in range(n)), 2)
        a = check_prime_m(seq, n)
        b = check_thm1(seq, n)
        assert a.right_value == b.right_value
        assert a.left_value == b.left_value


def test_prime_m_rejects_composite():
    with pytest.raises(UnsupportedAlphabetError):
        check_prime_m(Sequence((0, 1, 2, 3), 4), 4)


def test_prime_m_ternary_exhaustive_small():
    for n in range(1, 6):
        for seq in all_sequences(n, 3):
            rep = check_prime_m(seq, n)
            assert rep.holds, seq.symbols
            assert rep.parameters["exact_arithmetic"]


def test_bound_report_round_trip():
    rep = check_thm1(bits_seq("0011010111"), 10)
    back = BoundReport.from_dict(rep.to_dict())
    assert back == rep


def test_run_check_dispatch():
    seq = bits_seq("00101")
    assert run_check(seq, "eq1").inequality_id == "eq1"
    assert run_check(seq, "thm1").inequality_id == "thm1"
    assert run_check(seq, "thm1_bounded_lags").inequality_id == "thm1_bounded_lags"
    with pytest.raises(ValidationError):
        run_check(seq, "nope")


def test_two_prime_report_5_7():
    rep = two_prime_report(5, 7)
    assert rep.identity_rate == 1.0
    assert rep.identity_rate_full == 1.0
    assert rep.c4_structured == 23  # pq - p - q: every window term is +1
    assert rep.structured_lags == (0, 5, 7, 12)
    assert rep.structured_U == 23
    assert rep.bounded[4].value < rep.c4_structured
    assert rep.bounded[4].max_lag == 4
    assert rep.max_lag == 4


def test_two_prime_bounded_matches_oracle():
    from seqmeter import oracle_correlation
    from seqmeter.seqcore import gen_two_prime

    rep = two_prime_report(5, 7)
    seq = gen_two_prime(5, 7, 35 + 12)
    for k in range(1, 5):
        o = oracle_correlation(seq, 35, k, 4)
        assert rep.bounded[k].value == o.value


def test_two_prime_tiny_p_omits_unreachable_orders():
    rep = two_prime_report(3, 5)
    assert set(rep.bounded) == {1, 2, 3}  # no 4 increasing lags below p=3
    assert rep.identity_rate == 1.0


def test_legendre_report_small():
    rep = legendre_report(101)
    assert rep.p == 101 and rep.n == 101
    assert rep.max_order >= math.log2(math.sqrt(101)) - 2
    assert set(rep.per_k) == {1, 2}
    assert rep.per_k[2].mode == "exact"
    assert rep.ratios[2] == rep.per_k[2].value / (2 * math.sqrt(101) * math.log(101))
    assert rep.scale_eq3 == pytest.approx(math.log2(101 / math.sqrt(101)))


def test_legendre_report_sampled_orders():
    rep = legendre_report(101, k_max=3, n_samples=200, seed=5)
    assert rep.per_k[3].mode == "sampled"


def test_legendre_report_guards():
    with pytest.raises(ValidationError):
        legendre_report(101, n=102)


def test_random_stats_deterministic_and_descriptive():
    a = random_stats(2, 128, 8, 77)
    b = random_stats(2, 128, 8, 77, workers=2)
    assert a.to_dict() == b.to_dict()
    assert a.violations == 0
    assert a.stats["max_order"]["count"] == 8
    assert a.stats["C2"]["mode"] == "exact"
    assert a.reference_scales["log2_N"] == 7.0
    rows = a.extras["rows"]
    assert [r["trial"] for r in rows] == list(range(8))


def test_random_stats_sampled_past_limit():
    a = random_stats(2, 256, 2, 5, c2_exact_limit=128, n_samples=50)
    assert a.stats["C2"]["mode"] == "sampled"


def test_random_stats_ternary_skips_c2():
    a = random_stats(3, 64, 3, 1)
    assert "C2" not in a.stats
    assert a.stats["max_order"]["count"] == 3
