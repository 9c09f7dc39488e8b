"""seqmeter: pseudorandomness measures for binary and m-ary sequences.

Computes the Nth linear complexity, the Nth maximum-order complexity, and
the correlation measure of order k (exact, bounded-lag, sampled, and m-ary
multiplier forms), generates Legendre / two-prime / seeded-random
sequences, and empirically verifies the inequalities tying the measures
together.
"""

__version__ = "0.1.0"

from .complexity import (
    ComplexityProfile,
    linear_complexity,
    linear_complexity_profile,
    linear_recurrence,
    max_order_complexity,
    max_order_profile,
    oracle_linear_complexity,
    oracle_max_order,
)
from .correlation import (
    DEFAULT_BUDGET,
    MeasureResult,
    correlation,
    correlation_all,
    evaluate_mary_sum,
    evaluate_sum,
    mary_correlation,
    oracle_correlation,
    oracle_mary_correlation,
    sampled_correlation,
)
from .errors import (
    BudgetExceededError,
    NotPrimeError,
    SeqmeterError,
    SequenceFormatError,
    SymbolOutOfRangeError,
    UnsupportedAlphabetError,
    ValidationError,
)
from .seqcore import (
    PrimeParam,
    Sequence,
    gen_legendre,
    gen_random,
    gen_two_prime,
    is_prime,
    legendre_symbol,
    read_sequence,
    write_sequence,
)
from .verify import (
    BoundReport,
    ExperimentSummary,
    LegendreReport,
    TwoPrimeReport,
    check_eq1,
    check_prime_m,
    check_thm1,
    exhaustive_sweep,
    legendre_report,
    random_stats,
    run_check,
    two_prime_report,
)

__all__ = [
    "__version__",
    "BoundReport",
    "BudgetExceededError",
    "ComplexityProfile",
    "DEFAULT_BUDGET",
    "ExperimentSummary",
    "LegendreReport",
    "MeasureResult",
    "NotPrimeError",
    "PrimeParam",
    "SeqmeterError",
    "Sequence",
    "SequenceFormatError",
    "SymbolOutOfRangeError",
    "TwoPrimeReport",
    "UnsupportedAlphabetError",
    "ValidationError",
    "check_eq1",
    "check_prime_m",
    "check_thm1",
    "correlation",
    "correlation_all",
    "evaluate_mary_sum",
    "evaluate_sum",
    "exhaustive_sweep",
    "gen_legendre",
    "gen_random",
    "gen_two_prime",
    "is_prime",
    "legendre_report",
    "legendre_symbol",
    "linear_complexity",
    "linear_complexity_profile",
    "linear_recurrence",
    "mary_correlation",
    "max_order_complexity",
    "max_order_profile",
    "oracle_correlation",
    "oracle_linear_complexity",
    "oracle_mary_correlation",
    "oracle_max_order",
    "random_stats",
    "read_sequence",
    "run_check",
    "sampled_correlation",
    "two_prime_report",
    "write_sequence",
]
