"""Exception types shared across the package.

Split into two families so the CLI can map them onto exit codes:
ValidationError (bad inputs, exit 2) and BudgetExceededError (refused
work, exit 3).
"""


class SeqmeterError(Exception):
    """Base class for all package errors."""


class ValidationError(SeqmeterError, ValueError):
    """Invalid argument or malformed input data."""


class NotPrimeError(ValidationError):
    def __init__(self, n: int, why: str = ""):
        self.n = n
        msg = f"NotPrime: {n}"
        if why:
            msg += f" ({why})"
        super().__init__(msg)


class SymbolOutOfRangeError(ValidationError):
    def __init__(self, symbol: int, alphabet_m: int, position: int | None = None):
        self.symbol = symbol
        self.alphabet_m = alphabet_m
        where = f" at position {position}" if position is not None else ""
        super().__init__(
            f"SymbolOutOfRange: symbol {symbol}{where} not in [0, {alphabet_m})"
        )


class SequenceFormatError(ValidationError):
    """Malformed sequence file (empty body, illegal character, bad header)."""


class UnsupportedAlphabetError(ValidationError):
    """Alphabet size outside what an operation supports."""


class BudgetExceededError(SeqmeterError):
    """Enumeration would exceed the configured step budget.

    Carries the estimated step count so callers can report it.
    """

    def __init__(self, steps: int, budget: int, hint: str = ""):
        self.steps = steps
        self.budget = budget
        msg = f"budget exceeded: ~{steps} elementary steps > budget {budget}"
        if hint:
            msg += f"; {hint}"
        super().__init__(msg)
