"""Error hierarchy shared by the library, the CLI and the HTTP API."""

from typing import Any, Optional


class BellFdbError(Exception):
    """Base class for every error raised by Bell-FdB Lab."""


class ContractError(BellFdbError, ValueError):
    """A documented precondition of an operation was violated."""

    def __init__(self, message: str, precondition: Optional[str] = None):
        super().__init__(message)
        self.precondition = precondition


class DimensionError(ContractError):
    """Operands carry different dimensions."""

    def __init__(self, message: str):
        super().__init__(message, precondition="matching dimensions")


class DomainError(BellFdbError, ValueError):
    """A multi-index operation would leave the nonnegative integers."""


class TruncationError(BellFdbError):
    """A derivative was requested beyond the available truncation order."""


class MissingVariableError(BellFdbError, LookupError):
    """A polynomial was evaluated without a value for one of its variables."""

    def __init__(self, variable: Any):
        super().__init__(f"No value assigned to variable {variable}")
        self.variable = variable


class IntegralityError(BellFdbError, ArithmeticError):
    """A Bell polynomial coefficient came out non-integral."""

    def __init__(self, n: Any, k: Any, monomial: Any, coefficient: Any):
        super().__init__(
            f"Non-integer coefficient {coefficient} for monomial {monomial} "
            f"in B(n={n}, k={k})"
        )
        self.n = n
        self.k = k
        self.monomial = monomial
        self.coefficient = coefficient


class SeriesFormatError(BellFdbError, ValueError):
    """A series document could not be parsed."""
