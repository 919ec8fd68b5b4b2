"""Exception hierarchy shared by all ahpkit modules."""


class AhpError(Exception):
    """Base class for every error raised by this package."""


class DomainError(AhpError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class IncompleteJudgmentsError(DomainError):
    """A pairwise judgment required to build a matrix is missing."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"missing judgment for pair {pair[0]!r} vs {pair[1]!r}")


class UnsupportedOrderError(DomainError):
    """Matrix order falls outside the tabulated random-index range."""

    def __init__(self, n, limit=15):
        self.order = n
        super().__init__(
            f"no tabulated random index for order {n} (supported 1..{limit}); "
            "pass an explicit ri"
        )


class ConvergenceError(AhpError, ArithmeticError):
    """Power iteration failed to converge; carries the last residual."""

    def __init__(self, residual, iterations):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(last residual {residual:.3e})"
        )


class SchemaError(AhpError, ValueError):
    """Labels or shapes of two inputs do not line up."""


class CoverageError(AhpError, ValueError):
    """No respondent supplied a judgment for some pair."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"no responses cover pair {pair[0]!r} vs {pair[1]!r}")


class UndefinedCorrelationError(DomainError):
    """Pearson correlation is undefined (a sample has zero variance)."""


class ParseError(AhpError, ValueError):
    """Malformed input file; carries 1-based row/column coordinates."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        where = ""
        if row is not None and column is not None:
            where = f" (row {row}, column {column})"
        elif row is not None:
            where = f" (row {row})"
        super().__init__(message + where)
