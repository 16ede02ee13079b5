class NegSSSPError(Exception):
    """Base class for everything this package raises on purpose."""


class LoadError(NegSSSPError, ValueError):
    """The instance cannot be represented (bad ids, weight overflow)."""


class ParseError(LoadError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(NegSSSPError, ValueError):
    """A caller broke a documented precondition."""


class InternalError(NegSSSPError, RuntimeError):
    """A self-check failed; indicates a bug rather than bad input."""


class ScaleFailure(InternalError):
    """A randomized Scale attempt produced an unverifiable result; retry it."""


class BudgetExceeded(NegSSSPError):
    """An attempt used more than its operation budget."""


class NegativeCycleSuspected(InternalError):
    """The hybrid did not converge within its iteration backstop."""
