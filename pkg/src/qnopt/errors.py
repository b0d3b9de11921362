"""Exception hierarchy shared across the package."""


class QnoptError(Exception):
    """Base class for all qnopt errors."""


class UnknownProblem(QnoptError):
    """Requested problem name is not in the catalogue."""


class IncompatibleDimension(QnoptError):
    """Requested dimension violates the problem's block structure."""


class DimensionMismatch(QnoptError):
    """Vector length does not match the problem dimension."""


class NonFiniteValue(QnoptError):
    """An objective evaluation produced NaN or Inf where finiteness is required."""


class NotDescent(QnoptError):
    """Line search was given a direction with g'd >= 0."""


class SearchFailed(QnoptError):
    """No acceptable step length found within the trial budget."""


class ZeroStep(QnoptError):
    """An update was requested with a (numerically) zero step."""


class InvalidDimensions(QnoptError):
    """Inconsistent sizes when generating a sensing instance."""


class ZeroReference(QnoptError):
    """Relative error requested against a zero reference signal."""


class ParseError(QnoptError):
    """Malformed row in an input data file."""


class TooShort(QnoptError):
    """Time series has fewer than two observations."""


class DomainError(QnoptError):
    """Objective evaluated outside its domain (e.g. negative power base)."""


class EmptyGrid(QnoptError):
    """Benchmark grid has an empty problem, solver, or dimension list."""


class UnknownSolver(QnoptError):
    """Solver identifier is not one of the supported variants."""


class NoSolvedProblems(QnoptError):
    """Performance profile requested on a table where nothing was solved."""


class IoError(QnoptError):
    """Failed to write an output artifact."""
