"""Exception hierarchy for conformal_forge."""


class ConformalForgeError(Exception):
    """Base class for every error raised by conformal_forge."""


class ScalarZeroDivisionError(ConformalForgeError, ZeroDivisionError):
    """Division by the zero Scalar."""


class ScalarParseError(ConformalForgeError, ValueError):
    """Text that is not in the exact Scalar syntax."""


class RankMismatchError(ConformalForgeError):
    """A DeltaVector does not match the rank of its DeltaGroup."""


class DimensionMismatchError(ConformalForgeError):
    """Vectors of inconsistent length were handed to the linear algebra."""


class DependentGeneratorsError(ConformalForgeError):
    """The generators of a DeltaGroup are linearly dependent over Q."""


class InvalidIndexError(ConformalForgeError):
    """A basis index is not valid for the algebra it is used with."""


class WindowError(ConformalForgeError):
    """A window is malformed (duplicates, empty range, bad syntax)."""


class TableFormatError(ConformalForgeError):
    """A finite-table JSON document could not be ingested."""


class UnknownFamilyError(ConformalForgeError):
    """The requested family tag is not a built-in family."""


class InconsistentInputError(ConformalForgeError):
    """Inputs to an analysis routine contradict each other."""


class HypothesisError(ConformalForgeError):
    """A family hypothesis is violated.

    Attributes:
        hypothesis: The violated hypothesis, e.g. "2b∉Δ"
    """

    def __init__(self, hypothesis: str, detail: str = "") -> None:
        self.hypothesis = hypothesis
        message = f"requires {hypothesis}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
