"""
Exception hierarchy
Input problems are ValueErrors, resource and budget problems are RuntimeErrors
"""
from typing import Any, Optional


class PBeauvilleError(Exception):
    """Base class for every error raised by the package."""


class PresentationSyntaxError(PBeauvilleError, ValueError):
    """A presentation file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InconsistentPresentation(PBeauvilleError, ValueError):
    """A defining relation or a consistency test word failed to collect to the identity."""


class TooLarge(PBeauvilleError, RuntimeError):
    """The group exceeds a configured size cap for the requested operation."""


class InvalidParams(PBeauvilleError, ValueError):
    """Family or map parameters violate their stated ranges."""


class NotInFamily(PBeauvilleError, ValueError):
    """The operation needs a group built from a specific family."""


class NotClass2(PBeauvilleError, ValueError):
    """The group does not have nilpotency class 2."""


class EvenPrime(PBeauvilleError, ValueError):
    """A criterion that needs an odd prime was applied to a 2-group."""


class NotTriangleQuotient(PBeauvilleError, ValueError):
    """The operation needs a triangle-group quotient."""


class WrongForm(PBeauvilleError, ValueError):
    """An element does not have the normal form an identity requires."""


class NotAWitness(PBeauvilleError, ValueError):
    """A claimed inversion witness does not satisfy its defining equations."""


class SearchBudgetExceeded(PBeauvilleError, RuntimeError):
    """A budgeted search ran out before covering its space; the answer is unknown."""


class WitnessVerificationFailed(PBeauvilleError, RuntimeError):
    """Neither the constructive nor the exhaustive witness search succeeded."""

    def __init__(self, message: str, counterexample: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.counterexample = counterexample
