"""Custom exception classes for oortlift.

Every failure raised by the library derives from OortError, which carries a
machine-readable error code and a context dictionary so the CLI can render
structured messages and pick an exit code.

Exception Hierarchy:
    OortError (base)
    ├── ConfigurationError
    ├── ValidationError
    │   ├── FiltrationError
    │   ├── NormalFormError
    │   └── LiftError
    ├── InputFileError
    ├── FieldError
    ├── PrecisionError
    ├── ZeroFormError
    ├── GroupError
    │   ├── GroupSizeError
    │   └── SearchBoundError
    ├── KgbError
    ├── DepthError
    ├── ClusterError
    └── HurwitzStructureError
"""


class OortError(Exception):
    """Base exception for all oortlift errors.

    Provides a structured exception with error codes and contextual information
    so callers (and the CLI) can report failures uniformly.

    Attributes:
        message: Human-readable error description.
        error_code: Machine-readable error code for programmatic handling.
        context: Dictionary of additional contextual information.
    """

    def __init__(
        self,
        message: str,
        error_code: str | None = None,
        context: dict | None = None,
    ):
        """Initialize exception with message, error code, and optional context.

        Args:
            message: Human-readable error message describing what went wrong.
            error_code: Machine-readable error code (e.g., "INCONSISTENT_FILTRATION").
                Defaults to the class name if not provided.
            context: Additional contextual information as key-value pairs
                (e.g., {"p": 3, "jumps": "(1, 3/2)"}).
        """
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.context = context or {}
        super().__init__(self.format_message())

    def format_message(self) -> str:
        """Format error message with code and context.

        Returns:
            Formatted string containing the error code, message, and any
            context information in the format:
            [ERROR_CODE] Message (key=value; ...).
        """
        msg = f"[{self.error_code}] {self.message}"
        if self.context:
            context_str = "; ".join(f"{k}={v}" for k, v in self.context.items())
            msg += f" ({context_str})"
        return msg


class ConfigurationError(OortError):
    """Raised when configuration is invalid.

    The user config file or an environment override holds a value outside its
    allowed range.
    """

    pass


class ValidationError(OortError):
    """Raised when input validation fails.

    Arguments do not satisfy the preconditions of the requested computation.
    """

    pass


class FiltrationError(ValidationError):
    """Raised when a ramification filtration is inconsistent.

    Thresholds are not increasing, orders do not divide, or a Herbrand
    conversion produced a non-integral lower jump.
    """

    pass


class NormalFormError(ValidationError):
    """Raised when an Artin-Schreier-Witt vector is not in normal form."""

    pass


class LiftError(ValidationError):
    """Raised when lift data violates its preconditions.

    Typical causes are a jump divisible by p or a Kummer chain whose
    polynomials are not normalized.
    """

    pass


class InputFileError(OortError):
    """Raised when loading a JSON input document fails.

    The file could not be read, has the wrong extension, is not valid JSON or
    declares an unexpected schema.
    """

    pass


class FieldError(OortError):
    """Raised on invalid finite field construction or mixed-field arithmetic."""

    pass


class PrecisionError(OortError):
    """Raised when working precision cannot certify a result.

    A valuation or residue was requested from digits that were lost to
    truncation.
    """

    pass


class ZeroFormError(OortError):
    """Raised when a divisor is requested from the zero differential form."""

    pass


class GroupError(OortError):
    """Raised when group data is invalid.

    Base exception for group construction and branch cycle validation.
    """

    pass


class GroupSizeError(GroupError):
    """Raised when a group exceeds the brute-force enumeration limit."""

    pass


class SearchBoundError(GroupError):
    """Raised when a witness search exceeds its node or length bound."""

    pass


class KgbError(OortError):
    """Raised when KGB predicates receive data with no matching extension."""

    pass


class DepthError(OortError):
    """Raised when a depth computation leaves its supported regime.

    The function is not a unit at the requested radius, or a peel would need
    a ramified extension of the coefficient ring.
    """

    pass


class ClusterError(OortError):
    """Raised when marked disc data cannot produce a stable model.

    Points coincide, lie outside the open unit disc, or the valuation matrix
    violates the ultrametric inequality.
    """

    pass


class HurwitzStructureError(OortError):
    """Raised when a Hurwitz tree is structurally malformed.

    Distinct from axiom violations, which are reported as data by the
    validator.
    """

    pass
