"""Unit tests for custom exception classes."""

import pytest

from src.utils.errors import (
    ClusterError,
    ConfigurationError,
    DepthError,
    FieldError,
    FiltrationError,
    GroupError,
    GroupSizeError,
    HurwitzStructureError,
    InputFileError,
    KgbError,
    LiftError,
    NormalFormError,
    OortError,
    PrecisionError,
    SearchBoundError,
    ValidationError,
    ZeroFormError,
)


class TestOortErrorBase:
    """Tests for base OortError class."""

    def test_exception_with_message_only(self):
        exc = OortError("Something went wrong")
        assert str(exc) == "[OortError] Something went wrong"
        assert exc.error_code == "OortError"
        assert exc.context == {}

    def test_exception_with_error_code(self):
        exc = InputFileError("Unexpected schema", error_code="SCHEMA_MISMATCH")
        assert str(exc).startswith("[SCHEMA_MISMATCH]")
        assert exc.error_code == "SCHEMA_MISMATCH"

    def test_exception_with_context(self):
        """Context renders as key=value pairs in insertion order."""
        exc = FiltrationError("Non-integral lower jump", context={"p": 3, "jump": "5/2"})
        assert str(exc) == "[FiltrationError] Non-integral lower jump (p=3; jump=5/2)"

    def test_format_message_matches_str(self):
        exc = LiftError("Jump divisible by p", context={"u": 3})
        assert exc.format_message() == str(exc)

    def test_exception_is_subclassed_properly(self):
        exc = OortError("Test")
        assert isinstance(exc, Exception)
        with pytest.raises(OortError):
            raise exc


class TestHierarchy:
    """Every library error is an OortError; validation errors share a parent."""

    @pytest.mark.parametrize(
        "cls",
        [
            ConfigurationError,
            ValidationError,
            InputFileError,
            FieldError,
            PrecisionError,
            ZeroFormError,
            GroupError,
            KgbError,
            DepthError,
            ClusterError,
            HurwitzStructureError,
        ],
    )
    def test_direct_subclasses(self, cls):
        exc = cls("failure")
        assert isinstance(exc, OortError)
        assert exc.error_code == cls.__name__

    @pytest.mark.parametrize("cls", [FiltrationError, NormalFormError, LiftError])
    def test_validation_family(self, cls):
        assert issubclass(cls, ValidationError)

    @pytest.mark.parametrize("cls", [GroupSizeError, SearchBoundError])
    def test_group_family(self, cls):
        assert issubclass(cls, GroupError)

    def test_catch_parent_catches_child(self):
        with pytest.raises(ValidationError):
            raise NormalFormError("Exponent divisible by p", context={"k": 3})

    def test_structure_error_is_not_validation(self):
        """Malformed trees are distinct from bad arguments."""
        assert not issubclass(HurwitzStructureError, ValidationError)
