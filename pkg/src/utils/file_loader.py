"""Loader for versioned JSON input documents."""

import json
import os
from pathlib import Path
from typing import Any

import chardet

from src.utils.errors import InputFileError


def decode_bytes(raw_data: bytes) -> str:
    """Decode raw file content, detecting its encoding.

    Args:
        raw_data: File content as read from disk

    Returns:
        str: Decoded text
    """
    detected = chardet.detect(raw_data)
    encoding = detected.get("encoding", "utf-8") if detected else "utf-8"

    # Fallback to UTF-8 if detection fails
    if not encoding:
        encoding = "utf-8"

    try:
        return raw_data.decode(encoding)
    except (UnicodeDecodeError, LookupError):
        return raw_data.decode("utf-8", errors="replace")


def load_json_document(file_path: str | Path, schema: str | None = None) -> dict[str, Any]:
    """
    Load a JSON input document and check its schema tag.

    Args:
        file_path: Path to the .json file
        schema: Expected value of the document's "schema" field, or None to
            accept any schema

    Returns:
        dict: The parsed document

    Raises:
        InputFileError: If the file cannot be loaded, is not a JSON object, or
            declares a different schema

    Examples:
        >>> doc = load_json_document("example5.json", "oortlift.stable-model/1")
        >>> doc["schema"]
        'oortlift.stable-model/1'
    """
    try:
        path = Path(file_path)
        if path.suffix.lower() != ".json":
            raise InputFileError(f"Invalid file extension '{path.suffix}'. Expected .json")

        if not path.exists():
            raise InputFileError(f"File not found: {file_path}")

        if not os.access(path, os.R_OK):
            raise InputFileError(f"Permission denied: cannot read file {file_path}")

        with open(path, "rb") as f:
            raw_data = f.read()

        document = json.loads(decode_bytes(raw_data))

    except InputFileError:
        raise
    except json.JSONDecodeError as e:
        raise InputFileError(f"Invalid JSON in {file_path}: {e.msg}", context={"line": e.lineno}) from e
    except PermissionError as e:
        raise InputFileError(f"Permission denied when reading {file_path}") from e
    except IsADirectoryError as e:
        raise InputFileError(f"Path is a directory, not a file: {file_path}") from e
    except Exception as e:
        raise InputFileError(f"Failed to load file {file_path}: {str(e)}") from e

    return check_schema(document, schema, source=str(file_path))


def check_schema(document: Any, schema: str | None, source: str = "<inline>") -> dict[str, Any]:
    """Validate that a parsed document is an object with the expected schema tag.

    Args:
        document: Parsed JSON value
        schema: Expected "schema" value, or None to skip the tag check
        source: Description of where the document came from, for messages

    Returns:
        dict: The document, unchanged

    Raises:
        InputFileError: If the document is not an object or the tag differs
    """
    if not isinstance(document, dict):
        raise InputFileError(f"Expected a JSON object in {source}")
    if schema is not None and document.get("schema") != schema:
        raise InputFileError(
            f"Unexpected schema in {source}",
            error_code="SCHEMA_MISMATCH",
            context={"expected": schema, "found": document.get("schema")},
        )
    return document
