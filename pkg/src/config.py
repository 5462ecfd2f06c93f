"""Configuration management and library constants."""

import json
import logging
import os
from pathlib import Path
from typing import Any, Final

from src.utils.errors import ConfigurationError

logger = logging.getLogger(__name__)

# Application metadata
APP_NAME: Final[str] = "oortlift"
APP_VERSION: Final[str] = "0.4.0"
APP_DESCRIPTION: Final[str] = "Exact computations for the local lifting problem"

# Directories
BASE_DIR: Final[Path] = Path(__file__).parent.parent
LOGS_DIR: Final[Path] = Path(os.getenv("OORT_LOGS_DIR", str(BASE_DIR / "logs")))
USER_CONFIG_FILE: Final[Path] = Path(
    os.getenv("OORT_CONFIG_FILE", str(Path.home() / ".config" / "oortlift" / "config.json"))
)


def env_positive_int(name: str, default: int, strict: bool = True) -> int:
    """Read a positive integer from the environment.

    Args:
        name: Environment variable
        default: Value when the variable is unset or blank
        strict: Raise on a bad value instead of warning and using the default

    Raises:
        ConfigurationError: If strict and the variable is not a positive integer
    """
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value >= 1:
        return value
    error = ConfigurationError(f"{name} must be a positive integer", context={name: raw})
    if strict:
        raise error
    logger.warning(f"{error.format_message()}; using {default}")
    return default


# p-adic precision (number of significant pi-adic digits)
DEFAULT_PRECISION: Final[int] = env_positive_int("OORT_PRECISION", 240, strict=False)
MIN_PRECISION_FACTOR: Final[int] = 3  # N >= 3e for cyclotomic rings

# Finite fields
MAX_SPLITTING_DEGREE: Final[int] = 24
ROOT_FINDING_SEED: Final[int] = 20240229

# Groups and witness search
MAX_GROUP_ORDER: Final[int] = 10_000
MAX_WITNESS_GROUP_ORDER: Final[int] = 200
DEFAULT_SEARCH_MAX_LENGTH: Final[int] = 12
DEFAULT_SEARCH_MAX_NODES: Final[int] = 2_000_000

# JSON input schemas
SCHEMA_FILTRATION: Final[str] = "oortlift.filtration/1"
SCHEMA_WITT: Final[str] = "oortlift.witt/1"
SCHEMA_STABLE_MODEL: Final[str] = "oortlift.stable-model/1"
SCHEMA_HURWITZ_TREE: Final[str] = "oortlift.hurwitz-tree/1"
SCHEMA_LAURENT: Final[str] = "oortlift.laurent/1"

# Logging
LOG_LEVEL: Final[str] = os.getenv("OORT_LOG_LEVEL", "WARNING")
LOG_FILE: Final[str | None] = os.getenv("OORT_LOG_FILE")
LOG_FORMAT: Final[str] = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_FILE_SIZE_MB: Final[int] = 10
LOG_BACKUP_COUNT: Final[int] = 5

# Development
DEBUG: Final[bool] = os.getenv("OORT_DEBUG", "false").lower() == "true"


def check_environment() -> None:
    """Re-read the numeric environment overrides, failing on bad values.

    Raises:
        ConfigurationError: If OORT_PRECISION is set but not a positive integer
    """
    env_positive_int("OORT_PRECISION", DEFAULT_PRECISION)


# User Configuration Management

DEFAULT_USER_CONFIG: Final[dict[str, Any]] = {
    "precision": DEFAULT_PRECISION,
    "search": {
        "max_length": DEFAULT_SEARCH_MAX_LENGTH,
        "max_nodes": DEFAULT_SEARCH_MAX_NODES,
    },
}


def _merged(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    result = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merged(result[key], value)
        else:
            result[key] = value
    return result


def validate_user_config(config: dict[str, Any]) -> None:
    """Check that user configuration values are in range.

    Args:
        config: Configuration dictionary (already merged with defaults)

    Raises:
        ConfigurationError: If a value is out of range or has the wrong type
    """
    precision = config.get("precision")
    if not isinstance(precision, int) or precision < 1:
        raise ConfigurationError("precision must be a positive integer", context={"precision": precision})

    search = config.get("search", {})
    for key in ("max_length", "max_nodes"):
        value = search.get(key)
        if not isinstance(value, int) or value < 1:
            raise ConfigurationError(f"search.{key} must be a positive integer", context={key: value})


def load_user_config(path: Path | None = None) -> dict[str, Any]:
    """Load user configuration merged over the defaults.

    Args:
        path: Config file location. Defaults to USER_CONFIG_FILE.

    Returns:
        Configuration dictionary. Returns the defaults if the file doesn't
        exist or cannot be parsed.
    """
    path = path or USER_CONFIG_FILE
    defaults = json.loads(json.dumps(DEFAULT_USER_CONFIG))

    if not path.exists():
        logger.debug(f"Config file not found at {path}, using defaults")
        return defaults

    try:
        with path.open("r", encoding="utf-8") as f:
            loaded = json.load(f)
    except json.JSONDecodeError as e:
        logger.warning(f"Invalid JSON in config file: {e}, using defaults")
        return defaults
    except OSError as e:
        logger.error(f"Failed to read config file: {e}, using defaults")
        return defaults

    if not isinstance(loaded, dict):
        logger.warning(f"Config file {path} does not hold an object, using defaults")
        return defaults

    config = _merged(defaults, loaded)
    try:
        validate_user_config(config)
    except ConfigurationError as e:
        logger.warning(f"{e.message}, using defaults")
        return defaults

    logger.info(f"Loaded user config from {path}")
    return config


def save_user_config(config: dict[str, Any], path: Path | None = None) -> bool:
    """Save user configuration as JSON.

    Args:
        config: Configuration dictionary to save
        path: Destination file. Defaults to USER_CONFIG_FILE.

    Returns:
        True if save successful, False otherwise

    Raises:
        ConfigurationError: If the configuration is invalid
    """
    path = path or USER_CONFIG_FILE
    validate_user_config(_merged(DEFAULT_USER_CONFIG, config))

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            json.dump(config, f, indent=2, sort_keys=True)
        logger.info(f"Saved user config to {path}")
        return True
    except OSError as e:
        logger.error(f"Failed to save config file: {e}")
        return False
