"""Structured logging configuration for oortlift."""

import logging
import logging.handlers
from pathlib import Path
from typing import Optional

from src import config


class ColoredFormatter(logging.Formatter):
    """Logging formatter with color support for console output."""

    COLORS = {
        "DEBUG": "\033[36m",  # Cyan
        "INFO": "\033[32m",  # Green
        "WARNING": "\033[33m",  # Yellow
        "ERROR": "\033[31m",  # Red
        "CRITICAL": "\033[35m",  # Magenta
    }
    RESET = "\033[0m"

    def format(self, record: logging.LogRecord) -> str:
        """Format log record with color codes."""
        record = logging.makeLogRecord(record.__dict__)
        if record.levelname in self.COLORS:
            record.levelname = f"{self.COLORS[record.levelname]}{record.levelname}{self.RESET}"
        return super().format(record)


def setup_logging(
    name: str = "oortlift",
    level: Optional[str] = None,
    log_file: Optional[Path] = None,
    enable_console: bool = True,
    enable_file: bool = False,
) -> logging.Logger:
    """Configure logging for oortlift.

    Library modules log under ``src.*`` (their ``__name__``) and the CLI under
    ``oortlift.*``; both trees are configured here so a single call from
    ``main()`` covers everything.

    Args:
        name: Logger name ("oortlift" for the application root)
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
               If None, uses config.LOG_LEVEL
        log_file: Path to log file. If None, uses config.LOG_FILE or
               config.LOGS_DIR / f"{name}.log"
        enable_console: Whether to add a stderr handler
        enable_file: Whether to add a rotating file handler

    Returns:
        Configured logger instance
    """
    if level is None:
        level = config.LOG_LEVEL
    numeric_level = getattr(logging, level.upper(), logging.WARNING)

    handlers: list[logging.Handler] = []

    if enable_console:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(numeric_level)
        console_handler.setFormatter(ColoredFormatter(config.LOG_FORMAT))
        handlers.append(console_handler)

    if enable_file:
        if log_file is None:
            log_file = Path(config.LOG_FILE) if config.LOG_FILE else config.LOGS_DIR / f"{name}.log"

        log_file.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=config.LOG_FILE_SIZE_MB * 1024 * 1024,
            backupCount=config.LOG_BACKUP_COUNT,
        )
        file_handler.setLevel(numeric_level)
        # No colors in files
        file_handler.setFormatter(logging.Formatter(config.LOG_FORMAT))
        handlers.append(file_handler)

    logger = logging.getLogger(name)
    for target in (logger, logging.getLogger("src")):
        target.setLevel(numeric_level)
        # Remove existing handlers to avoid duplicates
        target.handlers.clear()
        for handler in handlers:
            target.addHandler(handler)
        target.propagate = False

    return logger


def get_logger(name: str) -> logging.Logger:
    """Get or create a logger under the application namespace.

    Args:
        name: Component name (e.g. "cli")

    Returns:
        Logger instance for the component
    """
    return logging.getLogger(f"oortlift.{name}")
