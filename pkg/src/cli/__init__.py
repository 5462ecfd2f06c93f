"""CLI module for the oortlift command-line interface.

The argument parser and the command handlers, kept apart so handlers can be
called with a Namespace in tests.
"""

from src.cli.commands import COMMANDS, CommandResult, run_command
from src.cli.parser import create_parser, parse_args

__all__ = ["COMMANDS", "CommandResult", "create_parser", "parse_args", "run_command"]
