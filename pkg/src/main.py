"""oortlift - exact computations for the local lifting problem.

This is the console entry point: it parses the command line, configures
logging and prints the result of one subcommand.
"""

import sys

from src import config
from src.cli import create_parser, run_command
from src.utils.logging import get_logger, setup_logging

logger = get_logger("main")


def main(argv: list[str] | None = None) -> int:
    """Main entry point for oortlift.

    Args:
        argv: Arguments without the program name. If None, uses sys.argv.

    Returns:
        Exit code: 0 on success, 1 on a domain error, 2 on a usage error.
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help or --version
        return int(e.code or 0)

    default_level = "DEBUG" if config.DEBUG else config.LOG_LEVEL
    setup_logging(level=args.log_level or default_level, enable_file=bool(config.LOG_FILE))
    logger.debug(f"Running {args.command} with {vars(args)}")

    result = run_command(args)
    output = result.render(args.json)
    stream = sys.stdout if result.exit_code == 0 or args.json else sys.stderr
    print(output, file=stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
