"""CLI argument parser for oortlift.

Every computation of the library is a subcommand. Global flags come before the
subcommand: ``oortlift --json kgb zpzp 3 2 2``.
"""

import argparse
from typing import Final

from src import config

LOG_LEVELS: Final[tuple[str, ...]] = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _add_different(subparsers) -> None:
    parser = subparsers.add_parser("different", help="Different of a filtration or a cyclic extension")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--cyclic",
        nargs=2,
        metavar=("P", "JUMPS"),
        help="Z/p^n with comma-separated upper jumps u_1,...,u_n",
    )
    source.add_argument(
        "--filtration",
        metavar="JSON",
        help="Filtration as inline JSON or a path to an oortlift.filtration/1 file",
    )


def _add_kgb(subparsers) -> None:
    parser = subparsers.add_parser("kgb", help="KGB obstruction checks")
    forms = parser.add_subparsers(dest="kgb_form", required=True)

    zpzp = forms.add_parser("zpzp", help="(Z/p)^2 with lower jumps m1 <= m2")
    zpzp.add_argument("p", type=int)
    zpzp.add_argument("m1", type=int)
    zpzp.add_argument("m2", type=int)

    meta = forms.add_parser("meta", help="Z/p^n x| Z/m with first positive lower jump h")
    meta.add_argument("p", type=int)
    meta.add_argument("n", type=int)
    meta.add_argument("m", type=int)
    meta.add_argument("h", type=int)
    meta.add_argument("--c", type=int, help="chi(1) in (Z/p^n)^*; default: an element of order m")

    witness = forms.add_parser("witness", help="Search for a characteristic-zero witness")
    witness.add_argument("group", choices=("zpzp", "meta"))
    witness.add_argument("params", type=int, nargs="+", help="p m1 m2 for zpzp, p n m h for meta")
    witness.add_argument("--c", type=int, help="chi(1) for meta")
    witness.add_argument("--max-length", type=_positive_int, help="Longest tuple searched")
    witness.add_argument("--max-nodes", type=_positive_int, help="Search nodes before giving up")


def _add_verify_lift(subparsers) -> None:
    parser = subparsers.add_parser("verify-lift", help="Different criterion for an explicit lift")
    kinds = parser.add_subparsers(dest="lift_kind", required=True)

    zp = kinds.add_parser("zp", help="Z/p lift Z^p = 1 + lambda^p T^-u")
    zp.add_argument("p", type=int)
    zp.add_argument("u", type=int)

    zp2 = kinds.add_parser("zp2", help="Z/p^2 lift with upper jumps (u, p u)")
    zp2.add_argument("p", type=int)
    zp2.add_argument("u", type=int)

    dihedral = kinds.add_parser("dihedral", help="D_p lift")
    dihedral.add_argument("p", type=int)


def _add_oort(subparsers) -> None:
    parser = subparsers.add_parser("oort", help="Jump condition for lifting Z/p^n")
    parser.add_argument("p", type=int)
    parser.add_argument("jumps", help="Comma-separated upper jumps u_1,...,u_n")


def _add_asw(subparsers) -> None:
    parser = subparsers.add_parser("asw", help="Upper jumps and different of an Artin-Schreier-Witt extension")
    parser.add_argument("file", help="oortlift.witt/1 document")


def _add_hurwitz(subparsers) -> None:
    parser = subparsers.add_parser("hurwitz", help="Hurwitz trees")
    actions = parser.add_subparsers(dest="hurwitz_action", required=True)

    build = actions.add_parser("build", help="Single-component tree with conductor h < p")
    build.add_argument("p", type=int)
    build.add_argument("m", type=int)
    build.add_argument("h", type=int)
    build.add_argument("--chi", type=int, help="chi(c) in F_p^x of order m")
    build.add_argument("--z", help="Comma-separated orbit representatives z_1,...,z_r")
    build.add_argument("--dot", action="store_true", help="Print the tree in DOT format")

    validate = actions.add_parser("validate", help="Check a tree against the axioms")
    validate.add_argument("file", help="oortlift.hurwitz-tree/1 document")


def _add_stable_model(subparsers) -> None:
    parser = subparsers.add_parser("stable-model", help="Stable model of a marked disc")
    parser.add_argument("file", help="oortlift.stable-model/1 document")
    parser.add_argument("--dot", action="store_true", help="Print the cluster tree in DOT format")


def _add_depth(subparsers) -> None:
    parser = subparsers.add_parser("depth", help="Depth profile of y^p = f")
    parser.add_argument("file", help="oortlift.laurent/1 document")
    parser.add_argument("--radii", required=True, help="Comma-separated increasing radii, e.g. 0,1/8,1/4")


def create_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser for the oortlift CLI.

    Returns:
        Configured ArgumentParser with all subcommands.
    """
    parser = argparse.ArgumentParser(
        prog=config.APP_NAME,
        description=config.APP_DESCRIPTION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {config.APP_VERSION}",
    )
    parser.add_argument("--json", action="store_true", help="Print the payload as JSON")
    parser.add_argument(
        "--precision",
        type=_positive_int,
        help=f"Working precision in pi-adic digits (default {config.DEFAULT_PRECISION}, env OORT_PRECISION)",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        help=f"Log level (default {config.LOG_LEVEL}, env OORT_LOG_LEVEL)",
    )

    subparsers = parser.add_subparsers(dest="command", required=True, help="Available commands")
    _add_different(subparsers)
    _add_kgb(subparsers)
    _add_verify_lift(subparsers)
    _add_oort(subparsers)
    _add_asw(subparsers)
    _add_hurwitz(subparsers)
    _add_stable_model(subparsers)
    _add_depth(subparsers)

    return parser


def parse_args(args: list[str] | None = None) -> argparse.Namespace:
    """Parse command line arguments.

    Args:
        args: List of arguments to parse. If None, uses sys.argv.

    Returns:
        Parsed arguments namespace.
    """
    parser = create_parser()
    return parser.parse_args(args)
