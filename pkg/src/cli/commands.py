"""Command handlers for the oortlift CLI.

Each handler takes the parsed arguments and returns a CommandResult; none of
them prints. Domain errors (OortError) become error results in run_command.
"""

import argparse
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from sympy import primitive_root

from src import config
from src.asw import WittNormalForm, asw_upper_jumps, different_of
from src.discgeom import MarkedDisc, cluster_tree
from src.groups import (
    ElementaryBicyclic,
    MetacyclicGroup,
    elementary_bicyclic_filtration,
    metacyclic_filtration,
    minimal_upper_jumps,
)
from src.hurwitz import HurwitzTree, build_small_conductor, conductor, validate
from src.kgb import SearchBounds, kgb_metacyclic, kgb_search_verdict, kgb_zpzp
from src.lifting import (
    build_zp2_lift,
    build_zp_lift,
    depth_profile_check,
    different_criterion,
    dihedral_example_check,
    oort_condition,
    reduction_type,
)
from src.padic import laurent_from_json
from src.ramification import (
    Numbering,
    RamFiltration,
    cyclic_different,
    different_from_lower,
    different_from_upper,
)
from src.utils.errors import OortError, ValidationError
from src.utils.file_loader import check_schema, load_json_document
from src.utils.logging import get_logger
from src.utils.rationals import format_rational, parse_rational_list

logger = get_logger("cli")

OK = "ok"
ERROR = "error"


@dataclass
class CommandResult:
    """Outcome of one subcommand.

    Attributes:
        status: "ok" or "error"
        payload: JSON-serializable document, fixed per subcommand
        text: Human-readable rendering of the same numbers
    """

    status: str
    payload: dict[str, Any] = field(default_factory=dict)
    text: str = ""

    @property
    def exit_code(self) -> int:
        return 0 if self.status == OK else 1

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.payload, indent=2, sort_keys=True)
        return self.text

    @classmethod
    def from_error(cls, error: OortError) -> "CommandResult":
        payload = {
            "error_code": error.error_code,
            "message": error.message,
            "context": {str(k): str(v) for k, v in error.context.items()},
        }
        return cls(ERROR, payload, error.format_message())


def _precision(args: argparse.Namespace) -> int:
    if args.precision is not None:
        return args.precision
    return int(config.load_user_config()["precision"])


def _int_list(text: str) -> list[int]:
    values = parse_rational_list(text)
    if any(v.denominator != 1 for v in values):
        raise ValidationError(f"Expected integers, got {text!r}")
    return [int(v) for v in values]


# different


def _load_filtration(source: str) -> RamFiltration:
    path = Path(source)
    if path.suffix.lower() == ".json" and path.exists():
        return RamFiltration.from_json(load_json_document(path, config.SCHEMA_FILTRATION))
    try:
        document = json.loads(source)
    except json.JSONDecodeError as e:
        raise ValidationError(f"--filtration is neither a JSON file nor inline JSON: {e}") from e
    # Inline documents may omit the schema tag
    return RamFiltration.from_json(check_schema(document, None))


def cmd_different(args: argparse.Namespace) -> CommandResult:
    if args.cyclic:
        p = int(args.cyclic[0])
        jumps = parse_rational_list(args.cyclic[1])
        closed = cyclic_different(p, jumps)
        herbrand = different_from_upper(RamFiltration.cyclic_upper(p, jumps))
        payload = {
            "p": p,
            "jumps": [format_rational(u) for u in jumps],
            "different": format_rational(closed),
            "herbrand": format_rational(herbrand),
        }
        text = f"delta = {format_rational(closed)} (closed form), {format_rational(herbrand)} (Herbrand sum)"
        return CommandResult(OK, payload, text)

    filtration = _load_filtration(args.filtration)
    if filtration.numbering is Numbering.LOWER:
        delta = different_from_lower(filtration)
    else:
        delta = different_from_upper(filtration)
    payload = {"filtration": filtration.to_json(), "different": format_rational(delta)}
    return CommandResult(OK, payload, f"delta = {format_rational(delta)}")


# kgb


def default_chi(p: int, n: int, m: int) -> int:
    """An element of order m in (Z/p^n)^*."""
    modulus = p**n
    phi = p ** (n - 1) * (p - 1)
    if phi % m:
        raise ValidationError(f"(Z/{p}^{n})^* has no element of order {m}")
    return pow(int(primitive_root(modulus)), phi // m, modulus)


def _verdict_text(label: str, verdict) -> str:
    lines = [f"{label}: vanishes={str(verdict.vanishes).lower()}"]
    if verdict.witness is not None:
        lines.append(f"witness: {verdict.witness.to_json()}")
    if verdict.table:
        lines.append("|H|  deg R_X  deg R_Y")
        lines.extend(f"{row.order:>3}  {row.char0:>7}  {row.charp:>7}" for row in verdict.table)
    return "\n".join(lines)


def _witness(args: argparse.Namespace) -> CommandResult:
    user = config.load_user_config()
    bounds = SearchBounds.from_config(user)
    bounds = SearchBounds(
        max_length=args.max_length or bounds.max_length,
        max_nodes=args.max_nodes or bounds.max_nodes,
    )
    if args.group == "zpzp":
        if len(args.params) != 3:
            raise ValidationError("kgb witness zpzp takes p m1 m2")
        p, m1, m2 = args.params
        group = ElementaryBicyclic(p)
        wild = elementary_bicyclic_filtration(group, m1, m2)
    else:
        if len(args.params) != 4:
            raise ValidationError("kgb witness meta takes p n m h")
        p, n, m, h = args.params
        c = default_chi(p, n, m) if args.c is None else args.c
        group = MetacyclicGroup(p, n, m, c)
        wild = metacyclic_filtration(group, minimal_upper_jumps(p, n, m, h))
    verdict = kgb_search_verdict(group, wild, bounds)
    payload = {"group": group.name, **verdict.to_json()}
    return CommandResult(OK, payload, _verdict_text(group.name, verdict))


def cmd_kgb(args: argparse.Namespace) -> CommandResult:
    if args.kgb_form == "zpzp":
        verdict = kgb_zpzp(args.p, args.m1, args.m2)
        label = f"(Z/{args.p})^2 with jumps ({args.m1}, {args.m2})"
        return CommandResult(OK, verdict.to_json(), _verdict_text(label, verdict))
    if args.kgb_form == "meta":
        c = default_chi(args.p, args.n, args.m) if args.c is None else args.c
        verdict = kgb_metacyclic(args.p, args.n, args.m, c, args.h)
        payload = {**verdict.to_json(), "c": c}
        label = f"Z/{args.p}^{args.n} x| Z/{args.m} (c={c}) with h={args.h}"
        return CommandResult(OK, payload, _verdict_text(label, verdict))
    return _witness(args)


# verify-lift


def cmd_verify_lift(args: argparse.Namespace) -> CommandResult:
    precision = _precision(args)
    if args.lift_kind == "zp":
        certificate = different_criterion(build_zp_lift(args.p, args.u, precision), [args.u])
    elif args.lift_kind == "zp2":
        chain = build_zp2_lift(args.p, args.u, precision)
        certificate = different_criterion(chain, [args.u, args.p * args.u])
    else:
        certificate = dihedral_example_check(args.p, precision)
    delta_eta, delta_s = format_rational(certificate.delta_eta), format_rational(certificate.delta_s)
    relation = "=" if certificate.delta_eta == certificate.delta_s else "!="
    text = f"{certificate.status.value}: delta_eta = {delta_eta} {relation} delta_s = {delta_s}"
    return CommandResult(OK, certificate.to_json(), text)


# oort


def cmd_oort(args: argparse.Namespace) -> CommandResult:
    jumps = _int_list(args.jumps)
    verdict = oort_condition(args.p, jumps)
    if verdict.holds:
        text = f"Jump condition holds for {jumps}"
    else:
        text = f"Jump condition fails at i={verdict.index} with a={verdict.value}"
    return CommandResult(OK, {"p": args.p, "jumps": jumps, **verdict.to_json()}, text)


# asw


def cmd_asw(args: argparse.Namespace) -> CommandResult:
    witt = WittNormalForm.from_json(load_json_document(args.file, config.SCHEMA_WITT))
    jumps = asw_upper_jumps(witt)
    delta = different_of(witt)
    payload = {"p": witt.p, "upper_jumps": list(jumps), "different": format_rational(delta)}
    return CommandResult(OK, payload, f"upper jumps {list(jumps)}, delta = {format_rational(delta)}")


# hurwitz


def _tree_result(tree: HurwitzTree, dot: bool = False) -> CommandResult:
    violations = validate(tree)
    payload = {
        "valid": not violations,
        "conductor": conductor(tree),
        "violations": [v.to_json() for v in violations],
        "tree": tree.to_json(),
    }
    if dot:
        text = tree.to_dot()
    elif violations:
        text = "\n".join(f"{v.tag} {v.message}" for v in violations)
    else:
        forms = ", ".join(f"{v}: {comp.form.to_string()}" for v, comp in tree.components.items())
        text = f"valid Hurwitz tree with conductor {conductor(tree)}; {forms}"
    # A tree that fails an axiom is reported, and the command fails
    return CommandResult(ERROR if violations else OK, payload, text)


def cmd_hurwitz(args: argparse.Namespace) -> CommandResult:
    if args.hurwitz_action == "build":
        z = None if args.z is None else _int_list(args.z)
        tree = build_small_conductor(args.p, args.m, args.h, chi=args.chi, z=z)
        return _tree_result(tree, args.dot)
    tree = HurwitzTree.from_json(load_json_document(args.file, config.SCHEMA_HURWITZ_TREE))
    return _tree_result(tree)


# stable-model


def cmd_stable_model(args: argparse.Namespace) -> CommandResult:
    document = load_json_document(args.file, config.SCHEMA_STABLE_MODEL)
    tree = cluster_tree(MarkedDisc.from_json(document, precision=_precision(args)))
    table = tree.specialization_table()
    payload = {"components": len(tree.vertices), "tree": tree.to_json(), "specialization": table}
    if args.dot:
        return CommandResult(OK, payload, tree.to_dot())
    lines = [f"{len(tree.vertices)} components"]
    for row in table:
        where = row["specialization"]
        target = where.get("vertex") or "-".join(where.get("edge", [])) or where["kind"]
        points = f"  [{', '.join(row['points'])}]" if row.get("points") else ""
        lines.append(f"{row['set']:<32} -> {target}{points}")
    return CommandResult(OK, payload, "\n".join(lines))


# depth


def cmd_depth(args: argparse.Namespace) -> CommandResult:
    document = load_json_document(args.file, config.SCHEMA_LAURENT)
    f = laurent_from_json(document, precision=_precision(args))
    profile = depth_profile_check(f, parse_rational_list(args.radii))
    reductions = [reduction_type(f, r).value for r, _ in profile.samples]
    payload = {**profile.to_json(), "reductions": reductions}
    lines = [
        f"r = {format_rational(r)}: depth {format_rational(d)} ({kind})"
        for (r, d), kind in zip(profile.samples, reductions)
    ]
    lines.append(f"slope bound {'holds' if profile.holds else 'fails'}")
    return CommandResult(OK, payload, "\n".join(lines))


COMMANDS: dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "different": cmd_different,
    "kgb": cmd_kgb,
    "verify-lift": cmd_verify_lift,
    "oort": cmd_oort,
    "asw": cmd_asw,
    "hurwitz": cmd_hurwitz,
    "stable-model": cmd_stable_model,
    "depth": cmd_depth,
}


def run_command(args: argparse.Namespace) -> CommandResult:
    """Dispatch to the handler of args.command, turning OortError into an error result."""
    handler = COMMANDS[args.command]
    try:
        config.check_environment()
        result = handler(args)
    except OortError as e:
        logger.info(f"{args.command} failed: {e.format_message()}")
        return CommandResult.from_error(e)
    logger.info(f"{args.command}: {result.status}")
    return result
