"""Axiom checks (i)-(x) for Hurwitz trees.

Each check is independent and reports violations as data tagged with its
axiom; only structural defects (dangling edges, points off the tree's field)
raise.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

import networkx as nx

from src.algebra import INFINITY, FormClass, Mobius, Point, classify_form, order_at
from src.hurwitz.tree import ROOT, HurwitzTree
from src.utils.errors import HurwitzStructureError

logger = logging.getLogger(__name__)


class Axiom(str, Enum):
    STABLE = "i"
    DEPTH_RANGE = "ii"
    DIVISOR_SUPPORT = "iii"
    FORM_TYPE = "iv"
    THICKNESS = "v"
    NODE_ORDERS = "vi"
    DEPTH_JUMP = "vii"
    ACTION = "viii"
    TANGENT_CHARACTERS = "ix"
    EQUIVARIANCE = "x"


@dataclass(frozen=True)
class Violation:
    axiom: Axiom
    message: str

    @property
    def tag(self) -> str:
        return f"({self.axiom.value})"

    def to_json(self) -> dict:
        return {"axiom": self.axiom.value, "message": self.message}


def _power(tree: HurwitzTree, v: str, k: int) -> tuple[str, Mobius]:
    """c^k on the component of v: (c^k(v), composite map)."""
    current, phi = v, Mobius.identity(tree.field)
    for _ in range(k):
        image, step = tree.action[current]
        phi = step.compose(phi)
        current = image
    return current, phi


def _special_points(tree: HurwitzTree, v: str) -> list[Point]:
    return list(tree.components[v].marked) + [point for point, _ in tree.node_points(v)]


def _check_fields(tree: HurwitzTree) -> None:
    for v in tree.components:
        for z in _special_points(tree, v):
            if z is None:
                raise HurwitzStructureError(f"An edge at {v} has no node point on it")
            if z is not INFINITY and z.field is not tree.field:
                raise HurwitzStructureError(f"Point {z} on {v} is not over {tree.field}")
        if tree.components[v].form.field is not tree.field:
            raise HurwitzStructureError(f"The form on {v} is not over {tree.field}")


def _stable(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    if not nx.is_arborescence(graph) or graph.in_degree(ROOT) != 0:
        yield Violation(Axiom.STABLE, "The dual graph with its root is not a tree rooted at v0")
    if len(tree.marked_points()) < 2:
        yield Violation(Axiom.STABLE, f"Need at least two marked points, got {len(tree.marked_points())}")
    for v in tree.components:
        points = _special_points(tree, v)
        if len(set(points)) != len(points):
            yield Violation(Axiom.STABLE, f"Marked and singular points on {v} are not distinct")
        if len(points) < 3:
            yield Violation(Axiom.STABLE, f"Component {v} has only {len(points)} special points")


def _depth_range(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    if tree.root_delta != 0:
        yield Violation(Axiom.DEPTH_RANGE, f"delta at the root is {tree.root_delta}, not 0")
    for v, comp in tree.components.items():
        if not 0 < comp.delta <= 1:
            yield Violation(Axiom.DEPTH_RANGE, f"delta at {v} is {comp.delta}, outside (0, 1]")


def _divisor_support(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    for v, comp in tree.components.items():
        form = comp.form
        if form.is_zero():
            yield Violation(Axiom.DIVISOR_SUPPORT, f"The form on {v} is zero")
            continue
        special = set(_special_points(tree, v))
        orders = {z: order_at(form, z) for z in special if z is not INFINITY}
        zeros = sum(k for k in orders.values() if k > 0)
        poles = sum(-k for k in orders.values() if k < 0)
        at_infinity = INFINITY in special or order_at(form, INFINITY) == 0
        if zeros != form.f.num.degree or poles != form.f.den.degree or not at_infinity:
            yield Violation(Axiom.DIVISOR_SUPPORT, f"The divisor of the form on {v} leaves the special points")
        for z in comp.marked:
            k = order_at(form, z)
            if k != -1:
                yield Violation(Axiom.DIVISOR_SUPPORT, f"The form on {v} has order {k} at the marked point {z}")


def _form_type(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    for v, comp in tree.components.items():
        if comp.form.is_zero():
            continue
        expected = FormClass.LOGARITHMIC if comp.delta == 1 else FormClass.EXACT
        found = classify_form(comp.form)
        if found is not expected:
            yield Violation(
                Axiom.FORM_TYPE, f"delta at {v} is {comp.delta}, so the form must be {expected.value}, not {found.value}"
            )


def _thickness(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    for e in tree.edges:
        if not e.thickness > 0:
            yield Violation(Axiom.THICKNESS, f"Thickness of {e.parent} -> {e.child} is {e.thickness}")


def _node_orders(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    for e in tree.edges:
        if e.is_root_edge:
            continue
        upper, lower = tree.components[e.parent].form, tree.components[e.child].form
        if upper.is_zero() or lower.is_zero():
            continue
        total = order_at(upper, e.parent_point) + order_at(lower, e.child_point)
        if total != -2:
            yield Violation(Axiom.NODE_ORDERS, f"Orders at the node {e.parent} -> {e.child} add up to {total}")


def _depth_jump(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    for e in tree.edges:
        form = tree.components[e.child].form
        if form.is_zero():
            continue
        lhs = tree.delta(e.child) - tree.delta(e.parent)
        rhs = (tree.p - 1) * e.thickness * (order_at(form, e.child_point) + 1)
        if lhs != rhs:
            yield Violation(
                Axiom.DEPTH_JUMP, f"Across {e.parent} -> {e.child}: delta difference {lhs} but (p-1) eps (ord+1) = {rhs}"
            )


def _action(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    images = {v: tree.action[v][0] for v in tree.components}
    if sorted(images.values()) != sorted(images):
        yield Violation(Axiom.ACTION, "c does not permute the components")
        return
    top = tree.root_edge
    image, phi = tree.action[top.child]
    if image != top.child or phi(top.child_point) != top.child_point:
        yield Violation(Axiom.ACTION, "c does not fix the marking at infinity")
    for v, comp in tree.components.items():
        image, phi = tree.action[v]
        targets = set(tree.components[image].marked)
        if any(phi(z) not in targets for z in comp.marked):
            yield Violation(Axiom.ACTION, f"c does not map the marked points of {v} to those of {image}")
    edges = {(e.parent, e.child): e for e in tree.edges}
    for e in tree.edges:
        if e.is_root_edge:
            continue
        key = (images[e.parent], images[e.child])
        target = edges.get(key)
        if target is None:
            yield Violation(Axiom.ACTION, f"c does not map the node {e.parent} -> {e.child} to a node")
            continue
        if (
            tree.action[e.child][1](e.child_point) != target.child_point
            or tree.action[e.parent][1](e.parent_point) != target.parent_point
        ):
            yield Violation(Axiom.ACTION, f"c moves the node {e.parent} -> {e.child} off its image")
    for v in tree.components:
        end, phi = _power(tree, v, tree.m)
        if end != v or phi != Mobius.identity(tree.field):
            yield Violation(Axiom.ACTION, f"c^{tree.m} is not the identity on {v}")


def _orbit_length(tree: HurwitzTree, v: str) -> int | None:
    current = v
    for k in range(1, tree.m + 1):
        current = tree.action[current][0]
        if current == v:
            return k
    return None


def _tangent_characters(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    for e in tree.edges:
        if e.is_root_edge:
            continue
        k = _orbit_length(tree, e.child)
        if k is None or k == tree.m:
            continue
        _, lower = _power(tree, e.child, k)
        _, upper = _power(tree, e.parent, k)
        product = lower.derivative_at(e.child_point) * upper.derivative_at(e.parent_point)
        if product != 1:
            yield Violation(
                Axiom.TANGENT_CHARACTERS,
                f"Tangent characters at the node {e.parent} -> {e.child} are not inverse (product {product})",
            )


def _equivariance(tree: HurwitzTree, graph: nx.DiGraph) -> Iterator[Violation]:
    chi = tree.chi % tree.p
    order = next((k for k in range(1, tree.p) if pow(chi, k, tree.p) == 1), None) if chi else None
    if order != tree.m:
        yield Violation(Axiom.EQUIVARIANCE, f"chi(c) = {tree.chi} does not have order m = {tree.m} in F_p^x")
    scalar = tree.chi_element
    for v, comp in tree.components.items():
        image, phi = tree.action[v]
        if tree.components[image].form.pullback(phi) != comp.form * scalar:
            yield Violation(Axiom.EQUIVARIANCE, f"c^* omega_{image} != chi(c) omega_{v}")


_CHECKS: tuple[Callable[[HurwitzTree, nx.DiGraph], Iterator[Violation]], ...] = (
    _stable,
    _depth_range,
    _divisor_support,
    _form_type,
    _thickness,
    _node_orders,
    _depth_jump,
    _action,
    _tangent_characters,
    _equivariance,
)


def validate(tree: HurwitzTree) -> list[Violation]:
    """All axiom violations of the tree, empty for a Hurwitz tree of type (C, chi).

    Raises:
        HurwitzStructureError: If the tree is malformed (dangling edge, missing
            action, points or forms over another field)
    """
    graph = tree.graph()
    _ = tree.root_edge
    _check_fields(tree)
    violations = [violation for check in _CHECKS for violation in check(tree, graph)]
    if violations:
        logger.info(f"Hurwitz tree has {len(violations)} violations: {', '.join(v.tag for v in violations)}")
    else:
        logger.debug("Hurwitz tree satisfies all axioms")
    return violations
