"""Data model of Hurwitz trees of type (C, chi).

A tree is a root vertex (no component) joined by the root edge to the
component carrying the marking at infinity, plus further components joined at
nodes. Every component is a projective line over one finite field with its own
coordinate z; a node is recorded by the point it occupies on each of its two
components. The cyclic group C = <c> of order m acts by a permutation of the
vertices and one fractional linear map per vertex, from the component of v to
the component of c(v).

Nothing here checks the axioms; see src.hurwitz.validator.
"""

import dataclasses
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Optional

import networkx as nx

from src import config
from src.algebra import (
    INFINITY,
    FiniteField,
    Mobius,
    Point,
    RationalDifferentialForm,
    order_at,
    parse_rational_function,
)
from src.utils.errors import FieldError, HurwitzStructureError, ValidationError
from src.utils.file_loader import check_schema
from src.utils.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)

ROOT = "v0"


def point_to_json(point: Point) -> Any:
    return "inf" if point is INFINITY else point.to_json()


def point_from_json(field_: FiniteField, value: Any) -> Point:
    return INFINITY if value == "inf" else field_(value)


@dataclass(frozen=True)
class Component:
    """A non-root vertex: its differential form, depth and marked points."""

    form: RationalDifferentialForm
    delta: Fraction
    marked: tuple[Point, ...] = ()


@dataclass(frozen=True)
class Edge:
    """Edge parent -> child with the node's position on both components.

    For the root edge the parent is ROOT and parent_point is None; child_point
    is then the marking at infinity.
    """

    parent: str
    child: str
    thickness: Fraction
    child_point: Point
    parent_point: Optional[Point] = None

    @property
    def is_root_edge(self) -> bool:
        return self.parent == ROOT


@dataclass(frozen=True)
class HurwitzTree:
    """Hurwitz tree (Z; inf'; z_1, ..., z_{h+1}; omega_v; delta_v; epsilon_e).

    Attributes:
        p: Residue characteristic
        m: Order of C
        chi: chi(c) for the generator c, an element of F_p^x
        field: Field of definition of all components and points
        components: Non-root vertices by id
        edges: All edges, the root edge included
        action: For each vertex v, (c(v), map from the component of v to that of c(v))
        root_delta: delta of the root vertex
    """

    p: int
    m: int
    chi: int
    field: FiniteField
    components: dict[str, Component]
    edges: tuple[Edge, ...]
    action: dict[str, tuple[str, Mobius]] = dataclasses.field(default_factory=dict)
    root_delta: Fraction = Fraction(0)

    # Structure

    def graph(self) -> nx.DiGraph:
        """The tree Gamma as a DiGraph rooted at ROOT.

        Raises:
            HurwitzStructureError: If an edge or an action entry names an
                unknown vertex, or a vertex has no action entry
        """
        known = set(self.components) | {ROOT}
        g = nx.DiGraph()
        g.add_nodes_from(known)
        for e in self.edges:
            for end in (e.parent, e.child):
                if end not in known:
                    raise HurwitzStructureError(
                        f"Dangling edge {e.parent} -> {e.child}: no vertex {end}", context={"vertex": end}
                    )
            g.add_edge(e.parent, e.child, edge=e)
        for v in self.components:
            if v not in self.action:
                raise HurwitzStructureError(f"No action given on vertex {v}")
            image, _ = self.action[v]
            if image not in self.components:
                raise HurwitzStructureError(f"Action sends {v} to unknown vertex {image}")
        return g

    @property
    def root_edge(self) -> Edge:
        roots = [e for e in self.edges if e.is_root_edge]
        if len(roots) != 1:
            raise HurwitzStructureError(f"Expected one root edge, found {len(roots)}")
        return roots[0]

    @property
    def chi_element(self):
        return self.field(self.chi)

    def delta(self, v: str) -> Fraction:
        return self.root_delta if v == ROOT else self.components[v].delta

    def node_points(self, v: str) -> list[tuple[Point, Edge]]:
        """Points of the component of v where an edge attaches."""
        points = []
        for e in self.edges:
            if e.child == v:
                points.append((e.child_point, e))
            elif e.parent == v:
                points.append((e.parent_point, e))
        return points

    def marked_points(self) -> list[tuple[str, Point]]:
        return [(v, z) for v, comp in self.components.items() for z in comp.marked]

    def with_component(self, v: str, **changes: Any) -> "HurwitzTree":
        components = dict(self.components)
        components[v] = replace(components[v], **changes)
        return replace(self, components=components)

    def with_edge(self, child: str, **changes: Any) -> "HurwitzTree":
        edges = tuple(replace(e, **changes) if e.child == child else e for e in self.edges)
        return replace(self, edges=edges)

    # Serialization

    def to_json(self) -> dict:
        return {
            "schema": config.SCHEMA_HURWITZ_TREE,
            "p": self.p,
            "r": self.field.r,
            "m": self.m,
            "chi": self.chi,
            "root_delta": format_rational(self.root_delta),
            "vertices": [
                {
                    "id": v,
                    "delta": format_rational(comp.delta),
                    "form": comp.form.f.to_string(),
                    "marked": [point_to_json(z) for z in comp.marked],
                }
                for v, comp in self.components.items()
            ],
            "edges": [
                {
                    "parent": e.parent,
                    "child": e.child,
                    "thickness": format_rational(e.thickness),
                    "parent_point": None if e.parent_point is None else point_to_json(e.parent_point),
                    "child_point": point_to_json(e.child_point),
                }
                for e in self.edges
            ],
            "action": [
                {"vertex": v, "image": image, "map": phi.to_json()} for v, (image, phi) in self.action.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HurwitzTree":
        """Parse a hurwitz-tree document.

        Raises:
            InputFileError: If the schema tag is wrong
            HurwitzStructureError: If a field is missing or malformed
        """
        check_schema(data, config.SCHEMA_HURWITZ_TREE)
        try:
            p = int(data["p"])
            field_ = FiniteField(p, int(data.get("r", 1)))
            components = {
                str(entry["id"]): Component(
                    form=RationalDifferentialForm(parse_rational_function(entry["form"], field_)),
                    delta=parse_rational(entry["delta"]),
                    marked=tuple(point_from_json(field_, z) for z in entry.get("marked", [])),
                )
                for entry in data["vertices"]
            }
            edges = tuple(
                Edge(
                    parent=str(entry["parent"]),
                    child=str(entry["child"]),
                    thickness=parse_rational(entry["thickness"]),
                    child_point=point_from_json(field_, entry["child_point"]),
                    parent_point=(
                        None if entry.get("parent_point") is None else point_from_json(field_, entry["parent_point"])
                    ),
                )
                for entry in data["edges"]
            )
            action = {
                str(entry["vertex"]): (
                    str(entry["image"]),
                    Mobius(*(field_(x) for x in entry["map"]), field=field_),
                )
                for entry in data.get("action", [])
            }
            return cls(
                p=p,
                m=int(data["m"]),
                chi=int(data["chi"]),
                field=field_,
                components=components,
                edges=edges,
                action=action,
                root_delta=parse_rational(data.get("root_delta", 0)),
            )
        except (KeyError, TypeError, ValueError, ValidationError, FieldError) as e:
            raise HurwitzStructureError(f"Malformed Hurwitz tree document: {e}") from e

    def to_dot(self) -> str:
        lines = ["digraph hurwitz_tree {", f'  "{ROOT}" [shape=point];']
        for v, comp in self.components.items():
            lines.append(f'  "{v}" [label="{v}\\ndelta={format_rational(comp.delta)}"];')
        for e in self.edges:
            lines.append(f'  "{e.parent}" -> "{e.child}" [label="{format_rational(e.thickness)}"];')
        lines.append("}")
        return "\n".join(lines)


def conductor(tree: HurwitzTree) -> int:
    """h, where the tree carries h + 1 marked points z_i."""
    return len(tree.marked_points()) - 1


def boundary_conductors(tree: HurwitzTree) -> dict[tuple[str, str, str], int]:
    """h_{v,i} = -ord_w(omega_v) - 1 at every node w of every component.

    Keys are (vertex, parent, child) naming the vertex and the edge at w. At
    the marking at infinity this is minus the conductor.
    """
    result = {}
    for v, comp in tree.components.items():
        for point, e in tree.node_points(v):
            result[(v, e.parent, e.child)] = -order_at(comp.form, point) - 1
    return result
