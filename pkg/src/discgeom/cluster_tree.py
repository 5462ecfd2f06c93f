"""Stable models of marked open unit discs.

A marked disc (D; x_1, ..., x_r) sits in the projective line with infinity
outside, so its stable model is described by the cluster tree of the points:
each cluster (a maximal set of points with pairwise v(x_i - x_j) >= d) is a
component, each parent/child pair is a node whose annulus has thickness
equal to the depth difference, and the root edge towards infinity has
thickness equal to the depth of the full cluster.

Only the matrix of pairwise valuations matters, so a disc may be given either
by points of an Eisenstein ring or directly by that matrix.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Any, Mapping, Optional, Sequence

import networkx as nx

from src import config
from src.padic import EisensteinRing, PadicElement, element_from_digits, ring_from_json
from src.utils.errors import ClusterError, PrecisionError, ValidationError
from src.utils.file_loader import check_schema
from src.utils.rationals import format_rational, parse_rational

logger = logging.getLogger(__name__)

INFINITY_ID = "inf"

Distance = Fraction | float


def _distance(a: PadicElement, b: PadicElement) -> Distance:
    difference = a - b
    if difference.is_zero():
        return math.inf
    return difference.valuation()


@dataclass(frozen=True)
class MarkedDisc:
    """Marked points of the open unit disc, as points or as a valuation matrix.

    Attributes:
        labels: Names of the marked points, in input order
        distances: Symmetric matrix of v(x_i - x_j); the diagonal is ignored
        ring: Coefficient ring when the disc was given by points
        points: The points themselves, or () for matrix input
    """

    labels: tuple[str, ...]
    distances: tuple[tuple[Optional[Fraction], ...], ...]
    ring: Optional[EisensteinRing] = None
    points: tuple[PadicElement, ...] = ()

    def __post_init__(self):
        r = len(self.labels)
        if r < 2:
            raise ClusterError(f"A marked disc needs at least two points, got {r}")
        if len(set(self.labels)) != r:
            raise ClusterError("Point labels must be distinct", context={"labels": list(self.labels)})
        if len(self.distances) != r or any(len(row) != r for row in self.distances):
            raise ClusterError(f"Valuation matrix must be {r} x {r}")
        for i, j in combinations(range(r), 2):
            d = self.distances[i][j]
            if d is None:
                raise ClusterError(
                    f"Points {self.labels[i]} and {self.labels[j]} coincide",
                    context={"i": self.labels[i], "j": self.labels[j]},
                )
            if d != self.distances[j][i]:
                raise ClusterError(f"Valuation matrix is not symmetric at ({self.labels[i]}, {self.labels[j]})")
            if d <= 0:
                raise ClusterError(
                    f"v({self.labels[i]} - {self.labels[j]}) = {d} is not positive; points must lie in the open unit disc"
                )
        for i, j, k in combinations(range(r), 3):
            a, b, c = sorted((self.distances[i][j], self.distances[j][k], self.distances[i][k]))
            if a != b:
                raise ClusterError(
                    "Valuation matrix violates the ultrametric inequality",
                    context={"points": f"{self.labels[i]},{self.labels[j]},{self.labels[k]}"},
                )

    @classmethod
    def from_points(
        cls, ring: EisensteinRing, points: Sequence[PadicElement], labels: Optional[Sequence[str]] = None
    ) -> "MarkedDisc":
        """Marked disc from points with positive valuation (0 is allowed).

        Raises:
            ClusterError: If a point lies outside the open unit disc or two
                points agree to working precision
        """
        values = tuple(ring(x) for x in points)
        names = tuple(labels) if labels is not None else tuple(f"x{i}" for i in range(1, len(values) + 1))
        if len(names) != len(values):
            raise ClusterError(f"Got {len(names)} labels for {len(values)} points")
        for name, x in zip(names, values):
            if not x.is_zero() and x.valuation() <= 0:
                raise ClusterError(f"Point {name} has valuation {x.valuation()}, outside the open unit disc")
        matrix = []
        for i, a in enumerate(values):
            row: list[Optional[Fraction]] = []
            for j, b in enumerate(values):
                if i == j:
                    row.append(None)
                    continue
                d = _distance(a, b)
                row.append(None if d == math.inf else d)
            matrix.append(tuple(row))
        return cls(names, tuple(matrix), ring, values)

    @classmethod
    def from_valuation_matrix(
        cls, matrix: Sequence[Sequence[Any]], labels: Optional[Sequence[str]] = None
    ) -> "MarkedDisc":
        """Marked disc from exact pairwise valuations ("a/b" strings or ints).

        Diagonal entries may be null or "inf".
        """
        r = len(matrix)
        names = tuple(labels) if labels is not None else tuple(f"x{i}" for i in range(1, r + 1))
        if len(names) != r:
            raise ClusterError(f"Got {len(names)} labels for a {r} x {r} matrix")
        rows = []
        for i, row in enumerate(matrix):
            parsed: list[Optional[Fraction]] = []
            for j, value in enumerate(row):
                if i == j or value is None or value == "inf":
                    parsed.append(None)
                else:
                    try:
                        parsed.append(parse_rational(value))
                    except ValidationError as e:
                        raise ClusterError(f"Bad valuation at ({names[i]}, {names[j]}): {e.message}") from e
            rows.append(tuple(parsed))
        return cls(names, tuple(rows))

    @classmethod
    def from_json(cls, data: dict, precision: Optional[int] = None) -> "MarkedDisc":
        """Parse a stable-model document.

        Either {"valuations": [[...], ...], "labels": [...]} or
        {"p": 5, "eisenstein": [-5, 0, 1], "r": 1, "points": [{"label": "5a",
        "coefficients": [0, 5]}, ...]} where the coefficients multiply the
        powers of the uniformizer.

        Raises:
            InputFileError: If the schema tag is wrong
            ClusterError: If the document is malformed
        """
        check_schema(data, config.SCHEMA_STABLE_MODEL)
        try:
            if "valuations" in data:
                return cls.from_valuation_matrix(data["valuations"], data.get("labels"))
            ring = ring_from_json(data, precision)
            labels = [str(entry["label"]) for entry in data["points"]]
            points = [element_from_digits(ring, entry["coefficients"]) for entry in data["points"]]
        except (KeyError, TypeError, ValueError, ValidationError) as e:
            raise ClusterError(f"Malformed marked disc document: {e}") from e
        return cls.from_points(ring, points, labels)

    def __len__(self) -> int:
        return len(self.labels)

    def distance(self, i: int, j: int) -> Distance:
        if i == j:
            return math.inf
        return self.distances[i][j]


class SpecializationKind(str, Enum):
    VERTEX = "vertex"
    NODE = "node"
    INFINITY = "infinity"


@dataclass(frozen=True)
class Specialization:
    """Where a point of the disc lands on the special fiber.

    Attributes:
        kind: A component, a node between two components, or the marking at infinity
        vertex: Component id for VERTEX
        edge: (parent, child) ids for NODE
    """

    kind: SpecializationKind
    vertex: Optional[str] = None
    edge: Optional[tuple[str, str]] = None

    def to_json(self) -> dict:
        data: dict[str, Any] = {"kind": self.kind.value}
        if self.vertex is not None:
            data["vertex"] = self.vertex
        if self.edge is not None:
            data["edge"] = list(self.edge)
        return data


class ClusterTree:
    """Cluster tree of a marked disc, stored as a networkx DiGraph.

    Nodes carry "depth", "cluster" (all labels below) and "points" (labels
    that specialize to the component itself). Edges carry "thickness". The
    root edge to infinity is kept as the node INFINITY_ID.
    """

    def __init__(self, disc: MarkedDisc, graph: nx.DiGraph, root: str):
        self.disc = disc
        self.graph = graph
        self.root = root

    @property
    def vertices(self) -> list[str]:
        return [v for v in self.graph.nodes if v != INFINITY_ID]

    def depth(self, v: str) -> Fraction:
        return self.graph.nodes[v]["depth"]

    def cluster(self, v: str) -> tuple[str, ...]:
        return self.graph.nodes[v]["cluster"]

    def points_on(self, v: str) -> tuple[str, ...]:
        return self.graph.nodes[v]["points"]

    def center(self, v: str) -> str:
        """First marked point of the cluster, in input order."""
        return self.cluster(v)[0]

    def parent(self, v: str) -> str:
        return next(iter(self.graph.predecessors(v)))

    def children(self, v: str) -> list[str]:
        return list(self.graph.successors(v))

    def thickness(self, parent: str, child: str) -> Fraction:
        return self.graph.edges[parent, child]["thickness"]

    @property
    def root_thickness(self) -> Fraction:
        return self.thickness(INFINITY_ID, self.root)

    def internal_thicknesses(self) -> list[Fraction]:
        return [t for u, _, t in self.graph.edges(data="thickness") if u != INFINITY_ID]

    def special_points(self, v: str) -> int:
        """Marked points, nodes and the point towards infinity on the component."""
        return len(self.points_on(v)) + len(self.children(v)) + 1

    def path_depth(self, v: str) -> Fraction:
        """Sum of thicknesses from infinity down to v."""
        path = nx.shortest_path(self.graph, INFINITY_ID, v)
        return sum((self.thickness(a, b) for a, b in zip(path, path[1:])), Fraction(0))

    def specialization_map(self) -> dict[str, str]:
        return {label: v for v in self.vertices for label in self.points_on(v)}

    def describe(self, kind: SpecializationKind, v: str, child: Optional[str] = None) -> str:
        """The set of disc points with this specialization, as valuation conditions."""
        if kind is SpecializationKind.INFINITY:
            return f"{_dist_text(self.center(v))} < {format_rational(self.depth(v))}"
        if kind is SpecializationKind.NODE:
            return (
                f"{format_rational(self.depth(v))} < {_dist_text(self.center(child))}"
                f" < {format_rational(self.depth(child))}"
            )
        depth = format_rational(self.depth(v))
        if not self.children(v):
            return f"{_dist_text(self.center(v))} >= {depth}"
        return " and ".join(f"{_dist_text(self.center(c))} = {depth}" for c in self.children(v))

    def specialization_table(self) -> list[dict[str, Any]]:
        """One row per stratum: infinity, every component, every node."""
        rows = [
            {
                "set": self.describe(SpecializationKind.INFINITY, self.root),
                "specialization": Specialization(SpecializationKind.INFINITY).to_json(),
            }
        ]
        for v in nx.bfs_tree(self.graph, self.root):
            if v != self.root:
                parent = self.parent(v)
                rows.append(
                    {
                        "set": self.describe(SpecializationKind.NODE, parent, v),
                        "specialization": Specialization(SpecializationKind.NODE, edge=(parent, v)).to_json(),
                    }
                )
            rows.append(
                {
                    "set": self.describe(SpecializationKind.VERTEX, v),
                    "specialization": Specialization(SpecializationKind.VERTEX, vertex=v).to_json(),
                    "points": list(self.points_on(v)),
                }
            )
        return rows

    def to_json(self) -> dict:
        return {
            "vertices": [
                {"id": v, "depth": format_rational(self.depth(v)), "points": list(self.points_on(v))}
                for v in self.vertices
            ],
            "edges": [
                {"parent": u, "child": w, "thickness": format_rational(t)}
                for u, w, t in self.graph.edges(data="thickness")
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph stable_model {", f'  "{INFINITY_ID}" [shape=point];']
        for v in self.vertices:
            label = f"{v}\\n{', '.join(self.points_on(v))}"
            lines.append(f'  "{v}" [label="{label}"];')
        for u, w, t in self.graph.edges(data="thickness"):
            lines.append(f'  "{u}" -> "{w}" [label="{format_rational(t)}"];')
        lines.append("}")
        return "\n".join(lines)


def _dist_text(label: str) -> str:
    if label == "0":
        return "v(x)"
    if label.isalnum():
        return f"v(x - {label})"
    return f"v(x - ({label}))"


def _split(disc: MarkedDisc, members: list[int]) -> tuple[Fraction, list[list[int]]]:
    """Depth of a cluster and its classes under v(x_i - x_j) > depth."""
    depth = min(disc.distance(i, j) for i, j in combinations(members, 2))
    classes: list[list[int]] = []
    for i in members:
        for c in classes:
            if disc.distance(c[0], i) > depth:
                c.append(i)
                break
        else:
            classes.append([i])
    return depth, classes


def cluster_tree(disc: MarkedDisc) -> ClusterTree:
    """Build the stable model of (P^1; infinity, x_1, ..., x_r) restricted to the disc.

    Every cluster splits into at least two classes, so each component carries
    the parent node plus at least two further special points and is stable.

    Examples:
        >>> ring = make_eisenstein_ring(5, [-5, 0, 1])
        >>> a = ring.pi
        >>> pts = [ring(0), ring(5), ring(10), ring(25), 5 * a, 5 + 5 * a]
        >>> tree = cluster_tree(MarkedDisc.from_points(ring, pts))
        >>> len(tree.vertices), tree.root_thickness
        (4, Fraction(1, 1))
    """
    graph = nx.DiGraph()
    graph.add_node(INFINITY_ID)
    counter = 0
    queue: list[tuple[Optional[str], list[int]]] = [(None, list(range(len(disc))))]
    root = ""
    while queue:
        parent, members = queue.pop(0)
        depth, classes = _split(disc, members)
        v = f"X{counter}"
        counter += 1
        owned = tuple(disc.labels[c[0]] for c in classes if len(c) == 1)
        graph.add_node(v, depth=depth, cluster=tuple(disc.labels[i] for i in members), points=owned)
        if parent is None:
            root = v
            graph.add_edge(INFINITY_ID, v, thickness=depth)
        else:
            thickness = depth - graph.nodes[parent]["depth"]
            if thickness <= 0:
                raise ClusterError("Cluster depths do not increase", context={"vertex": v})  # pragma: no cover
            graph.add_edge(parent, v, thickness=thickness)
        queue.extend((v, c) for c in classes if len(c) > 1)

    tree = ClusterTree(disc, graph, root)
    logger.info(f"Stable model with {len(tree.vertices)} components, root thickness {tree.root_thickness}")
    return tree


def specialize_distances(tree: ClusterTree, distances: Mapping[str, Distance]) -> Specialization:
    """Specialization of a point given v(x - x_i) for every marked x_i.

    The point lies in the residue disc of a child cluster D of a component C
    exactly when v(x - c_D) > depth(C); it then reaches D itself when
    v(x - c_D) >= depth(D) and stops on the node otherwise.
    """
    v = tree.root
    if distances[tree.center(v)] < tree.depth(v):
        return Specialization(SpecializationKind.INFINITY)
    while True:
        for child in tree.children(v):
            w = distances[tree.center(child)]
            if w > tree.depth(v):
                if w >= tree.depth(child):
                    v = child
                    break
                return Specialization(SpecializationKind.NODE, edge=(v, child))
        else:
            return Specialization(SpecializationKind.VERTEX, vertex=v)


def specialize(point: PadicElement, tree: ClusterTree) -> Specialization:
    """Component, node or infinity that a point of the disc reduces to.

    Raises:
        ClusterError: If the tree was built from a bare valuation matrix
    """
    disc = tree.disc
    if disc.ring is None:
        raise ClusterError("Specializing a point needs a disc given by points")
    x = disc.ring(point)
    try:
        distances = {label: _distance(x, y) for label, y in zip(disc.labels, disc.points)}
    except PrecisionError as e:  # pragma: no cover
        raise ClusterError(f"Cannot separate the point from the marked points: {e.message}") from e
    return specialize_distances(tree, distances)
