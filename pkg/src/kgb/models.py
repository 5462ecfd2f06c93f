"""Data models for the KGB comparison.

Classes:
    KgbRow: One subgroup of the comparison table.
    KgbVerdict: Outcome of a predicate check or a witness search.
    SearchBounds: Limits on the witness search.
"""

from dataclasses import dataclass, field
from typing import Optional

from src import config
from src.groups.base import FiniteGroup
from src.groups.branch_cycles import BranchCycleDescription, ram_divisor_char0, ram_divisor_charp
from src.groups.subgroups import subgroups
from src.ramification.subgroups import SubgroupFiltration
from src.utils.errors import KgbError


@dataclass(frozen=True)
class KgbRow:
    """Ramification divisor degrees of X -> X/H and Y -> Y/H.

    Attributes:
        subgroup: H as a set of elements
        char0: deg R_X for the characteristic-zero cover
        charp: deg R_Y for the Katz-Gabber cover
    """

    subgroup: frozenset
    char0: int
    charp: int

    @property
    def order(self) -> int:
        return len(self.subgroup)

    @property
    def balanced(self) -> bool:
        return self.char0 == self.charp

    def to_json(self) -> list[int]:
        return [self.order, self.char0, self.charp]


@dataclass
class KgbVerdict:
    """Result of a KGB check.

    Predicate verdicts carry no witness and an empty table. Search verdicts
    carry the witness (if any) and the full subgroup table.

    Attributes:
        vanishes: Whether the KGB obstruction vanishes
        witness: A characteristic-zero branch cycle description, if found
        table: One row per subgroup, in subgroup enumeration order
        faithful: Whether the tame part acts faithfully on P, when known
    """

    vanishes: bool
    witness: Optional[BranchCycleDescription] = None
    table: list[KgbRow] = field(default_factory=list)
    faithful: Optional[bool] = None

    def __post_init__(self):
        if self.vanishes and self.witness is not None and not all(row.balanced for row in self.table):
            raise KgbError("A vanishing verdict with a witness must balance every row")

    def to_json(self) -> dict:
        return {
            "vanishes": self.vanishes,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "table": [row.to_json() for row in self.table],
        }


@dataclass(frozen=True)
class SearchBounds:
    """Limits on the witness search.

    Attributes:
        max_length: Longest branch cycle description considered
        max_nodes: Search nodes visited before giving up
    """

    max_length: int = config.DEFAULT_SEARCH_MAX_LENGTH
    max_nodes: int = config.DEFAULT_SEARCH_MAX_NODES

    @classmethod
    def from_config(cls, user_config: dict | None = None) -> "SearchBounds":
        search = (user_config or config.load_user_config()).get("search", {})
        return cls(
            max_length=int(search.get("max_length", config.DEFAULT_SEARCH_MAX_LENGTH)),
            max_nodes=int(search.get("max_nodes", config.DEFAULT_SEARCH_MAX_NODES)),
        )


def kgb_table(bcd: BranchCycleDescription, wild: SubgroupFiltration) -> list[KgbRow]:
    """Compare deg R_X and deg R_Y over every subgroup of the group."""
    group: FiniteGroup = bcd.group
    return [
        KgbRow(subgroup=h, char0=ram_divisor_char0(bcd, h), charp=ram_divisor_charp(group, wild, h))
        for h in subgroups(group)
    ]
