"""Exhaustive search for characteristic-zero witnesses of KGB vanishing.

A witness is a branch cycle description whose characteristic-zero ramification
divisor matches the Katz-Gabber cover's over every subgroup. The contribution
of a branch point depends only on the conjugacy class of its generator, so the
search runs in two phases:

1. Enumerate multisets of conjugacy classes whose summed contributions equal
   the target row for every subgroup. The H = G row fixes the total budget and
   bounds the tuple length.
2. For each such multiset, look for elements of those classes, in some order,
   with product one that generate the group. Rotating a product-one tuple or
   conjugating it simultaneously gives another one, so the first slot is fixed
   to the representative of the smallest class.
"""

import logging
from typing import Iterator, Optional

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from src import config
from src.groups.base import Element, FiniteGroup
from src.groups.branch_cycles import BranchCycleDescription, point_contribution, ram_divisor_charp
from src.groups.subgroups import subgroups
from src.kgb.models import KgbVerdict, SearchBounds, kgb_table
from src.ramification.subgroups import SubgroupFiltration
from src.utils.errors import GroupSizeError, SearchBoundError

logger = logging.getLogger(__name__)


class WitnessSearch:
    """Search state for one group and wild filtration.

    Attributes:
        group: The group G
        wild: Filtration at the wild point of the Katz-Gabber cover
        bounds: Length and node limits
        nodes: Nodes visited so far, across both phases
    """

    def __init__(self, group: FiniteGroup, wild: SubgroupFiltration, bounds: SearchBounds | None = None):
        if group.order > config.MAX_WITNESS_GROUP_ORDER:
            raise GroupSizeError(
                f"Witness search is limited to groups of order at most {config.MAX_WITNESS_GROUP_ORDER}",
                context={"order": group.order},
            )
        self.group = group
        self.wild = wild
        self.bounds = bounds or SearchBounds()
        self.nodes = 0

        self.subgroups = subgroups(group)
        # One column per subgroup, in enumeration order
        self.targets = np.array([ram_divisor_charp(group, wild, h) for h in self.subgroups], dtype=np.int64)
        self.classes = sorted(
            (c for c in group.conjugacy_classes() if group.identity not in c),
            key=lambda c: min(c),
        )
        self.representatives = [min(c) for c in self.classes]
        self.contributions = np.array(
            [[point_contribution(group, g, h) for h in self.subgroups] for g in self.representatives],
            dtype=np.int64,
        ).reshape(len(self.representatives), len(self.subgroups))
        self.budget = int(self.targets[-1])
        self._reachable = self._reachable_budgets()

    def _reachable_budgets(self) -> list[bool]:
        """reachable[x] iff x is a sum of H = G contributions."""
        weights = sorted({int(w) for w in self.contributions[:, -1]})
        reachable = [False] * (self.budget + 1)
        reachable[0] = True
        for x in range(1, self.budget + 1):
            reachable[x] = any(w <= x and reachable[x - w] for w in weights)
        return reachable

    def _visit(self) -> None:
        self.nodes += 1
        if self.nodes > self.bounds.max_nodes:
            raise SearchBoundError(
                "Witness search exceeded its node bound",
                context={"max_nodes": self.bounds.max_nodes},
            )

    def class_multisets(self) -> Iterator[tuple[int, ...]]:
        """Nondecreasing tuples of class indices matching every target row."""
        if self.budget == 0 or not self._reachable[self.budget]:
            return
        yield from self._extend_multiset((), np.zeros_like(self.targets))

    def _extend_multiset(self, chosen: tuple[int, ...], partial: np.ndarray) -> Iterator[tuple[int, ...]]:
        self._visit()
        remaining = self.budget - int(partial[-1])
        if remaining == 0:
            if np.array_equal(partial, self.targets):
                yield chosen
            return
        start = chosen[-1] if chosen else 0
        for k in range(start, len(self.classes)):
            contribution = self.contributions[k]
            weight = int(contribution[-1])
            if weight > remaining or not self._reachable[remaining - weight]:
                continue
            extended = partial + contribution
            if np.any(extended > self.targets):
                continue
            if len(chosen) >= self.bounds.max_length:
                raise SearchBoundError(
                    "Witness tuples would exceed the length bound",
                    context={"max_length": self.bounds.max_length},
                )
            yield from self._extend_multiset(chosen + (k,), extended)

    def realize(self, multiset: tuple[int, ...]) -> Optional[tuple[Element, ...]]:
        """A generating product-one tuple with one element from each listed class."""
        if len(multiset) < 2:
            return None
        group = self.group
        first = multiset[0]
        # Abelian classes are singletons, so one arrangement suffices.
        arrangements = [list(multiset[1:])] if group.is_abelian else multiset_permutations(list(multiset[1:]))
        for rest in arrangements:
            order = [first] + list(rest)
            found = self._fill(order, [self.representatives[first]], self.representatives[first])
            if found is not None:
                return found
        return None

    def _fill(self, order: list[int], prefix: list[Element], running: Element) -> Optional[tuple[Element, ...]]:
        self._visit()
        group = self.group
        position = len(prefix)
        if position == len(order) - 1:
            closing = group.inverse(running)
            if closing not in self.classes[order[-1]]:
                return None
            candidate = tuple(prefix + [closing])
            if len(group.generated_by(candidate)) != group.order:
                return None
            return candidate
        for g in sorted(self.classes[order[position]]):
            found = self._fill(order, prefix + [g], group.mul(running, g))
            if found is not None:
                return found
        return None

    def run(self) -> Optional[BranchCycleDescription]:
        logger.debug(
            f"Witness search in {self.group.name}: budget {self.budget}, "
            f"{len(self.classes)} classes, {len(self.subgroups)} subgroups"
        )
        for multiset in self.class_multisets():
            elements = self.realize(multiset)
            if elements is not None:
                logger.info(f"Witness found after {self.nodes} nodes: {list(elements)}")
                return BranchCycleDescription(self.group, elements)
        logger.info(f"No witness in {self.group.name} after {self.nodes} nodes")
        return None


def kgb_witness_search(
    group: FiniteGroup, wild: SubgroupFiltration, bounds: SearchBounds | None = None
) -> Optional[BranchCycleDescription]:
    """Find a branch cycle description matching the Katz-Gabber cover on every subgroup.

    Returns None when no product-one generating tuple balances every row.

    Raises:
        GroupSizeError: If |G| exceeds config.MAX_WITNESS_GROUP_ORDER
        SearchBoundError: If the length or node bound is exceeded
    """
    return WitnessSearch(group, wild, bounds).run()


def kgb_search_verdict(
    group: FiniteGroup, wild: SubgroupFiltration, bounds: SearchBounds | None = None
) -> KgbVerdict:
    """Run the witness search and tabulate the witness against the Katz-Gabber cover."""
    witness = kgb_witness_search(group, wild, bounds)
    if witness is None:
        return KgbVerdict(vanishes=False)
    return KgbVerdict(vanishes=True, witness=witness, table=kgb_table(witness, wild))
