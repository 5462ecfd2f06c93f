"""Brute-force subgroup enumeration."""

import logging

from src import config
from src.groups.base import FiniteGroup
from src.utils.errors import GroupSizeError

logger = logging.getLogger(__name__)


def subgroups(group: FiniteGroup) -> list[frozenset]:
    """All subgroups of a small group, sorted by (order, sorted elements).

    Every subgroup is the join of its cyclic subgroups, so the search starts
    from the cyclic subgroups and closes under joins with them.

    Raises:
        GroupSizeError: If |G| exceeds config.MAX_GROUP_ORDER
    """
    if group.order > config.MAX_GROUP_ORDER:
        raise GroupSizeError(
            f"Group of order {group.order} exceeds the enumeration limit",
            context={"limit": config.MAX_GROUP_ORDER},
        )
    cyclic = set(group.cyclic_subgroup(g) for g in group.elements)
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                joined = group.generated_by(h | c)
                if joined not in found:
                    found.add(joined)
                    nxt.append(joined)
        frontier = nxt
    result = sorted(found, key=lambda s: (len(s), sorted(s)))
    logger.debug(f"{group.name}: {len(result)} subgroups")
    return result


def is_subgroup(group: FiniteGroup, subset: frozenset) -> bool:
    if group.identity not in subset:
        return False
    return all(group.mul(a, group.inverse(b)) in subset for a in subset for b in subset)


def is_normal(group: FiniteGroup, subgroup: frozenset, ambient: frozenset | None = None) -> bool:
    """True if every element of ambient (default G) normalizes the subgroup."""
    ambient = frozenset(group.elements) if ambient is None else ambient
    return all(group.conjugate(h, x) in subgroup for x in ambient for h in subgroup)
