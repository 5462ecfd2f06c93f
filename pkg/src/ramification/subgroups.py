"""Ramification filtrations by explicit subgroups of a finite group."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Protocol, Sequence

from src.ramification.filtration import Numbering, RamFiltration
from src.utils.errors import FiltrationError
from src.utils.rationals import format_rational, parse_rational


class GroupLike(Protocol):
    """What a SubgroupFiltration needs from its ambient group."""

    p: int

    @property
    def elements(self) -> tuple[Hashable, ...]: ...

    @property
    def identity(self) -> Hashable: ...

    def mul(self, a, b): ...

    def inverse(self, a): ...


@dataclass(frozen=True)
class SubgroupFiltration:
    """Lower ramification filtration given by subgroups G_t.

    Uses the break convention of RamFiltration: the subgroup recorded at
    threshold t_k is G_t for t_{k-1} < t <= t_k, and G_t is trivial past the
    last threshold.

    Attributes:
        group: Ambient group
        breaks: ((threshold, subgroup), ...) with subgroups as frozensets
    """

    group: GroupLike
    breaks: tuple[tuple[Fraction, frozenset], ...]

    def __post_init__(self):
        self.validate()

    @classmethod
    def from_breaks(cls, group: GroupLike, breaks: Sequence[tuple[object, Sequence]]) -> "SubgroupFiltration":
        return cls(group=group, breaks=tuple((parse_rational(t), frozenset(s)) for t, s in breaks))

    def validate(self) -> None:
        """Check nesting, normality and the numeric filtration invariants.

        Raises:
            FiltrationError: If a subgroup is not contained and normal in its
                predecessor, or the projected orders are inconsistent
        """
        group = self.group
        universe = set(group.elements)
        previous = frozenset(group.elements)
        for t, subgroup in self.breaks:
            if not subgroup <= universe:
                raise FiltrationError("Subgroup contains non-elements", context={"threshold": format_rational(t)})
            if not subgroup <= previous:
                raise FiltrationError("Subgroups must decrease", context={"threshold": format_rational(t)})
            if group.identity not in subgroup or any(group.mul(a, b) not in subgroup for a in subgroup for b in subgroup):
                raise FiltrationError("Recorded set is not a subgroup", context={"threshold": format_rational(t)})
            for g in previous:
                g_inv = group.inverse(g)
                if any(group.mul(group.mul(g, h), g_inv) not in subgroup for h in subgroup):
                    raise FiltrationError(
                        "Each subgroup must be normal in the previous one", context={"threshold": format_rational(t)}
                    )
            previous = subgroup
        self.project()

    def subgroup_at(self, t: Fraction | int) -> frozenset:
        for threshold, subgroup in self.breaks:
            if t <= threshold:
                return subgroup
        return frozenset([self.group.identity])

    def project(self) -> RamFiltration:
        """The numeric filtration t -> |G_t|."""
        breaks = tuple((t, len(s)) for t, s in self.breaks)
        order = breaks[0][1] if breaks else 1
        return RamFiltration(p=self.group.p, numbering=Numbering.LOWER, order=order, breaks=breaks)

    def intersection_different(self, subgroup: frozenset) -> int:
        """sum over integers j >= 0 of (|H cap G_j| - 1)."""
        total = 0
        covered = -1
        for threshold, g_t in self.breaks:
            last = int(threshold)
            total += (len(subgroup & g_t) - 1) * (last - covered)
            covered = last
        return total

    def to_json(self) -> dict:
        return {
            "breaks": [[format_rational(t), sorted(list(x) for x in s)] for t, s in self.breaks],
        }
