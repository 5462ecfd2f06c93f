"""Finite groups of the form P x| Z/m given by explicit element enumeration.

Elements are pairs of integers. A MetacyclicGroup Z/p^n x|_chi Z/m multiplies
(a, b)(a', b') = (a + c^b a', b + b') where chi(1) = c. ElementaryBicyclic is
(Z/p)^2 with componentwise addition.
"""

import logging
from abc import ABC, abstractmethod
from functools import cached_property
from typing import Iterable, Sequence

from sympy import isprime
from sympy.ntheory import n_order

from src.utils.errors import GroupError

logger = logging.getLogger(__name__)

Element = tuple[int, int]


class FiniteGroup(ABC):
    """Base class for the enumerated groups used by the KGB comparison.

    Attributes:
        p: The prime of the wild part
        name: Short display name
    """

    p: int
    name: str

    @property
    @abstractmethod
    def identity(self) -> Element:
        pass

    @abstractmethod
    def mul(self, a: Element, b: Element) -> Element:
        pass

    @abstractmethod
    def inverse(self, a: Element) -> Element:
        pass

    @property
    @abstractmethod
    def elements(self) -> tuple[Element, ...]:
        pass

    @property
    @abstractmethod
    def wild_subgroup(self) -> frozenset:
        """The normal p-Sylow subgroup P."""

    @property
    @abstractmethod
    def tame_inertia(self) -> frozenset:
        """Inertia group at the tame point of the Katz-Gabber cover."""

    # Derived structure

    @property
    def order(self) -> int:
        return len(self.elements)

    def product(self, elements: Iterable[Element]) -> Element:
        result = self.identity
        for g in elements:
            result = self.mul(result, g)
        return result

    def power(self, g: Element, k: int) -> Element:
        if k < 0:
            g, k = self.inverse(g), -k
        result = self.identity
        base = g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def element_order(self, g: Element) -> int:
        return self._orders[g]

    @cached_property
    def _orders(self) -> dict[Element, int]:
        orders = {}
        for g in self.elements:
            k, x = 1, g
            while x != self.identity:
                x = self.mul(x, g)
                k += 1
            orders[g] = k
        return orders

    def conjugate(self, g: Element, x: Element) -> Element:
        """x g x^-1"""
        return self.mul(self.mul(x, g), self.inverse(x))

    def generated_by(self, generators: Iterable[Element]) -> frozenset:
        """Closure of a set of elements under multiplication."""
        gens = [g for g in set(generators) if g != self.identity]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def cyclic_subgroup(self, g: Element) -> frozenset:
        return self._cyclic[g]

    @cached_property
    def _cyclic(self) -> dict[Element, frozenset]:
        return {g: self.generated_by([g]) for g in self.elements}

    @cached_property
    def is_abelian(self) -> bool:
        elements = self.elements
        return all(self.mul(a, b) == self.mul(b, a) for a in elements for b in elements)

    @cached_property
    def is_cyclic(self) -> bool:
        return any(self.element_order(g) == self.order for g in self.elements)

    def conjugacy_classes(self) -> list[frozenset]:
        remaining = list(self.elements)
        classes = []
        seen: set[Element] = set()
        for g in remaining:
            if g in seen:
                continue
            cls = frozenset(self.conjugate(g, x) for x in self.elements)
            seen |= cls
            classes.append(cls)
        return classes

    def left_coset_representatives(self, subgroup: frozenset) -> list[Element]:
        """One representative a per left coset a H, in element order."""
        reps = []
        covered: set[Element] = set()
        for a in self.elements:
            if a in covered:
                continue
            reps.append(a)
            covered.update(self.mul(a, h) for h in subgroup)
        return reps

    def contains(self, g: Sequence[int]) -> bool:
        return tuple(g) in self._element_set

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self.elements)

    def element(self, g: Sequence[int]) -> Element:
        """Validate and normalize a user-supplied element."""
        t = tuple(int(x) for x in g)
        if len(t) != 2 or t not in self._element_set:
            raise GroupError(f"{list(g)} is not an element of {self.name}")
        return t

    def format_element(self, g: Element) -> str:
        return f"({g[0]},{g[1]})"

    def __repr__(self) -> str:
        return self.name


class MetacyclicGroup(FiniteGroup):
    """Z/p^n x|_chi Z/m with chi(1) = c acting on Z/p^n by multiplication.

    Attributes:
        p, n, m: Parameters with p prime not dividing m
        c: Image of the generator of Z/m in (Z/p^n)^*, with c^m = 1
    """

    def __init__(self, p: int, n: int, m: int, c: int):
        if not isprime(p):
            raise GroupError(f"p must be prime, got {p}")
        if n < 1 or m < 1:
            raise GroupError("n and m must be positive")
        if m % p == 0:
            raise GroupError(f"p must not divide m (p={p}, m={m})")
        modulus = p**n
        c %= modulus
        if c % p == 0:
            raise GroupError("chi(1) must be a unit modulo p^n", context={"c": c})
        if pow(c, m, modulus) != 1:
            raise GroupError("chi(1)^m must be 1 modulo p^n", context={"c": c, "m": m})
        self.p = p
        self.n = n
        self.m = m
        self.c = c
        self.modulus = modulus
        self._powers = [pow(c, b, modulus) for b in range(m)]
        self.name = f"Z/{modulus} x| Z/{m} (chi(1)={c})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MetacyclicGroup) and (self.p, self.n, self.m, self.c) == (
            other.p,
            other.n,
            other.m,
            other.c,
        )

    def __hash__(self) -> int:
        return hash(("metacyclic", self.p, self.n, self.m, self.c))

    @property
    def identity(self) -> Element:
        return (0, 0)

    def mul(self, a: Element, b: Element) -> Element:
        return ((a[0] + self._powers[a[1]] * b[0]) % self.modulus, (a[1] + b[1]) % self.m)

    def inverse(self, a: Element) -> Element:
        b = (-a[1]) % self.m
        return ((-self._powers[b] * a[0]) % self.modulus, b)

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple((a, b) for a in range(self.modulus) for b in range(self.m))

    @cached_property
    def wild_subgroup(self) -> frozenset:
        return frozenset((a, 0) for a in range(self.modulus))

    @cached_property
    def tame_inertia(self) -> frozenset:
        return frozenset((0, b) for b in range(self.m))

    @property
    def is_faithful(self) -> bool:
        """True when chi is injective, i.e. c has multiplicative order m."""
        return self.m == 1 or n_order(self.c, self.modulus) == self.m

    def p_subgroup(self, k: int) -> frozenset:
        """The unique subgroup of P of order p^k."""
        step = self.p ** (self.n - k)
        return frozenset((a, 0) for a in range(0, self.modulus, step))


class ElementaryBicyclic(FiniteGroup):
    """(Z/p)^2 written additively."""

    def __init__(self, p: int):
        if not isprime(p):
            raise GroupError(f"p must be prime, got {p}")
        self.p = p
        self.name = f"(Z/{p})^2"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ElementaryBicyclic) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("bicyclic", self.p))

    @property
    def identity(self) -> Element:
        return (0, 0)

    def mul(self, a: Element, b: Element) -> Element:
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def inverse(self, a: Element) -> Element:
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple((a, b) for a in range(self.p) for b in range(self.p))

    @cached_property
    def wild_subgroup(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def tame_inertia(self) -> frozenset:
        return frozenset([self.identity])


def dihedral(p: int, n: int = 1) -> MetacyclicGroup:
    """D_{p^n} = Z/p^n x| Z/2 acting by -1."""
    if p == 2:
        raise GroupError("Dihedral groups here need odd p")
    return MetacyclicGroup(p, n, 2, -1)
