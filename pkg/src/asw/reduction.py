"""Artin-Schreier reduction of y^p - y = f over k((t))."""

import logging
from dataclasses import dataclass
from typing import Optional

from src.algebra.finite_field import FiniteFieldElement
from src.algebra.laurent import LaurentPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArtinSchreierReduction:
    """Standard form of an Artin-Schreier equation with its witness.

    The invariant f = standard + discarded + (witness^p - witness) holds exactly.
    The discarded nonnegative part lies in the image of y -> y^p - y over k[[t]]
    once k is algebraically closed, so it does not change the extension.

    Attributes:
        standard: Negative exponents only, none divisible by p (zero if trivial)
        witness: z with the difference of the negative parts equal to z^p - z
        discarded: The nonnegative part of f
    """

    standard: LaurentPoly
    witness: LaurentPoly
    discarded: LaurentPoly

    @property
    def is_trivial(self) -> bool:
        return self.standard.is_zero()

    def verify(self, f: LaurentPoly) -> bool:
        return f - self.standard - self.discarded == self.witness.artin_schreier()


def reduce_artin_schreier(f: LaurentPoly) -> ArtinSchreierReduction:
    """Bring y^p - y = f into standard form.

    Drops the nonnegative part, then replaces c t^{-pa} by c^{1/p} t^{-a}
    (their difference is z^p - z for z = c^{1/p} t^{-a}) until no exponent is
    divisible by p.
    """
    field = f.field
    p = field.p
    terms = dict(f.negative_part().terms)
    witness: dict[int, FiniteFieldElement] = {}
    while True:
        divisible = [k for k in terms if k % p == 0]
        if not divisible:
            break
        k = min(divisible)
        root = terms.pop(k).pth_root()
        a = k // p
        witness[a] = witness[a] + root if a in witness else root
        terms[a] = terms[a] + root if a in terms else root
        if not terms[a]:
            del terms[a]
        logger.debug(f"Peeled t^{k} to t^{a}")
    return ArtinSchreierReduction(
        standard=LaurentPoly(field, terms, f.var),
        witness=LaurentPoly(field, witness, f.var),
        discarded=f.nonnegative_part(),
    )


def artin_schreier_jump(f: LaurentPoly) -> Optional[int]:
    """The unique upper jump of y^p - y = f, or None for the trivial extension."""
    reduced = reduce_artin_schreier(f)
    if reduced.is_trivial:
        return None
    return reduced.standard.pole_order
