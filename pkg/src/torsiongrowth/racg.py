"""Right-angled Coxeter groups of polytopes.

Generators are the facet reflections, indexed like the facets.  A word is a
tuple of generator indices; since every generator is an involution no
inverse flags are needed.  Homomorphisms to elementary abelian 2-groups are
stored as one bitmask per generator (bit i = coordinate i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polytope import Polytope

Word = tuple[int, ...]


@dataclass(frozen=True)
class RacgPresentation:
    polytope: Polytope
    relators: tuple[Word, ...]

    @property
    def n_generators(self) -> int:
        return self.polytope.n_facets

    def generator_name(self, g: int) -> str:
        return f"g_{self.polytope.facets[g]}"

    def format_word(self, w: Sequence[int]) -> str:
        return "*".join(self.generator_name(g) for g in w) or "1"


def presentation(p: Polytope) -> RacgPresentation:
    """g_f^2 for every facet, then (g_a g_b)^2 for every adjacent pair."""
    rels: list[Word] = [(f, f) for f in range(p.n_facets)]
    rels += [(a, b, a, b) for a, b in p.edges]
    return RacgPresentation(p, tuple(rels))


@dataclass(frozen=True)
class VectorHom:
    """Homomorphism from the Coxeter group to (Z/2)^bits."""

    bits: int
    images: tuple[int, ...]

    def __post_init__(self):
        for v in self.images:
            if v >> self.bits:
                raise ValueError(f"image {v:b} does not fit in {self.bits} bits")

    def __call__(self, w: Sequence[int]) -> int:
        return eval_hom(self, w)

    def compose_mask(self, mask: int) -> VectorHom:
        """The character x -> <x, mask> mod 2 composed after self."""
        return VectorHom(1, tuple(bin(v & mask).count("1") & 1 for v in self.images))


def eval_hom(h: VectorHom, w: Sequence[int]) -> int:
    acc = 0
    for g in w:
        acc ^= h.images[g]
    return acc


def project(v: int, block: Sequence[int] | frozenset[int]) -> int:
    mask = 0
    for i in block:
        mask |= 1 << i
    return v & mask


@dataclass(frozen=True)
class Retraction:
    """Kills every generator outside the closed star of ``facet``."""

    facet: int
    keep: frozenset[int]

    def __call__(self, w: Sequence[int]) -> Word:
        return tuple(g for g in w if g in self.keep)


def retraction(pres: RacgPresentation, f: int) -> Retraction:
    return Retraction(f, pres.polytope.closed_star(f))


def check_retraction_compat(phi: VectorHom, r: Retraction, block: Sequence[int]) -> bool:
    """True iff projecting phi onto ``block`` equals phi after r, on every generator."""
    return all(project(phi.images[g], block) == eval_hom(phi, r((g,))) for g in range(len(phi.images)))


def f2_rank(vectors: Sequence[int]) -> int:
    # basis kept sorted descending so leading bits are distinct and eliminated in order
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def independent(vectors: Sequence[int]) -> bool:
    """Linear independence over F_2."""
    return f2_rank(vectors) == len(vectors)


def f2_span(vectors: Sequence[int]) -> list[int]:
    """All elements of the span, sorted."""
    span = {0}
    for v in vectors:
        if v not in span:
            span |= {x ^ v for x in span}
    return sorted(span)
