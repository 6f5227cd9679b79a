"""Facet colourings of the dodecahedron into (Z/2)^4 + (Z/2)^3.

Coordinates 0-3 carry alpha, beta, gamma, delta (the first summand) and
coordinates 4-6 carry alpha', beta', gamma' (the second summand), with
delta' = alpha' + beta' + gamma'.  The base facet f is coloured delta and
its neighbours from {alpha, beta, gamma}; the opposite facet f' is coloured
delta' and its neighbours from {alpha', beta', gamma'}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .polytope import Polytope
from .racg import VectorHom, check_retraction_compat, eval_hom, f2_rank, independent, presentation, retraction

ALPHA, BETA, GAMMA, DELTA = 1 << 0, 1 << 1, 1 << 2, 1 << 3
ALPHA_P, BETA_P, GAMMA_P = 1 << 4, 1 << 5, 1 << 6
DELTA_P = ALPHA_P | BETA_P | GAMMA_P
PALETTE = (ALPHA, BETA, GAMMA, DELTA, ALPHA_P, BETA_P, GAMMA_P, DELTA_P)
PALETTE_NAMES = dict(zip(PALETTE, ("alpha", "beta", "gamma", "delta", "alpha'", "beta'", "gamma'", "delta'")))

FIRST_BLOCK = (0, 1, 2, 3)
SECOND_BLOCK = (4, 5, 6)
ALL_COORDS = 0b1111111
FIRST_THREE = 0b0000111


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class FacetColoring:
    bits: int
    colors: tuple[int, ...]

    def hom(self) -> VectorHom:
        return VectorHom(self.bits, self.colors)

    def to_json(self, p: Polytope) -> dict:
        return {"bits": self.bits, "colors": {p.facets[i]: vec_to_str(v, self.bits) for i, v in enumerate(self.colors)}}

    @classmethod
    def from_json(cls, data: dict, p: Polytope) -> FacetColoring:
        try:
            bits = int(data["bits"])
            raw = data["colors"]
            if set(raw) != set(p.facets):
                missing = sorted(set(p.facets) - set(raw))
                extra = sorted(set(raw) - set(p.facets))
                raise ColoringError(f"colour keys do not match facets (missing {missing}, unknown {extra})")
            return cls(bits, tuple(str_to_vec(raw[name], bits) for name in p.facets))
        except (KeyError, TypeError) as exc:
            raise ColoringError(f"malformed colouring JSON: {exc!r}") from None


def vec_to_str(v: int, bits: int) -> str:
    """Bit 0 is the leftmost character."""
    return "".join("1" if v >> i & 1 else "0" for i in range(bits))


def str_to_vec(s: str, bits: int) -> int:
    if len(s) != bits or set(s) - {"0", "1"}:
        raise ColoringError(f"bad colour string {s!r} for {bits} bits")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def stars_partition(p: Polytope, f: int, fp: int) -> bool:
    a, b = p.closed_star(f), p.closed_star(fp)
    return not (a & b) and len(a | b) == p.n_facets


def _backtrack(p: Polytope, domains: Sequence[Sequence[int]], accept) -> list[int] | None:
    n = p.n_facets
    colors = [0] * n

    def go(i: int) -> bool:
        if i == n:
            return accept(colors)
        for c in domains[i]:
            if all(colors[j] != c for j in p.neighbours[i] if j < i):
                colors[i] = c
                if go(i + 1):
                    return True
        colors[i] = 0
        return False

    return list(colors) if go(0) else None


def _vertices_independent(p: Polytope, colors: Sequence[int]) -> bool:
    return all(independent([colors[i] for i in v]) for v in p.vertices)


def search_admissible(p: Polytope, f: int, fp: int) -> FacetColoring:
    """First admissible colouring in lexicographic backtracking order."""
    if not stars_partition(p, f, fp):
        raise ColoringError(
            f"closed stars of {p.facets[f]} and {p.facets[fp]} do not partition the facets"
        )
    domains: list[tuple[int, ...]] = []
    for i in range(p.n_facets):
        if i == f:
            domains.append((DELTA,))
        elif i == fp:
            domains.append((DELTA_P,))
        elif i in p.neighbours[f]:
            domains.append((ALPHA, BETA, GAMMA))
        else:
            domains.append((ALPHA_P, BETA_P, GAMMA_P))
    found = _backtrack(p, domains, lambda cs: _vertices_independent(p, cs))
    if found is None:
        raise ColoringError(f"no admissible colouring of {p.name} around {p.facets[f]}/{p.facets[fp]}")
    return FacetColoring(7, tuple(found))


def four_colouring(p: Polytope) -> FacetColoring:
    """Proper colouring from {alpha, beta, gamma, alpha+beta+gamma} in (Z/2)^3.

    Any three of the four palette vectors are independent, so a proper
    colouring of a simple 3-polytope already gives independent colours at
    every vertex.
    """
    palette = (0b001, 0b010, 0b100, 0b111)
    found = _backtrack(p, [palette] * p.n_facets, lambda cs: True)
    if found is None:
        raise ColoringError(f"{p.name} has no proper 4-colouring")
    return FacetColoring(3, tuple(found))


@dataclass
class Certificate:
    """Outcome of every check on a colouring, with witnesses for failures."""

    image_rank: int
    proper: bool  # adjacent facets get distinct colours
    vertex_independent: bool  # torsion-free kernel
    block_structure: bool
    orientable: bool  # every generator has odd weight
    retraction_r: bool
    retraction_r_prime: bool
    stars_disjoint: bool  # r kills Stab(H') and r' kills Stab(H)
    s_orientable: bool
    s_prime_witness: tuple[int, ...] | None
    problems: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.proper
            and self.vertex_independent
            and self.block_structure
            and self.orientable
            and self.retraction_r
            and self.retraction_r_prime
            and self.stars_disjoint
            and self.s_orientable
            and self.s_prime_witness is not None
        )

    def as_dict(self, p: Polytope) -> dict:
        return {
            "passed": self.passed,
            "image_rank": self.image_rank,
            "C1_proper": self.proper,
            "C2_vertex_independent": self.vertex_independent,
            "C3_block_structure": self.block_structure,
            "O_orientable": self.orientable,
            "retraction_r": self.retraction_r,
            "retraction_r_prime": self.retraction_r_prime,
            "stars_disjoint": self.stars_disjoint,
            "SO_s_orientable": self.s_orientable,
            "SN_witness": None if self.s_prime_witness is None else [p.facets[g] for g in self.s_prime_witness],
            "problems": list(self.problems),
        }


def certify(p: Polytope, c: FacetColoring, f: int, fp: int) -> Certificate:
    colors = c.colors
    phi = c.hom()
    problems: list[str] = []
    name = p.facets

    proper = True
    for a, b in p.edges:
        if colors[a] == colors[b]:
            proper = False
            problems.append(f"C1: adjacent facets {name[a]}, {name[b]} share colour {vec_to_str(colors[a], c.bits)}")

    vertex_ok = True
    for v in p.vertices:
        if not independent([colors[i] for i in v]):
            vertex_ok = False
            problems.append(f"C2: colours at vertex {[name[i] for i in v]} are dependent")

    block_ok = stars_partition(p, f, fp)
    if not block_ok:
        problems.append("C3: closed stars of f and f' do not partition the facets")
    expected = {f: (DELTA,), fp: (DELTA_P,)}
    for g in p.neighbours[f]:
        expected[g] = (ALPHA, BETA, GAMMA)
    for g in p.neighbours[fp]:
        expected.setdefault(g, (ALPHA_P, BETA_P, GAMMA_P))
    for g, allowed in sorted(expected.items()):
        if colors[g] not in allowed:
            block_ok = False
            problems.append(f"C3: facet {name[g]} has colour {vec_to_str(colors[g], c.bits)} outside its block")

    orient = all(x == 1 for x in phi.compose_mask(ALL_COORDS).images)
    if not orient:
        problems.append("O: some generator has even total weight")

    pres = presentation(p)
    r, rp = retraction(pres, f), retraction(pres, fp)
    ret_r = check_retraction_compat(phi, r, FIRST_BLOCK)
    ret_rp = check_retraction_compat(phi, rp, SECOND_BLOCK)
    if not ret_r:
        problems.append("retraction r is not compatible with projection to the first summand")
    if not ret_rp:
        problems.append("retraction r' is not compatible with projection to the second summand")
    disjoint = all(r((g,)) == () for g in rp.keep) and all(rp((g,)) == () for g in r.keep)
    if not disjoint:
        problems.append("stars of f and f' overlap, so r does not kill Stab(H')")

    sigma = phi.compose_mask(FIRST_THREE).images
    s_orient = sigma[f] == 0 and all(sigma[g] == 1 for g in p.neighbours[f])
    if not s_orient:
        problems.append("SO: first-three-coordinate character does not separate f from its neighbours")

    witness = None
    by_colour = {}
    for g in sorted(p.neighbours[fp]):
        by_colour.setdefault(colors[g], g)
    if all(x in by_colour for x in (ALPHA_P, BETA_P, GAMMA_P)):
        cand = (fp, by_colour[ALPHA_P], by_colour[BETA_P], by_colour[GAMMA_P])
        if eval_hom(phi, cand) == 0:
            witness = cand
    if witness is None:
        problems.append("SN: no neighbours of f' coloured alpha', beta', gamma'")

    return Certificate(
        image_rank=f2_rank(colors),
        proper=proper,
        vertex_independent=vertex_ok,
        block_structure=block_ok,
        orientable=orient,
        retraction_r=ret_r,
        retraction_r_prime=ret_rp,
        stars_disjoint=disjoint,
        s_orientable=s_orient,
        s_prime_witness=witness,
        problems=problems,
    )


def base_facet(p: Polytope, c: FacetColoring) -> int:
    """The facet coloured delta if exactly one is, else the first facet."""
    hits = [i for i, v in enumerate(c.colors) if v == DELTA]
    return hits[0] if len(hits) == 1 else 0
