"""The closed manifold M1 = H^3 / ker(phi) as a complex of polytope chambers.

Chambers are the elements q of the image group Q (the F_2-span of the
colours); chamber q is glued across its facet f to chamber q + colour(f).
A wall cell (q, f) is one side of the facet-f pentagon of chamber q.  Two
relations generate the walls: crossing the pentagon, (q, f) ~ (q + c(f), f),
and continuing across a right-angled edge, (q, f) ~ (q + c(g), f) for g
adjacent to f.  Crossing flips the transverse side; continuing keeps it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .coloring import FacetColoring
from .polytope import Polytope
from .racg import RacgPresentation, f2_rank, f2_span
from .unionfind import SignedUnionFind

Cell = tuple[int, int]  # (chamber vector, facet)


class ChamberError(ValueError):
    pass


class ChamberComplex:
    def __init__(self, polytope: Polytope, coloring: FacetColoring):
        if len(coloring.colors) != polytope.n_facets:
            raise ChamberError("colouring does not match the polytope's facets")
        zero = [polytope.facets[i] for i, v in enumerate(coloring.colors) if v == 0]
        if zero:
            raise ChamberError(f"facets {zero} have the zero colour")
        self.polytope = polytope
        self.coloring = coloring
        self.colors = coloring.colors
        self.chambers: list[int] = f2_span(self.colors)
        self.index = {q: i for i, q in enumerate(self.chambers)}

    def __len__(self) -> int:
        return len(self.chambers)

    def glue(self, q: int, f: int) -> int:
        return q ^ self.colors[f]

    def gluing_permutation(self, f: int) -> list[int]:
        c = self.colors[f]
        return [self.index[q ^ c] for q in self.chambers]

    def cell_counts(self) -> list[int]:
        """Cells of each dimension 0..n.

        A codimension-k face cut out by the clique K is shared by the
        2^rank(K) chambers reachable with the colours of K.
        """
        n = self.polytope.dimension
        total = len(self.chambers)
        out = []
        for d in range(n + 1):
            cnt = 0
            for K in self.polytope.cliques(n - d):
                cnt += total >> f2_rank([self.colors[i] for i in K])
            out.append(cnt)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.cell_counts()))

    def relations(self, cell: Cell) -> list[tuple[Cell, int]]:
        """Neighbouring wall cells with the side parity each relation imposes."""
        q, f = cell
        out = [((q ^ self.colors[f], f), 1)]
        out += [((q ^ self.colors[g], f), 0) for g in sorted(self.polytope.neighbours[f])]
        return out

    @cached_property
    def _walls(self) -> SignedUnionFind:
        uf = SignedUnionFind()
        for f in range(self.polytope.n_facets):
            for q in self.chambers:
                for other, _ in self.relations((q, f)):
                    uf.union((q, f), other, 0)
        return uf

    def walls(self) -> list[Wall]:
        return [Wall(self, frozenset(cls)) for cls in self._walls.classes()]


def build(polytope: Polytope, coloring: FacetColoring) -> ChamberComplex:
    return ChamberComplex(polytope, coloring)


@dataclass(frozen=True)
class Wall:
    complex: ChamberComplex = field(repr=False, compare=False)
    cells: frozenset[Cell]

    @property
    def pentagons(self) -> int:
        """Number of 2-cells; each is seen from its two sides."""
        return len(self.cells) // 2

    @property
    def facets(self) -> frozenset[int]:
        return frozenset(f for _, f in self.cells)

    @property
    def seed(self) -> Cell:
        return min(self.cells)


def wall_of(cx: ChamberComplex, q: int, f: int) -> Wall:
    uf = cx._walls
    root = uf.find((q, f))[0]
    return Wall(cx, frozenset(c for c in uf.parent if uf.find(c)[0] == root))


@dataclass(frozen=True)
class CoorientedWall:
    wall: Wall
    sign: dict[Cell, int] = field(hash=False)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.sign


@dataclass(frozen=True)
class NonCoorientable:
    """A closed chain of relations whose side parities sum to 1."""

    wall: Wall
    cycle: tuple[Cell, ...]
    closing: tuple[Cell, Cell, int]


def coorient(w: Wall) -> CoorientedWall | NonCoorientable:
    cx = w.complex
    uf = SignedUnionFind(sorted(w.cells))
    for cell in sorted(w.cells):
        for other, p in cx.relations(cell):
            if not uf.union(cell, other, p):
                return NonCoorientable(w, tuple(uf.forest_path(other, cell)), (cell, other, p))
    seed_parity = uf.find(w.seed)[1]
    return CoorientedWall(w, {c: 1 if uf.find(c)[1] == seed_parity else -1 for c in sorted(w.cells)})


def psi(s: CoorientedWall, base: int, word: Sequence[int]) -> int:
    """Signed number of crossings of the wall along the gallery of ``word``."""
    colors = s.wall.complex.colors
    sign = s.sign
    q = base
    total = 0
    for g in word:
        total += sign.get((q, g), 0)
        q ^= colors[g]
    return total


def cocycle_failures(s: CoorientedWall, pres: RacgPresentation) -> list[tuple[int, tuple[int, ...]]]:
    """(chamber, relator) pairs on which psi does not vanish."""
    return [
        (q, r)
        for q in s.wall.complex.chambers
        for r in pres.relators
        if psi(s, q, r) != 0
    ]


def find_psi_witness(s: CoorientedWall, max_length: int = 10) -> tuple[int, ...] | None:
    """Shortest word from chamber 0 back to chamber 0 with psi = +-1."""
    cx = s.wall.complex
    n = cx.polytope.n_facets
    start = (0, 0)
    prev: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        (q, level), depth = queue.popleft()
        if q == 0 and abs(level) == 1:
            word = []
            state = (q, level)
            while prev[state] is not None:
                state, g = prev[state]
                word.append(g)
            return tuple(reversed(word))
        if depth == max_length:
            continue
        for g in range(n):
            nxt = (q ^ cx.colors[g], level + s.sign.get((q, g), 0))
            if nxt not in prev:
                prev[nxt] = ((q, level), g)
                queue.append((nxt, depth + 1))
    return None
