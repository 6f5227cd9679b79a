"""Cyclic covers M_p of M1 as permutation actions of the Coxeter group.

Points are pairs (chamber, level) with level in Z/p, packed as
``level * |Q| + chamber_index``; the basepoint is (0, 0) = 0.  Generator g
moves (q, k) to (q + c(g), k + eps(q, g)) where eps is the co-orientation
sign on cells of the wall S and 0 elsewhere.  The stabiliser of the
basepoint is the fundamental group of M_p.

H_1 is computed two ways: abelianised Reidemeister-Schreier relators over
a breadth-first Schreier transversal, and cellular homology of the
quotient of the chamber tiling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .chambers import ChamberComplex, CoorientedWall
from .racg import RacgPresentation, Word
from .zsmith import SparseIntMatrix, TorsionProfile, homology, torsion_profile

SignedWord = tuple[tuple[int, int], ...]


class CoverError(RuntimeError):
    pass


@dataclass(frozen=True)
class CoverAction:
    p: int
    n_chambers: int
    perms: tuple[tuple[int, ...], ...]

    @property
    def n_points(self) -> int:
        return self.n_chambers * self.p

    @property
    def n_generators(self) -> int:
        return len(self.perms)

    def chamber_level(self, x: int) -> tuple[int, int]:
        k, qi = divmod(x, self.n_chambers)
        return qi, k

    def act(self, x: int, word) -> int:
        """Right action of a word; signed letters act like unsigned ones."""
        for g in word:
            if isinstance(g, tuple):
                g = g[0]
            x = self.perms[g][x]
        return x

    def orbit(self, x: int = 0) -> list[int]:
        seen = {x}
        queue = deque([x])
        order = [x]
        while queue:
            y = queue.popleft()
            for perm in self.perms:
                z = perm[y]
                if z not in seen:
                    seen.add(z)
                    order.append(z)
                    queue.append(z)
        return order

    def is_involutive(self) -> bool:
        return all(perm[perm[x]] == x for perm in self.perms for x in range(self.n_points))


def cover_action(cx: ChamberComplex, s: CoorientedWall, p: int) -> CoverAction:
    if p < 1:
        raise ValueError("p must be at least 1")
    Q = len(cx.chambers)
    perms = []
    for g, c in enumerate(cx.colors):
        perm = [0] * (Q * p)
        for qi, q in enumerate(cx.chambers):
            qj = cx.index[q ^ c]
            step = s.sign.get((q, g), 0)
            for k in range(p):
                perm[k * Q + qi] = ((k + step) % p) * Q + qj
        perms.append(tuple(perm))
    action = CoverAction(p, Q, tuple(perms))
    reached = len(action.orbit(0))
    if reached != action.n_points:
        raise CoverError(f"cover for p={p} is disconnected: basepoint orbit has {reached} of {action.n_points} points")
    return action


@dataclass(frozen=True)
class SchreierData:
    """Breadth-first Schreier transversal and the nontrivial Schreier generators.

    ``parent[x]`` is (previous point, letter) on the tree path from the
    basepoint, None for the basepoint.  ``generators`` lists the pairs
    (x, g) whose Schreier generator x g rep(x g)^-1 is not absorbed by the
    tree, in (x, g) order; ``column`` maps each to its index.
    """

    index: int
    parent: tuple[tuple[int, int] | None, ...]
    tree: frozenset[tuple[int, int]]
    generators: tuple[tuple[int, int], ...]

    @cached_property
    def column(self) -> dict[tuple[int, int], int]:
        return {sg: i for i, sg in enumerate(self.generators)}

    def transversal_word(self, x: int) -> Word:
        out = []
        while self.parent[x] is not None:
            x, g = self.parent[x]
            out.append(g)
        return tuple(reversed(out))

    def generator_word(self, x: int, g: int, a: CoverAction) -> SignedWord:
        """rep(x) g rep(x g)^-1 with exponent-signed letters."""
        y = a.perms[g][x]
        fwd = [(h, 1) for h in self.transversal_word(x)]
        back = [(h, -1) for h in reversed(self.transversal_word(y))]
        return tuple(fwd + [(g, 1)] + back)


def schreier(a: CoverAction) -> SchreierData:
    n = a.n_points
    parent: list[tuple[int, int] | None] = [None] * n
    seen = [False] * n
    seen[0] = True
    tree = set()
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, perm in enumerate(a.perms):
            y = perm[x]
            if not seen[y]:
                seen[y] = True
                parent[y] = (x, g)
                tree.add((x, g))
                queue.append(y)
    if not all(seen):
        raise CoverError("action is not transitive")
    gens = tuple((x, g) for x in range(n) for g in range(a.n_generators) if (x, g) not in tree)
    return SchreierData(n, tuple(parent), frozenset(tree), gens)


def rewrite(a: CoverAction, d: SchreierData, x: int, word: Word) -> tuple[list[int], int]:
    """Schreier generator columns met when reading ``word`` from point x.

    Returns the column list (trivial letters skipped) and the end point.
    """
    cols = []
    column = d.column
    for g in word:
        c = column.get((x, g))
        if c is not None:
            cols.append(c)
        x = a.perms[g][x]
    return cols, x


def abelianized_relator_matrix(a: CoverAction, d: SchreierData, pres: RacgPresentation) -> SparseIntMatrix:
    """Rows: every relator conjugated by every transversal word, abelianised."""
    m = SparseIntMatrix(d.index * len(pres.relators), len(d.generators))
    row = 0
    for x in range(d.index):
        for rel in pres.relators:
            cols, end = rewrite(a, d, x, rel)
            if end != x:
                raise CoverError(f"relator {rel} does not fix point {x}")
            for c in cols:
                m.add(row, c, 1)
            row += 1
    return m


def homology_via_rs(a: CoverAction, pres: RacgPresentation) -> TorsionProfile:
    d = schreier(a)
    m = abelianized_relator_matrix(a, d, pres)
    return torsion_profile(m, len(d.generators))


@dataclass
class CoverCells:
    """Cellular chain complex of M_p (boundary rows indexed by source cell)."""

    counts: list[int]  # cells of dimension 0..3
    d1: SparseIntMatrix
    d2: SparseIntMatrix

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts))


def cover_cells(a: CoverAction, cx: ChamberComplex) -> CoverCells:
    pol = cx.polytope
    if pol.dimension != 3:
        raise CoverError("cellular homology is implemented for 3-dimensional polytopes")
    perms = a.perms
    n = a.n_points

    def orbit_min(x: int, facets) -> int:
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for f in facets:
                z = perms[f][y]
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        if len(seen) != 1 << len(facets):
            raise CoverError(f"cell {facets} at point {x} has stabiliser; orientation bookkeeping fails")
        return min(seen)

    verts: dict[tuple[int, tuple[int, ...]], int] = {}
    for v in pol.vertices:
        for x in range(n):
            key = (orbit_min(x, v), v)
            if key not in verts:
                verts[key] = len(verts)
    edges: dict[tuple[int, tuple[int, int]], int] = {}
    d1 = []
    for e in pol.edges:
        tail, head = pol.edge_endpoints(e)
        for x in range(n):
            key = (orbit_min(x, e), e)
            if key not in edges:
                edges[key] = len(edges)
                d1.append((verts[(orbit_min(x, tail), tail)], verts[(orbit_min(x, head), head)]))
    faces = {}
    d2 = []
    for f in range(pol.n_facets):
        bd = pol.facet_boundary(f)
        for x in range(n):
            key = (orbit_min(x, (f,)), f)
            if key not in faces:
                faces[key] = len(faces)
                d2.append([(edges[(orbit_min(x, e), e)], sgn) for e, sgn in bd])
    m1 = SparseIntMatrix(len(edges), len(verts))
    for i, (t, h) in enumerate(d1):
        m1.add(i, h, 1)
        m1.add(i, t, -1)
    m2 = SparseIntMatrix(len(faces), len(edges))
    for i, row in enumerate(d2):
        for e, sgn in row:
            m2.add(i, e, sgn)
    return CoverCells([len(verts), len(edges), len(faces), n], m1, m2)


def homology_via_cells(a: CoverAction, cx: ChamberComplex) -> TorsionProfile:
    cells = cover_cells(a, cx)
    return homology(cells.d2, cells.d1, cells.counts[1])
