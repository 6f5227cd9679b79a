"""Wall surfaces as closed 2-dimensional cell complexes.

Each pentagon of a wall is a copy of the facet f of the polytope.  Cells of
the polytope lying inside f are fixed pointwise by the reflections that
glue chambers along them, so every copy inherits the polytope's reference
orientation of its edges and vertices and gluing never reverses them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chambers import ChamberComplex, Wall
from .racg import f2_span
from .unionfind import SignedUnionFind
from .zsmith import SparseIntMatrix, TorsionProfile, homology


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceComplex:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]  # (tail, head)
    faces: tuple[tuple[tuple[int, int], ...], ...]  # boundary as (edge, +-1)

    def __post_init__(self):
        uses = [0] * len(self.edges)
        for face in self.faces:
            for e, sgn in face:
                if sgn not in (1, -1):
                    raise SurfaceError(f"bad incidence sign {sgn}")
                uses[e] += 1
        bad = [e for e, u in enumerate(uses) if u != 2]
        if bad:
            raise SurfaceError(f"edges {bad[:5]} are not shared by exactly two face sides")
        for t, h in self.edges:
            if not (0 <= t < self.n_vertices and 0 <= h < self.n_vertices):
                raise SurfaceError("edge endpoint out of range")

    @property
    def counts(self) -> tuple[int, int, int]:
        """(F, E, V)."""
        return len(self.faces), len(self.edges), self.n_vertices

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.faces)

    def boundary_1(self) -> SparseIntMatrix:
        """One row per edge: head - tail."""
        m = SparseIntMatrix(len(self.edges), self.n_vertices)
        for e, (t, h) in enumerate(self.edges):
            m.add(e, h, 1)
            m.add(e, t, -1)
        return m

    def boundary_2(self) -> SparseIntMatrix:
        m = SparseIntMatrix(len(self.faces), len(self.edges))
        for i, face in enumerate(self.faces):
            for e, sgn in face:
                m.add(i, e, sgn)
        return m


def surface_complex(cx: ChamberComplex, w: Wall) -> SurfaceComplex:
    p = cx.polytope
    if p.dimension != 3:
        raise SurfaceError("wall surfaces are built for 3-dimensional polytopes only")
    if len(w.facets) != 1:
        raise SurfaceError(f"wall spans facets {sorted(w.facets)}; expected a single facet label")
    (f,) = w.facets
    colors = cx.colors
    boundary = p.facet_boundary(f)

    def orbit_key(q: int, facets) -> int:
        return min(q ^ x for x in f2_span([colors[i] for i in facets]))

    pent_keys = sorted({orbit_key(q, (f,)) for q, _ in w.cells})
    edge_keys: dict[tuple[int, tuple[int, int]], int] = {}
    vert_keys: dict[tuple[int, tuple[int, ...]], int] = {}
    edge_ends: list[tuple[int, int]] = []

    def vertex(q: int, v: tuple[int, ...]) -> int:
        key = (orbit_key(q, v), v)
        if key not in vert_keys:
            vert_keys[key] = len(vert_keys)
        return vert_keys[key]

    faces = []
    for q in pent_keys:
        face = []
        for edge, sgn in boundary:
            key = (orbit_key(q, edge), edge)
            if key not in edge_keys:
                edge_keys[key] = len(edge_keys)
                tail, head = p.edge_endpoints(edge)
                edge_ends.append((vertex(q, tail), vertex(q, head)))
            face.append((edge_keys[key], sgn))
        faces.append(tuple(face))
    return SurfaceComplex(len(vert_keys), tuple(edge_ends), tuple(faces))


def orientation_classes(s: SurfaceComplex) -> SignedUnionFind | None:
    """Signed union-find of face orientations, or None if none is coherent."""
    sides: list[list[tuple[int, int]]] = [[] for _ in s.edges]
    for i, face in enumerate(s.faces):
        for e, sgn in face:
            sides[e].append((i, sgn))
    uf = SignedUnionFind(range(len(s.faces)))
    for (a, sa), (b, sb) in sides:
        # coherent iff the two sides induce opposite orientations on the edge
        if not uf.union(a, b, int(sa == sb)):
            return None
    return uf


def orientable(s: SurfaceComplex) -> bool:
    return orientation_classes(s) is not None


def surface_h1(s: SurfaceComplex) -> TorsionProfile:
    return homology(s.boundary_2(), s.boundary_1(), len(s.edges))


def sphere() -> SurfaceComplex:
    """Two triangles glued along their common boundary."""
    return SurfaceComplex(
        3,
        ((0, 1), (1, 2), (2, 0)),
        (((0, 1), (1, 1), (2, 1)), ((2, -1), (1, -1), (0, -1))),
    )
