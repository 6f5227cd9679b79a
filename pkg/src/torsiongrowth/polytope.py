"""Combinatorial right-angled polytopes.

A polytope is recorded by its facets and the facet adjacency graph.  For a
compact right-angled polytope every clique of the adjacency graph is a face
(the polytope is flag), so the codimension-k faces are exactly the k-cliques
and the vertices are the n-cliques.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Polytope:
    name: str
    dimension: int
    facets: tuple[str, ...]
    adjacency: frozenset[frozenset[int]]
    declared_vertices: tuple[frozenset[int], ...] | None = field(default=None, compare=False)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @cached_property
    def neighbours(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in self.facets]
        for pair in self.adjacency:
            if len(pair) == 2:
                a, b = pair
                nb[a].add(b)
                nb[b].add(a)
        return tuple(frozenset(s) for s in nb)

    def adjacent(self, a: int, b: int) -> bool:
        return b in self.neighbours[a]

    def closed_star(self, f: int) -> frozenset[int]:
        return self.neighbours[f] | {f}

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Adjacent facet pairs, sorted."""
        return tuple(sorted(tuple(sorted(p)) for p in self.adjacency if len(p) == 2))

    def cliques(self, k: int) -> tuple[tuple[int, ...], ...]:
        """All k-cliques of the adjacency graph as sorted tuples."""
        if k == 0:
            return ((),)
        out: list[tuple[int, ...]] = []

        def extend(clique: tuple[int, ...], candidates: list[int]) -> None:
            if len(clique) == k:
                out.append(clique)
                return
            for i, c in enumerate(candidates):
                extend(clique + (c,), [d for d in candidates[i + 1:] if d in self.neighbours[c]])

        extend((), list(range(self.n_facets)))
        return tuple(out)

    @cached_property
    def vertices(self) -> tuple[tuple[int, ...], ...]:
        return self.cliques(self.dimension)

    def face_counts(self) -> list[int]:
        """Number of faces of each dimension 0..n (index = dimension)."""
        return [len(self.cliques(self.dimension - d)) for d in range(self.dimension + 1)]

    def index(self, facet: str | int) -> int:
        if isinstance(facet, int):
            if not 0 <= facet < self.n_facets:
                raise PolytopeError(f"facet index {facet} out of range")
            return facet
        try:
            return self.facets.index(facet)
        except ValueError:
            raise PolytopeError(f"unknown facet {facet!r}") from None

    # 2-skeleton of a 3-polytope, used for cellular chain complexes

    def edge_endpoints(self, edge: tuple[int, int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(tail, head) vertices of a polytope edge; tail is the smaller triple."""
        a, b = edge
        ends = sorted(tuple(sorted((a, b, c))) for c in self.neighbours[a] & self.neighbours[b])
        if len(ends) != 2:
            raise PolytopeError(f"edge {edge} has {len(ends)} endpoints")
        return ends[0], ends[1]

    def facet_cycle(self, f: int) -> tuple[int, ...]:
        """Neighbours of f in cyclic order around the boundary of f."""
        nb = self.neighbours[f]
        ring = {g: sorted(nb & self.neighbours[g]) for g in nb}
        if any(len(v) != 2 for v in ring.values()):
            raise PolytopeError(f"neighbours of facet {self.facets[f]} do not form a cycle")
        start = min(nb)
        cycle = [start, ring[start][0]]
        while len(cycle) < len(nb):
            a, b = ring[cycle[-1]]
            cycle.append(b if a == cycle[-2] else a)
        if cycle[0] not in ring[cycle[-1]] or len(set(cycle)) != len(nb):
            raise PolytopeError(f"neighbours of facet {self.facets[f]} do not form a single cycle")
        return tuple(cycle)

    def facet_boundary(self, f: int) -> list[tuple[tuple[int, int], int]]:
        """Oriented boundary of the 2-face f as (edge, +-1) pairs."""
        cyc = self.facet_cycle(f)
        out = []
        for i, g in enumerate(cyc):
            edge = (min(f, g), max(f, g))
            tail, _ = self.edge_endpoints(edge)
            out.append((edge, 1 if tail == tuple(sorted((f, cyc[i - 1], g))) else -1))
        return out


@dataclass
class ValidationReport:
    problems: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.problems

    @property
    def ok(self) -> bool:
        return not self.problems


def validate(p: Polytope) -> ValidationReport:
    report = ValidationReport()
    n = p.n_facets
    if p.dimension < 1:
        report.problems.append(f"dimension {p.dimension} is not positive")
    if len(set(p.facets)) != n:
        report.problems.append("duplicate facet identifiers")
    for pair in p.adjacency:
        idx = sorted(pair)
        if any(not 0 <= i < n for i in idx):
            report.problems.append(f"adjacency {idx} refers to a missing facet")
        if len(pair) == 1:
            i = next(iter(pair))
            report.problems.append(f"irreflexivity violated: facet {p.facets[i] if 0 <= i < n else i} adjacent to itself")
    if n and not report.problems:
        seen = {0}
        stack = [0]
        while stack:
            a = stack.pop()
            for b in p.neighbours[a]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != n:
            report.problems.append(f"adjacency graph is disconnected ({len(seen)} of {n} facets reachable)")
    if p.declared_vertices is not None and not report.problems:
        cliques = set(p.vertices)
        declared = set()
        for v in p.declared_vertices:
            t = tuple(sorted(v))
            declared.add(t)
            names = [p.facets[i] for i in t]
            if len(t) != p.dimension:
                report.problems.append(f"vertex {names} has {len(t)} facets, expected {p.dimension}")
            elif t not in cliques:
                report.problems.append(f"vertex {names} is not a {p.dimension}-clique")
        for t in sorted(cliques - declared):
            report.problems.append(f"{p.dimension}-clique {[p.facets[i] for i in t]} is not a declared vertex")
    return report


def opposite_facet(p: Polytope, f: int) -> int:
    """The facet whose closed star is disjoint from that of f and covers the rest."""
    star = p.closed_star(f)
    everything = set(range(p.n_facets))
    candidates = [
        g for g in range(p.n_facets)
        if not (p.closed_star(g) & star) and p.closed_star(g) | star == everything
    ]
    if not candidates:
        raise PolytopeError(f"facet {p.facets[f]} has no opposite facet")
    if len(candidates) > 1:
        raise PolytopeError(f"facet {p.facets[f]} has several opposite candidates")
    return candidates[0]


def _dodecahedron() -> Polytope:
    # 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    pairs = []
    for i in range(5):
        u, u1 = 1 + i, 1 + (i + 1) % 5
        l, l1 = 6 + i, 6 + (i + 1) % 5
        pairs += [(0, u), (u, u1), (u, l), (u1, l), (l, l1), (l, 11)]
    return from_pairs("dodecahedron", 3, [f"f{i}" for i in range(12)], pairs)


def from_pairs(name: str, dimension: int, facets: list[str], pairs, vertices=None) -> Polytope:
    return Polytope(
        name=name,
        dimension=dimension,
        facets=tuple(facets),
        adjacency=frozenset(frozenset(p) for p in pairs),
        declared_vertices=None if vertices is None else tuple(frozenset(v) for v in vertices),
    )


BUILTINS = {"dodecahedron": _dodecahedron}


def build_builtin(name: str) -> Polytope:
    try:
        p = BUILTINS[name]()
    except KeyError:
        raise PolytopeError(f"unknown builtin polytope {name!r}") from None
    report = validate(p)
    if not report:
        raise PolytopeError("; ".join(report.problems))
    return p


def from_json(data: dict) -> Polytope:
    """Parse the polytope JSON schema; facet names map to indices in order."""
    try:
        facets = [str(f) for f in data["facets"]]
        index = {f: i for i, f in enumerate(facets)}
        pairs = [(index[a], index[b]) for a, b in data["adjacency"]]
        vertices = None
        if data.get("vertices") is not None:
            vertices = [[index[x] for x in v] for v in data["vertices"]]
        return from_pairs(str(data["name"]), int(data["dimension"]), facets, pairs, vertices)
    except (KeyError, TypeError, ValueError) as exc:
        raise PolytopeError(f"malformed polytope JSON: {exc!r}") from None


def to_json(p: Polytope) -> dict:
    return {
        "name": p.name,
        "dimension": p.dimension,
        "facets": list(p.facets),
        "adjacency": [[p.facets[a], p.facets[b]] for a, b in p.edges],
        "vertices": [[p.facets[i] for i in v] for v in p.vertices],
    }


def load(source: str) -> Polytope:
    """``builtin:<name>`` or a path to a polytope JSON file."""
    if source.startswith("builtin:"):
        return build_builtin(source.split(":", 1)[1])
    return from_json(json.loads(Path(source).read_text()))
