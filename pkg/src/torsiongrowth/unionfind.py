"""Union-find with a Z/2 label on every element relative to its class root."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable


class SignedUnionFind:
    """Classes of elements plus a parity for each; ``union(a, b, p)`` asserts
    parity(a) + parity(b) = p.  Merges are logged as a spanning forest so a
    failed assertion can be explained by an explicit odd cycle.
    """

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        self.parity: dict = {}
        self.rank: dict = {}
        self.forest: dict = {}
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.parity[x] = 0
            self.rank[x] = 0
            self.forest[x] = []

    def find(self, x) -> tuple[Hashable, int]:
        self.add(x)
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the far end
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, a, b, p: int = 0) -> bool:
        """Merge; returns False if the classes already disagree with ``p``."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == p
        self.forest[a].append((b, p))
        self.forest[b].append((a, p))
        if self.rank[ra] < self.rank[rb]:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ p
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def same(self, a, b) -> bool:
        return self.find(a)[0] == self.find(b)[0]

    def classes(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x)[0], []).append(x)
        return [sorted(v) for v in sorted(out.values(), key=min)]

    def forest_path(self, a, b) -> list:
        """Elements on the spanning-forest path from a to b (inclusive)."""
        prev = {a: None}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            if x == b:
                break
            for y, _ in self.forest[x]:
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        if b not in prev:
            raise KeyError(f"{b!r} not connected to {a!r}")
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        return path[::-1]
