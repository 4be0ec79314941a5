"""Undirected simple graph with per-edge interaction state.

Nodes are the integers 0..n-1 and never change identity during a run.
Each edge carries a survival weight q in (0, 1] and a counter n of
successful interactions in the current period. Storage is a flat edge
list plus a position index, so uniform random edge sampling and edge
removal are both O(1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EdgeState",
    "EmptyGraphError",
    "SocialGraph",
    "UnionFind",
    "connected_components",
    "new_graph",
]


class EmptyGraphError(RuntimeError):
    """Raised when an operation needs at least one edge."""


@dataclass(slots=True)
class EdgeState:
    """State of one undirected edge; endpoints are stored with a < b."""

    a: int
    b: int
    q: float = 1.0
    n: int = 0


class SocialGraph:
    """Simple graph over a fixed node set with O(1) edge sampling.

    Self-loops and parallel edges are rejected. The edge list order is
    an implementation detail (removal swaps the last edge into the
    vacated slot) but it is deterministic for a fixed operation
    sequence, which keeps seeded runs reproducible.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"node count must be positive, got {n}")
        self.node_count = n
        self._edges: list[EdgeState] = []
        self._pos: dict[tuple[int, int], int] = {}
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._deg = np.zeros(n, dtype=np.int64)

    @staticmethod
    def _key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.node_count:
            raise ValueError(f"node {i} outside [0, {self.node_count})")

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def degree(self, i: int) -> int:
        self._check_node(i)
        return int(self._deg[i])

    def degree_array(self) -> np.ndarray:
        """Degrees of all nodes as float64, ready for attachment scores."""
        return self._deg.astype(np.float64)

    def neighbors(self, i: int) -> set[int]:
        self._check_node(i)
        return set(self._adj[i])

    def has_edge(self, a: int, b: int) -> bool:
        return self._key(a, b) in self._pos

    def get_edge(self, a: int, b: int) -> EdgeState:
        try:
            return self._edges[self._pos[self._key(a, b)]]
        except KeyError:
            raise KeyError(f"no edge ({a}, {b})") from None

    def add_edge(self, a: int, b: int, q: float = 1.0) -> bool:
        """Insert edge (a, b) with weight q and a fresh counter n = 0.

        Returns False and leaves the graph unchanged when the edge is
        already present; the caller decides whether that counts as
        success. Self-loops are rejected outright.
        """
        self._check_node(a)
        self._check_node(b)
        if a == b:
            raise ValueError(f"self-loop ({a}, {a}) rejected")
        if not 0.0 < q <= 1.0:
            raise ValueError(f"q must be in (0, 1], got {q}")
        key = self._key(a, b)
        if key in self._pos:
            return False
        self._pos[key] = len(self._edges)
        self._edges.append(EdgeState(key[0], key[1], q, 0))
        self._adj[a].add(b)
        self._adj[b].add(a)
        self._deg[a] += 1
        self._deg[b] += 1
        return True

    def remove_edge(self, a: int, b: int) -> None:
        key = self._key(a, b)
        try:
            pos = self._pos.pop(key)
        except KeyError:
            raise KeyError(f"no edge ({a}, {b})") from None
        last = self._edges.pop()
        if pos < len(self._edges):
            self._edges[pos] = last
            self._pos[(last.a, last.b)] = pos
        self._adj[a].discard(b)
        self._adj[b].discard(a)
        self._deg[a] -= 1
        self._deg[b] -= 1

    def edges(self):
        """Iterate edge states in storage order.

        Do not add or remove edges while iterating; snapshot with
        list(g.edges()) first when the loop mutates the graph.
        """
        return iter(self._edges)

    def edge_array(self) -> np.ndarray:
        """Endpoints as an (E, 2) int array in storage order."""
        arr = np.empty((len(self._edges), 2), dtype=np.int64)
        for k, e in enumerate(self._edges):
            arr[k, 0] = e.a
            arr[k, 1] = e.b
        return arr

    def random_edge(self, rng: np.random.Generator) -> tuple[int, int]:
        """Endpoints of an edge drawn uniformly over edges.

        Uniform over edges means a node is exposed in proportion to its
        degree, which is intended: busy agents meet more events.
        """
        if not self._edges:
            raise EmptyGraphError("graph has no edges to sample")
        e = self._edges[int(rng.integers(0, len(self._edges)))]
        return e.a, e.b


def new_graph(n: int) -> SocialGraph:
    """Graph with n isolated nodes and no edges."""
    return SocialGraph(n)


class UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True


def connected_components(g: SocialGraph) -> list[list[int]]:
    """Partition of the node set into connected components.

    Each component is a sorted list; components are ordered by their
    smallest member. Isolated nodes form singleton components.
    """
    uf = UnionFind(g.node_count)
    for e in g.edges():
        uf.union(e.a, e.b)
    blocks: dict[int, list[int]] = {}
    for i in range(g.node_count):
        blocks.setdefault(uf.find(i), []).append(i)
    return [blocks[r] for r in sorted(blocks, key=lambda r: blocks[r][0])]
