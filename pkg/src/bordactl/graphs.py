"""Simple undirected graphs and a brute-force dominating-set solver.

Graphs feed the reduction generators; the dominating-set search is the
ground truth that reduction equivalence tests compare against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


class GraphError(ValueError):
    pass


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """n vertices labelled 0..n-1 and a set of undirected edges."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("negative vertex count")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u}, {v}) is not canonical or out of range")

    @staticmethod
    def from_edges(n: int, edges: list[tuple[int, int]] | set[tuple[int, int]]) -> "Graph":
        canon = [_canon(u, v) for u, v in edges]
        if len(set(canon)) != len(canon):
            raise GraphError("duplicate edge")
        return Graph(n, frozenset(canon))

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range")
        return sum(1 for e in self.edges if v in e)

    def regular_degree(self) -> int | None:
        """The common degree if the graph is regular, else None."""
        if self.n == 0:
            return 0
        degrees = [self.degree(v) for v in range(self.n)]
        return degrees[0] if len(set(degrees)) == 1 else None


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    """The vertex together with everything adjacent to it."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    return frozenset({v} | {u for u in range(g.n) if _canon(u, v) in g.edges and u != v})


def dominates(g: Graph, subset: frozenset[int]) -> bool:
    adj = g.adjacency()
    return all(v in subset or adj[v] & subset for v in range(g.n))


def solve_dominating_set(g: Graph, k: int) -> frozenset[int] | None:
    """Smallest (then lexicographically least) dominating set of size <= k,
    or None if no such set exists."""
    if k < 0:
        return None
    for size in range(0, min(k, g.n) + 1):
        for combo in combinations(range(g.n), size):
            subset = frozenset(combo)
            if dominates(g, subset):
                return subset
    return None
