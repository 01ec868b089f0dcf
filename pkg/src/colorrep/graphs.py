"""Finite simple graphs on the vertex set [n]."""
from __future__ import annotations

import json
import math
import re
from collections import deque
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable

from .errors import ValidationError


class Graph:
    """Simple graph with vertices 1..n and an ordered edge list of pairs (i, j), i < j."""

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 1:
            raise ValidationError("a graph needs at least one vertex")
        norm = []
        seen = set()
        for e in edges:
            i, j = sorted(e)
            if not 1 <= i < j <= n:
                raise ValidationError(f"invalid edge {tuple(e)} for n={n}")
            if (i, j) in seen:
                raise ValidationError(f"duplicate edge {(i, j)}")
            seen.add((i, j))
            norm.append((i, j))
        self.n = n
        self.edges: tuple = tuple(norm)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other):
        return isinstance(other, Graph) and (self.n, self.edges) == (other.n, other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    @cached_property
    def is_connected(self) -> bool:
        seen = {1}
        queue = deque([1])
        while queue:
            v = queue.popleft()
            for u in self.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == self.n

    @property
    def is_tree(self) -> bool:
        return self.is_connected and len(self.edges) == self.n - 1

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> "Graph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], data["edges"])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(1, n + 1), 2))


def from_edge_list(n: int, pairs) -> Graph:
    return Graph(n, pairs)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError("a cycle needs at least three vertices")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def preset(name: str) -> Graph:
    """Named graphs: ``K<n>``, ``path_<n>``, ``cycle_<n>``."""
    m = re.fullmatch(r"K(\d+)|path_(\d+)|cycle_(\d+)", name)
    if not m:
        raise ValidationError(f"unknown graph preset {name!r}")
    k, p, c = m.groups()
    if k:
        return complete_graph(int(k))
    if p:
        return path_graph(int(p))
    return cycle_graph(int(c))


def spanning_tree(g: Graph) -> Graph:
    """BFS tree from vertex 1, scanning edges in input order."""
    if not g.is_connected:
        raise ValidationError("spanning tree requested for a disconnected graph")
    seen = {1}
    order = deque([1])
    tree = []
    while order:
        v = order.popleft()
        for i, j in g.edges:
            if v not in (i, j):
                continue
            u = j if i == v else i
            if u not in seen:
                seen.add(u)
                tree.append((i, j))
                order.append(u)
    return Graph(g.n, tree)


def girth(g: Graph) -> float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    best = math.inf
    for root in range(1, g.n + 1):
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def simple_cycles(g: Graph, max_length: int) -> list:
    """Simple cycles of length <= max_length, each once, as vertex tuples.

    A cycle is reported starting at its smallest vertex, with the second vertex
    smaller than the last so that both orientations are not counted.
    """
    out = []

    def extend(path, on_path):
        v = path[-1]
        for u in g.adjacency[v]:
            if u == path[0] and len(path) >= 3 and path[1] < path[-1]:
                out.append(tuple(path))
            elif u > path[0] and u not in on_path and len(path) < max_length:
                path.append(u)
                on_path.add(u)
                extend(path, on_path)
                on_path.discard(u)
                path.pop()

    for s in range(1, g.n + 1):
        extend([s], {s})
    return out


def cycles_through(g: Graph, subset: Iterable[int], length: int) -> int:
    """Number of cycles of exactly ``length`` edges containing every vertex of ``subset``."""
    s = set(subset)
    return sum(1 for c in simple_cycles(g, length) if len(c) == length and s <= set(c))


def connected_graphs(n: int) -> list:
    """All connected graphs on [n] up to isomorphism (brute force, n <= 5)."""
    if n > 5:
        raise ValidationError("exhaustive graph enumeration is limited to n <= 5")
    pairs = list(combinations(range(1, n + 1), 2))
    perms = list(permutations(range(1, n + 1)))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        g = Graph(n, edges)
        if not g.is_connected:
            continue
        canon = min(
            tuple(sorted(tuple(sorted((p[i - 1], p[j - 1]))) for i, j in edges)) for p in perms
        )
        if canon in seen:
            continue
        seen.add(canon)
        out.append(g)
    return out
