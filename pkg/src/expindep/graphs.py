"""Undirected simple graphs on dense integer ids, plus the traversal
primitives everything else is built on.

Vertices are 0..n-1 and adjacency lists are sorted tuples, so a Graph is
immutable after construction and all queries are read-only. Distances are
hop counts, with ``math.inf`` standing in for "unreachable" so ordinary
comparisons order every finite distance below infinity.

``absorbing_bfs`` is the single-pass realization of distances in a
vertex-deleted graph: sink vertices may terminate a walk but are never
expanded. One call from a source u therefore yields, for every target v at
once, the distance from u to v in the graph with all sinks other than u
and v removed. That equivalence is cross-checked against per-pair deletion
in the test suite.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator

INF = math.inf


class EdgeListError(ValueError):
    """Malformed edge-list text; the message names the offending line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Immutable undirected simple graph with vertex ids 0..n-1."""

    __slots__ = ("n", "m", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex id out of range in edge ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
            m += 1
        self.n = n
        self.m = m
        self.adj = tuple(tuple(sorted(a)) for a in adj)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if v > u:
                    yield (u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.adj == other.adj
        )

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_edge_list(text: str) -> Graph:
    """Parse the canonical interchange format: a header line "n m" followed
    by exactly m lines "u v". Rejects loops, duplicates and out-of-range ids
    with an error naming the offending line."""
    lines = text.splitlines()
    # tolerate trailing blank lines, nothing else
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise EdgeListError(1, "missing header line")
    head = lines[0].split()
    if len(head) != 2:
        raise EdgeListError(1, f"malformed header {lines[0]!r}, expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise EdgeListError(1, f"malformed header {lines[0]!r}, expected integers") from None
    if n < 0 or m < 0:
        raise EdgeListError(1, "negative counts in header")
    if len(lines) - 1 != m:
        raise EdgeListError(len(lines), f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    seen: set[tuple[int, int]] = set()
    for idx, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(idx, f"malformed edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(idx, f"malformed edge line {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(idx, f"vertex id out of range in edge ({u}, {v})")
        if u == v:
            raise EdgeListError(idx, f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise EdgeListError(idx, f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        edges.append((u, v))
    return Graph(n, edges)


def write_edge_list(G: Graph) -> str:
    """Inverse of parse_edge_list up to edge order; edges come out sorted."""
    out = [f"{G.n} {G.m}"]
    out.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def to_dot(G: Graph, highlight: Iterable[int] = ()) -> str:
    """DOT export; highlighted vertices are filled. Export only, never parsed."""
    marked = set(highlight)
    lines = ["graph G {"]
    for v in range(G.n):
        if v in marked:
            lines.append(f'  {v} [style=filled, fillcolor=gray];')
        else:
            lines.append(f"  {v};")
    for u, v in G.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def bfs_distances(G: Graph, u: int) -> list:
    """Hop distances from u; INF for unreachable vertices."""
    n = G.n
    adj = G.adj
    dist = [-1] * n
    dist[u] = 0
    q = deque((u,))
    while q:
        v = q.popleft()
        dv1 = dist[v] + 1
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv1
                q.append(w)
    return [d if d >= 0 else INF for d in dist]


def absorbing_bfs(G: Graph, u: int, sinks: Iterable[int]) -> list:
    """Distances of shortest walks from u whose internal vertices avoid
    ``sinks`` minus u. Sinks can be entered but are never expanded, so for
    every v the result equals the distance from u to v in the graph with
    all sinks other than u and v deleted. The source itself is always
    expanded, even when it is a sink."""
    n = G.n
    adj = G.adj
    sinkset = sinks if isinstance(sinks, (set, frozenset)) else set(sinks)
    dist = [-1] * n
    dist[u] = 0
    q = deque((u,))
    while q:
        v = q.popleft()
        if v != u and v in sinkset:
            continue
        dv1 = dist[v] + 1
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv1
                q.append(w)
    return [d if d >= 0 else INF for d in dist]


def bfs_ball(G: Graph, u: int, radius: int) -> list[int]:
    """Distance-capped BFS; returns dist[v] for v within the radius, -1 outside."""
    n = G.n
    adj = G.adj
    dist = [-1] * n
    dist[u] = 0
    q = deque((u,))
    while q:
        v = q.popleft()
        dv = dist[v]
        if dv == radius:
            continue
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv + 1
                q.append(w)
    return dist


def d_neighborhood(G: Graph, u: int, d: int) -> frozenset:
    """Vertices at hop distance exactly d from u."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    dist = bfs_ball(G, u, d)
    return frozenset(v for v in range(G.n) if dist[v] == d)


def degree(G: Graph, u: int) -> int:
    return G.degree(u)


def max_degree(G: Graph) -> int:
    return max((G.degree(u) for u in range(G.n)), default=0)


def is_connected(G: Graph) -> bool:
    if G.n <= 1:
        return True
    return INF not in bfs_distances(G, 0)


def is_tree(G: Graph) -> bool:
    return G.n >= 1 and G.m == G.n - 1 and is_connected(G)


def is_subcubic(G: Graph) -> bool:
    return max_degree(G) <= 3


def endvertices(G: Graph) -> frozenset:
    return frozenset(v for v in range(G.n) if G.degree(v) == 1)


def degree2_vertices(G: Graph) -> frozenset:
    return frozenset(v for v in range(G.n) if G.degree(v) == 2)


def longest_path(T: Graph) -> list[int]:
    """A diametral path of a tree found by double BFS.

    Ties break to the smallest vertex id at every choice: the first sweep
    starts at vertex 0, each sweep picks the smallest farthest vertex, and
    the walk back always steps to the smallest eligible neighbor. The
    returned path starts at its smaller endpoint.
    """
    if not is_tree(T):
        raise ValueError("longest_path requires a connected tree")
    if T.n == 1:
        return [0]
    d0 = bfs_distances(T, 0)
    far = max(d0)
    a = min(v for v in range(T.n) if d0[v] == far)
    da = bfs_distances(T, a)
    far = max(da)
    b = min(v for v in range(T.n) if da[v] == far)
    path = [b]
    cur = b
    d = da[b]
    while d > 0:
        cur = min(w for w in T.adj[cur] if da[w] == d - 1)
        path.append(cur)
        d -= 1
    # path runs b -> a; orient the smaller endpoint first
    if path[0] > path[-1]:
        path.reverse()
    return path


def induced_subgraph(G: Graph, keep: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``keep``; returns (subgraph, old_ids) where
    new id i corresponds to old_ids[i] (old ids in ascending order)."""
    old_ids = sorted(set(keep))
    index = {old: new for new, old in enumerate(old_ids)}
    edges = []
    for new_u, old_u in enumerate(old_ids):
        for old_v in G.adj[old_u]:
            if old_v in index and old_v > old_u:
                edges.append((new_u, index[old_v]))
    return Graph(len(old_ids), edges), old_ids


def connected_components(G: Graph) -> list[list[int]]:
    """Vertex lists of the components, each sorted, ordered by smallest member."""
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        q = deque((s,))
        while q:
            v = q.popleft()
            for w in G.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    q.append(w)
        comps.append(sorted(comp))
    return comps
