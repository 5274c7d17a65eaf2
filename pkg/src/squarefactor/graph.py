"""Immutable simple graphs: parsing, square, distances, connectivity predicates.

Vertices are dense integers 0..n-1.  Graphs parsed from text keep the original
vertex labels for I/O round trips; all algorithms work on the dense ids.
"""

from __future__ import annotations

import json
import math
from collections import deque
from typing import Iterable, Iterator

from .errors import ArgumentError, FormatError

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable undirected simple graph on vertices 0..n-1.

    Adjacency rows are sorted tuples; no self-loops, no parallel edges.
    ``labels`` maps dense ids back to the vertex names seen at parse time
    (identity for programmatically built graphs).
    """

    __slots__ = ("n", "adj", "labels", "_edges")

    def __init__(self, n: int, edges: Iterable[Edge], labels: tuple[int, ...] | None = None):
        rows: list[list[int]] = [[] for _ in range(n)]
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ArgumentError(f"self-loop at vertex {u}")
            e = edge(u, v)
            if e in seen:
                raise ArgumentError(f"duplicate edge {e}")
            seen.add(e)
            rows[u].append(v)
            rows[v].append(u)
        self.n = n
        self.adj = tuple(tuple(sorted(r)) for r in rows)
        self.labels = labels if labels is not None else tuple(range(n))
        self._edges = tuple(sorted(seen))

    # -- basic accessors -------------------------------------------------

    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    # -- derived graphs ---------------------------------------------------

    def induced(self, keep: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``keep``; returns (subgraph, new-id -> old-id)."""
        old_ids = tuple(sorted(set(keep)))
        pos = {v: i for i, v in enumerate(old_ids)}
        sub_edges = [
            (pos[u], pos[v]) for u, v in self._edges if u in pos and v in pos
        ]
        return Graph(len(old_ids), sub_edges), old_ids


def check_vertex(g: Graph, v: int) -> None:
    if not (0 <= v < g.n):
        raise ArgumentError(f"unknown vertex id {v}")


# -- parsing / serialization ---------------------------------------------


def parse_edge_list(text: str | bytes) -> Graph:
    """Parse whitespace-separated "u v" lines into a Graph.

    Lines starting with '#' are comments, blank lines are skipped.  Vertex
    ids are densified in first-appearance order; the original labels are
    kept on the graph.  Self-loops, duplicate edges and non-integer tokens
    are format errors (duplicates signal corrupt input, not multigraphs).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    label_of: dict[int, int] = {}
    labels: list[int] = []
    edges: list[Edge] = []
    seen: set[Edge] = set()

    def dense(token: str, lineno: int) -> int:
        try:
            raw = int(token)
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer token {token!r}") from None
        if raw < 0:
            raise FormatError(f"line {lineno}: negative vertex id {raw}")
        if raw not in label_of:
            label_of[raw] = len(labels)
            labels.append(raw)
        return label_of[raw]

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise FormatError(f"line {lineno}: expected two tokens, got {len(tokens)}")
        u = dense(tokens[0], lineno)
        v = dense(tokens[1], lineno)
        if u == v:
            raise FormatError(f"line {lineno}: self-loop at {tokens[0]}")
        e = edge(u, v)
        if e in seen:
            raise FormatError(f"line {lineno}: duplicate edge {tokens[0]} {tokens[1]}")
        seen.add(e)
        edges.append(e)

    return Graph(len(labels), edges, labels=tuple(labels))


def serialize_edge_list(g: Graph) -> str:
    """Edge-list text with original labels, edges in canonical order."""
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]})


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        return Graph(int(data["n"]), [tuple(e) for e in data["edges"]])
    except (KeyError, TypeError, ValueError, ArgumentError) as exc:
        raise FormatError(f"bad graph JSON: {exc}") from None


def to_dot(g: Graph, dashed_edges: Iterable[Edge] = (), name: str = "G") -> str:
    """DOT text with deterministic vertex order; ``dashed_edges`` get
    style=dashed (used for square-only edges of factors and squares)."""
    dashed = {edge(u, v) for u, v in dashed_edges}
    out = [f"graph {name} {{"]
    for v in range(g.n):
        out.append(f"  {g.labels[v]};")
    for u, v in g.edges():
        style = ' [style="dashed"]' if (u, v) in dashed else ""
        out.append(f"  {g.labels[u]} -- {g.labels[v]}{style};")
    out.append("}")
    return "\n".join(out) + "\n"


# -- distances and the square ----------------------------------------------


def bfs_distances(g: Graph, source: int) -> list[float]:
    """Distances from source; math.inf for unreachable vertices."""
    dist: list[float] = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if dist[w] == math.inf:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> int | float:
    """Shortest-path distance, math.inf if disconnected."""
    check_vertex(g, u)
    check_vertex(g, v)
    if u == v:
        return 0
    dist = bfs_distances(g, u)
    return dist[v] if dist[v] != math.inf else math.inf


def square(g: Graph) -> Graph:
    """Graph on the same vertices joining pairs at distance 1 or 2."""
    edges: set[Edge] = set(g.edges())
    for v in range(g.n):
        nbrs = g.adj[v]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                edges.add(edge(nbrs[i], nbrs[j]))
    return Graph(g.n, sorted(edges), labels=g.labels)


# -- connectivity ------------------------------------------------------------


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    if g.n == 1:
        return True
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.n


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def bridges(g: Graph) -> set[Edge]:
    """All cut-edges, found with an iterative low-link pass."""
    disc = [-1] * g.n
    low = [0] * g.n
    out: set[Edge] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        # stack entries: (vertex, parent, next neighbor index)
        stack = [(root, -1, 0)]
        while stack:
            v, parent, idx = stack.pop()
            if idx == 0:
                disc[v] = low[v] = timer
                timer += 1
            if idx < len(g.adj[v]):
                stack.append((v, parent, idx + 1))
                w = g.adj[v][idx]
                if disc[w] == -1:
                    stack.append((w, v, 0))
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            else:
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.add(edge(parent, v))
    return out


def is_two_edge_connected(g: Graph) -> bool:
    """Connected, at least 2 vertices, and bridge-free."""
    if g.n < 2 or not is_connected(g):
        return False
    return not bridges(g)


def is_two_connected(g: Graph) -> bool:
    """Connected, at least 3 vertices, and no articulation vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    for v in range(g.n):
        seen = [False] * g.n
        seen[v] = True
        start = 0 if v != 0 else 1
        seen[start] = True
        stack = [start]
        count = 1
        while stack:
            x = stack.pop()
            for w in g.adj[x]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != g.n - 1:
            return False
    return True


def is_essentially_two_edge_connected(g: Graph) -> bool:
    """No single edge deletion leaves two components that each contain an edge.

    A component is nontrivial when it has at least one edge, so an isolated
    vertex split off by a pendant edge does not count.  Requires a connected
    input; only bridges can disconnect, and the split at a bridge (x, y)
    leaves a trivial side exactly when x or y has degree 1.
    """
    if not is_connected(g):
        raise ArgumentError("essential 2-edge connectivity is defined for connected graphs")
    for u, v in bridges(g):
        if g.degree(u) > 1 and g.degree(v) > 1:
            return False
    return True
