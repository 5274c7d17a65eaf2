"""Exhaustive enumeration of small graphs up to isomorphism.

Grows graphs one vertex at a time from canonical representatives and dedups
with a refinement-based canonical form.  Cheap enough for n <= 8, which is
all the oracle-agreement and engine-completeness suites need.
"""

from __future__ import annotations

from functools import lru_cache

from .graph import Graph, is_connected, is_two_connected, is_two_edge_connected

AdjMasks = tuple[int, ...]


def _refine(n: int, adj: AdjMasks, colors: tuple[int, ...]) -> tuple[int, ...]:
    while True:
        sigs = []
        for v in range(n):
            nbr_colors = sorted(colors[w] for w in range(n) if adj[v] >> w & 1)
            sigs.append((colors[v], tuple(nbr_colors)))
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new_colors = tuple(order[s] for s in sigs)
        if new_colors == colors:
            return colors
        colors = new_colors


def _certificate_for_order(n: int, adj: AdjMasks, perm: list[int]) -> int:
    # bit (i, j), i < j, in row-major order of the relabeled graph
    cert = 0
    bit = 0
    for i in range(n):
        for j in range(i + 1, n):
            if adj[perm[i]] >> perm[j] & 1:
                cert |= 1 << bit
            bit += 1
    return cert


def canonical_certificate(n: int, adj: AdjMasks) -> int:
    """Isomorphism-invariant integer certificate (minimum adjacency code)."""
    if n <= 1:
        return 0
    degs = tuple((adj[v]).bit_count() for v in range(n))
    if all(d == n - 1 for d in degs) or all(d == 0 for d in degs):
        return _certificate_for_order(n, adj, list(range(n)))

    best: list[int | None] = [None]

    def descend(colors: tuple[int, ...]) -> None:
        colors = _refine(n, adj, colors)
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        split = [(c, vs) for c, vs in cells.items() if len(vs) > 1]
        if not split:
            perm = sorted(range(n), key=lambda v: colors[v])
            cert = _certificate_for_order(n, adj, perm)
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        # the target cell must be picked isomorphism-invariantly: (size, color)
        _, cell = min(split, key=lambda kv: (len(kv[1]), kv[0]))
        fresh = n  # individualizing color larger than every refined color
        for v in cell:
            branched = tuple(fresh if w == v else colors[w] for w in range(n))
            descend(branched)

    descend(tuple(degs))
    assert best[0] is not None
    return best[0]


def _adj_from_certificate(n: int, cert: int) -> AdjMasks:
    rows = [0] * n
    bit = 0
    for i in range(n):
        for j in range(i + 1, n):
            if cert >> bit & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit += 1
    return tuple(rows)


@lru_cache(maxsize=None)
def _all_graphs_level(n: int) -> tuple[AdjMasks, ...]:
    """All graphs on n vertices up to isomorphism, as canonical masks."""
    if n == 1:
        return ((0,),)
    certs: set[int] = set()
    for parent in _all_graphs_level(n - 1):
        for nbhd in range(1 << (n - 1)):
            adj = list(parent) + [nbhd]
            for w in range(n - 1):
                if nbhd >> w & 1:
                    adj[w] |= 1 << (n - 1)
            certs.add(canonical_certificate(n, tuple(adj)))
    return tuple(_adj_from_certificate(n, c) for c in sorted(certs))


def _to_graph(n: int, adj: AdjMasks) -> Graph:
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if adj[u] >> v & 1
    ]
    return Graph(n, edges)


def enumerate_graphs(n: int) -> list[Graph]:
    """All graphs on exactly n vertices, one per isomorphism class."""
    return [_to_graph(n, adj) for adj in _all_graphs_level(n)]


def enumerate_connected(n_min: int, n_max: int) -> list[Graph]:
    out = []
    for n in range(n_min, n_max + 1):
        out.extend(g for g in enumerate_graphs(n) if is_connected(g))
    return out


def enumerate_two_connected(n_min: int, n_max: int) -> list[Graph]:
    out = []
    for n in range(n_min, n_max + 1):
        out.extend(g for g in enumerate_graphs(n) if is_two_connected(g))
    return out


def enumerate_two_edge_connected(n_min: int, n_max: int) -> list[Graph]:
    out = []
    for n in range(n_min, n_max + 1):
        out.extend(g for g in enumerate_graphs(n) if is_two_edge_connected(g))
    return out
