"""Seeded random graph corpora for the property suites and the CLI report.

All generators draw from one ``random.Random`` instance, so a seed pins the
whole corpus.  Hosts come out in three flavors:

* 2-edge-connected cores (glued cycles with extra ears and chords),
* cores decorated with leaf bundles so the inner factor hypotheses hold,
* decorated cores with additional pendant leaves whose pairwise distances
  avoid exactly 4, the outer factor hypotheses.
"""

from __future__ import annotations

import random

from .errors import InternalInvariantError
from .factor import check_lemma_preconditions, check_theorem_preconditions
from .graph import Edge, Graph, bfs_distances, edge
from .structure import classify, decompose


def random_two_connected(rng: random.Random, n: int, extra_edges: int | None = None) -> Graph:
    """Random cycle through all n vertices plus random chords."""
    if n < 3:
        raise ValueError("need n >= 3")
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {edge(perm[i], perm[(i + 1) % n]) for i in range(n)}
    if extra_edges is None:
        extra_edges = rng.randrange(0, max(1, n))
    candidates = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    ]
    rng.shuffle(candidates)
    edges.update(candidates[:extra_edges])
    return Graph(n, sorted(edges))


def random_two_edge_connected_core(
    rng: random.Random, target_n: int, max_block: int = 14
) -> Graph:
    """Glued cycles: start from one cycle, then attach pendant cycles at
    single vertices and ears between vertex pairs.  Bridge-free throughout,
    with cut vertices whenever a pendant cycle is attached.  Rejects draws
    whose largest block exceeds ``max_block`` (ears merge blocks, so one
    block can balloon); the retry uses the same stream, keeping the result
    a deterministic function of the rng state."""
    if target_n < 3:
        raise ValueError("need target_n >= 3")
    while True:
        k0 = rng.randint(3, max(3, min(8, target_n)))
        edges: set[Edge] = {edge(i, (i + 1) % k0) for i in range(k0)}
        n = k0
        while n < target_n:
            room = target_n - n
            mode = rng.choice(("pendant-cycle", "ear", "chord"))
            if mode == "pendant-cycle" and room >= 2:
                c = rng.randint(2, min(room, 6))  # c new vertices, cycle length c+1
                host = rng.randrange(n)
                cyc = [host] + list(range(n, n + c))
                edges.update(
                    edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))
                )
                n += c
            elif mode == "ear" and room >= 1:
                c = rng.randint(1, min(room, 4))
                a, b = rng.sample(range(n), 2)
                path = [a] + list(range(n, n + c)) + [b]
                edges.update(edge(path[i], path[i + 1]) for i in range(len(path) - 1))
                n += c
            else:
                a, b = rng.sample(range(n), 2)
                edges.add(edge(a, b))
        g = Graph(n, sorted(edges))
        if max(len(b.vertices) for b in decompose(g).blocks) <= max_block:
            return g


def _cut_vertices(g: Graph) -> frozenset[int]:
    return decompose(g).cut_vertices


def decorate_with_leaf_bundles(
    rng: random.Random, core: Graph, max_n: int, max_sites: int = 4
) -> Graph:
    """Attach leaves to the core without breaking the inner hypotheses.

    Non-cut vertices get bundles of >= 2 leaves (they become trivial cut
    vertices); cut vertices may get single leaves or bundles (they stay
    non-trivial, so no leaf goes bad either way).
    """
    cuts = _cut_vertices(core)
    edges = list(core.edges())
    n = core.n
    sites = rng.randint(0, max_sites)
    hosts = rng.sample(range(core.n), min(sites, core.n))
    for y in hosts:
        if n >= max_n - 1:
            break
        if y in cuts:
            k = rng.randint(1, min(3, max_n - n))
        else:
            k = rng.randint(2, max(2, min(3, max_n - n)))
        if n + k > max_n:
            break
        for _ in range(k):
            edges.append(edge(y, n))
            n += 1
    return Graph(n, edges)


def lemma_corpus(seed: int, count: int, max_n: int = 40) -> list[tuple[Graph, int | None]]:
    """Hosts satisfying the inner factor hypotheses, with an optional
    tracked vertex u (neither a cut vertex nor a leaf)."""
    rng = random.Random(seed)
    out: list[tuple[Graph, int | None]] = []
    while len(out) < count:
        core_n = rng.randint(3, max(3, max_n - 10))
        core = random_two_edge_connected_core(rng, core_n)
        g = decorate_with_leaf_bundles(rng, core, max_n)
        report = check_lemma_preconditions(g, classify(g, decompose(g)))
        if not report.ok:
            raise InternalInvariantError("lemma corpus generator produced a bad host")
        u = None
        if rng.random() < 0.5:
            cuts = _cut_vertices(g)
            candidates = [
                v for v in range(g.n) if v not in cuts and g.degree(v) > 1
            ]
            if candidates:
                u = rng.choice(candidates)
        out.append((g, u))
    return out


def add_lone_leaves(
    rng: random.Random, base: Graph, max_n: int, max_leaves: int = 4
) -> Graph:
    """Attach single pendant leaves whose pairwise distances avoid 2 and 4.

    A lone leaf at a non-cut, leaf-free vertex turns it into a trivial cut
    vertex, so the new leaf is bad; keeping host distances off {0, 2} keeps
    every bad-leaf pair at distance 3 or at least 5.
    """
    cuts = _cut_vertices(base)
    busy = {v for v in range(base.n) if base.degree(v) == 1}
    busy |= {base.adj[x][0] for x in busy}
    candidates = [v for v in range(base.n) if v not in cuts and v not in busy]
    rng.shuffle(candidates)
    chosen: list[int] = []
    dist_of: dict[int, list[float]] = {}
    want = rng.randint(0, max_leaves)
    for y in candidates:
        if len(chosen) >= want or base.n + len(chosen) >= max_n:
            break
        dist_of.setdefault(y, bfs_distances(base, y))
        if all(dist_of[y][y2] not in (0, 2) for y2 in chosen):
            chosen.append(y)
    edges = list(base.edges())
    n = base.n
    for y in chosen:
        edges.append(edge(y, n))
        n += 1
    return Graph(n, edges)


def theorem_corpus(seed: int, count: int, max_n: int = 40) -> list[Graph]:
    """Hosts satisfying the outer factor hypotheses, bad leaves included."""
    rng = random.Random(seed)
    out: list[Graph] = []
    while len(out) < count:
        core_n = rng.randint(3, max(3, max_n - 14))
        core = random_two_edge_connected_core(rng, core_n)
        base = decorate_with_leaf_bundles(rng, core, max_n - 4, max_sites=2)
        g = add_lone_leaves(rng, base, max_n)
        report = check_theorem_preconditions(g, classify(g, decompose(g)))
        if not report.ok:
            raise InternalInvariantError("theorem corpus generator produced a bad host")
        out.append(g)
    return out
