"""Block-cut-tree decomposition, the leaf/bridge taxonomy, and block ordering.

The taxonomy: a *leaf* is a degree-1 vertex.  A cut vertex y is *trivial*
when it stops being a cut vertex after removing every leaf adjacent to it,
otherwise *non-trivial*.  A leaf x is *bad* when it is the only leaf at its
neighbor y and y is a trivial cut vertex.  A cut-edge is a *trivial bridge*
when it contains a leaf (otherwise *non-trivial*), and a *bad bridge* when
its leaf endpoint is bad.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque

from .errors import ArgumentError, InternalInvariantError, PreconditionError
from .graph import Edge, Graph, edge, is_connected

BRIDGE = "bridge"
CYCLIC = "cyclic"


@dataclass(frozen=True)
class Block:
    """One block: a bridge (2 vertices) or a maximal 2-connected subgraph."""

    vertices: tuple[int, ...]
    kind: str

    def __post_init__(self):
        if self.kind not in (BRIDGE, CYCLIC):
            raise ArgumentError(f"unknown block kind {self.kind!r}")


@dataclass(frozen=True)
class BlockCutTree:
    """Blocks, cut vertices, and their bipartite tree adjacency."""

    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]
    blocks_of_vertex: dict[int, tuple[int, ...]]

    def blocks_of_cut(self, v: int) -> tuple[int, ...]:
        return self.blocks_of_vertex[v]

    def cuts_in_block(self, b: int) -> tuple[int, ...]:
        return tuple(v for v in self.blocks[b].vertices if v in self.cut_vertices)


def decompose(g: Graph) -> BlockCutTree:
    """Biconnected components and articulation vertices (iterative Tarjan).

    Requires a connected graph with at least one edge.
    """
    if g.edge_count == 0:
        raise ArgumentError("decompose requires a graph with at least one edge")
    if not is_connected(g):
        raise ArgumentError("decompose requires a connected graph")

    disc = [-1] * g.n
    low = [0] * g.n
    is_cut = [False] * g.n
    edge_stack: list[Edge] = []
    block_edge_sets: list[list[Edge]] = []
    timer = 0

    root = 0
    root_children = 0
    # frames: (vertex, parent, next neighbor index)
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
                if v == root:
                    root_children += 1
                edge_stack.append((v, w))
                stack.append((w, v, 0))
            elif w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        else:
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    if parent != root:
                        is_cut[parent] = True
                    comp: list[Edge] = []
                    while True:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == (parent, v):
                            break
                    block_edge_sets.append(comp)
    if root_children > 1:
        is_cut[root] = True

    blocks: list[Block] = []
    for comp in block_edge_sets:
        verts = sorted({x for e in comp for x in e})
        kind = BRIDGE if len(comp) == 1 else CYCLIC
        blocks.append(Block(tuple(verts), kind))
    blocks.sort(key=lambda b: b.vertices)

    blocks_of_vertex: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for i, b in enumerate(blocks):
        for v in b.vertices:
            blocks_of_vertex[v].append(i)

    cuts = frozenset(v for v in range(g.n) if is_cut[v])
    for v in range(g.n):
        in_many = len(blocks_of_vertex[v]) >= 2
        if in_many != (v in cuts):
            raise InternalInvariantError(f"cut-vertex/block-membership mismatch at {v}")

    return BlockCutTree(
        blocks=tuple(blocks),
        cut_vertices=cuts,
        blocks_of_vertex={v: tuple(bs) for v, bs in blocks_of_vertex.items()},
    )


@dataclass(frozen=True)
class StructureClassification:
    """Per-vertex and per-edge labels of the taxonomy."""

    leaves: frozenset[int]
    bad_leaves: frozenset[int]
    trivial_cut_vertices: frozenset[int]
    nontrivial_cut_vertices: frozenset[int]
    trivial_bridges: frozenset[Edge]
    bad_bridges: frozenset[Edge]
    nontrivial_bridges: frozenset[Edge]
    leaf_sets: dict[int, frozenset[int]]

    def to_json_dict(self) -> dict:
        return {
            "leaves": sorted(self.leaves),
            "badLeaves": sorted(self.bad_leaves),
            "trivialCutVertices": sorted(self.trivial_cut_vertices),
            "nontrivialCutVertices": sorted(self.nontrivial_cut_vertices),
            "bridges": {
                "trivial": [list(e) for e in sorted(self.trivial_bridges)],
                "bad": [list(e) for e in sorted(self.bad_bridges)],
                "nontrivial": [list(e) for e in sorted(self.nontrivial_bridges)],
            },
        }


def _still_cut_after_leaf_removal(g: Graph, y: int, leaves_of_y: set[int]) -> bool:
    """Is y still a cut vertex of g minus its adjacent leaves?

    Implemented literally: remove the leaf set, then test whether removing y
    disconnects what is left.
    """
    removed = set(leaves_of_y)
    removed.add(y)
    remaining = [v for v in range(g.n) if v not in removed]
    if len(remaining) <= 1:
        return False
    seen = {remaining[0]}
    stack = [remaining[0]]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) != len(remaining)


def classify(g: Graph, bct: BlockCutTree) -> StructureClassification:
    """Label leaves, bad leaves, trivial/non-trivial cut vertices and bridges."""
    leaves = frozenset(v for v in range(g.n) if g.degree(v) == 1)

    trivial_cuts: set[int] = set()
    nontrivial_cuts: set[int] = set()
    leaf_sets: dict[int, frozenset[int]] = {}
    for y in sorted(bct.cut_vertices):
        m = {x for x in g.adj[y] if x in leaves}
        if _still_cut_after_leaf_removal(g, y, m):
            nontrivial_cuts.add(y)
        else:
            trivial_cuts.add(y)
            leaf_sets[y] = frozenset(m)

    bad_leaves: set[int] = set()
    for x in leaves:
        y = g.adj[x][0]
        if y in trivial_cuts and leaf_sets[y] == frozenset({x}):
            bad_leaves.add(x)

    trivial_bridges: set[Edge] = set()
    bad_bridges: set[Edge] = set()
    nontrivial_bridges: set[Edge] = set()
    for b in bct.blocks:
        if b.kind != BRIDGE:
            continue
        u, v = b.vertices
        e = edge(u, v)
        if u in leaves or v in leaves:
            trivial_bridges.add(e)
            if u in bad_leaves or v in bad_leaves:
                bad_bridges.add(e)
        else:
            nontrivial_bridges.add(e)

    return StructureClassification(
        leaves=leaves,
        bad_leaves=frozenset(bad_leaves),
        trivial_cut_vertices=frozenset(trivial_cuts),
        nontrivial_cut_vertices=frozenset(nontrivial_cuts),
        trivial_bridges=frozenset(trivial_bridges),
        bad_bridges=frozenset(bad_bridges),
        nontrivial_bridges=frozenset(nontrivial_bridges),
        leaf_sets=leaf_sets,
    )


@dataclass(frozen=True)
class StripResult:
    """Induced subgraph after vertex removal plus both id translations."""

    graph: Graph
    to_host: tuple[int, ...]
    to_sub: dict[int, int]

    def host_edge(self, e: Edge) -> Edge:
        return edge(self.to_host[e[0]], self.to_host[e[1]])

    def sub_edge(self, e: Edge) -> Edge:
        return edge(self.to_sub[e[0]], self.to_sub[e[1]])


def strip(g: Graph, removal: set[int]) -> StripResult:
    """Remove an independent set of degree-1 vertices, keeping an id map."""
    for v in removal:
        if g.degree(v) != 1:
            raise ArgumentError(f"strip removal contains non-leaf vertex {v}")
    for v in removal:
        if g.adj[v][0] in removal:
            raise ArgumentError("strip removal is not an independent set")
    keep = [v for v in range(g.n) if v not in removal]
    sub, to_host = g.induced(keep)
    to_sub = {old: new for new, old in enumerate(to_host)}
    return StripResult(graph=sub, to_host=to_host, to_sub=to_sub)


@dataclass(frozen=True)
class BlockOrdering:
    """A processing order of all blocks, rooted at a cyclic block.

    Children of each cut vertex occupy consecutive positions with bridges
    before cyclic blocks; positions refine distance-to-root in the
    block-cut tree.
    """

    root_block: int
    sequence: tuple[int, ...]
    bct: BlockCutTree
    parent_cut_vertex: dict[int, int]
    block_level: dict[int, int] = field(default_factory=dict)

    def blocks(self) -> tuple[Block, ...]:
        return tuple(self.bct.blocks[i] for i in self.sequence)


def order_blocks(
    g_prime: Graph,
    bct: BlockCutTree,
    preferred_root_vertex: int | None = None,
) -> BlockOrdering:
    """Order blocks by BFS layers of the block-cut tree.

    The root is the cyclic block containing ``preferred_root_vertex`` when
    given, else the cyclic block with the lexicographically smallest vertex
    tuple.  Within a layer, child runs are ordered by their smallest
    contained vertex id; within one cut vertex's run, bridges come first
    (sorted by far-endpoint id), then cyclic blocks (sorted by vertex tuple).
    """
    cyclic = [i for i, b in enumerate(bct.blocks) if b.kind == CYCLIC]
    if not cyclic:
        raise PreconditionError("all-bridge graph: no cyclic block to root the ordering")

    if preferred_root_vertex is not None:
        candidates = [
            i for i in bct.blocks_of_vertex.get(preferred_root_vertex, ())
            if bct.blocks[i].kind == CYCLIC
        ]
        if not candidates:
            raise PreconditionError(
                f"preferred root vertex {preferred_root_vertex} lies in no cyclic block"
            )
        root = min(candidates, key=lambda i: bct.blocks[i].vertices)
    else:
        root = min(cyclic, key=lambda i: bct.blocks[i].vertices)

    # BFS over the bipartite tree: blocks at even levels, cut vertices at odd.
    block_level: dict[int, int] = {root: 0}
    cut_level: dict[int, int] = {}
    parent_cut: dict[int, int] = {}
    parent_block_of_cut: dict[int, int] = {}
    queue: deque = deque([("b", root)])
    while queue:
        kind, item = queue.popleft()
        if kind == "b":
            for v in bct.cuts_in_block(item):
                if v not in cut_level:
                    cut_level[v] = block_level[item] + 1
                    parent_block_of_cut[v] = item
                    queue.append(("c", v))
        else:
            for b in bct.blocks_of_cut(item):
                if b not in block_level:
                    block_level[b] = cut_level[item] + 1
                    parent_cut[b] = item
                    queue.append(("b", b))

    if len(block_level) != len(bct.blocks):
        raise InternalInvariantError("block-cut tree traversal missed a block")

    def run_sort_key(v: int) -> tuple:
        children = [b for b in bct.blocks_of_cut(v) if parent_cut.get(b) == v]
        return (min(min(bct.blocks[b].vertices) for b in children), v)

    def child_sort_key(b: int, v: int) -> tuple:
        blk = bct.blocks[b]
        if blk.kind == BRIDGE:
            far = blk.vertices[0] if blk.vertices[1] == v else blk.vertices[1]
            return (0, far, blk.vertices)
        return (1, min(blk.vertices), blk.vertices)

    sequence: list[int] = [root]
    max_level = max(block_level.values())
    for level in range(2, max_level + 1, 2):
        runs = sorted(
            {v for v, lv in cut_level.items() if lv == level - 1},
            key=run_sort_key,
        )
        for v in runs:
            children = [b for b in bct.blocks_of_cut(v) if parent_cut.get(b) == v]
            children.sort(key=lambda b: child_sort_key(b, v))
            sequence.extend(children)

    if len(sequence) != len(bct.blocks):
        raise InternalInvariantError("block ordering lost blocks")

    return BlockOrdering(
        root_block=root,
        sequence=tuple(sequence),
        bct=bct,
        parent_cut_vertex=parent_cut,
        block_level=block_level,
    )
