"""Independent verification, exact existence oracle, and the hostile family.

Everything here re-derives what it checks from the host graph alone, so a
bug in the builder cannot hide behind its own bookkeeping.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ArgumentError, InternalInvariantError
from .factor import FactorCertificate, star_center
from .graph import (
    Edge,
    Graph,
    edge,
    is_connected,
    is_essentially_two_edge_connected,
    is_two_connected,
    square,
)
from .structure import classify, decompose


# -- reports ---------------------------------------------------------------


@dataclass
class PropertyResult:
    passed: bool
    witness: list = field(default_factory=list)


@dataclass
class VerificationReport:
    spanning: bool
    connected: bool
    all_even: bool
    max_degree_ok: bool
    edges_in_square: bool
    properties: dict[str, PropertyResult] = field(default_factory=dict)
    witnesses: dict[str, list] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        base = (
            self.spanning
            and self.connected
            and self.all_even
            and self.max_degree_ok
            and self.edges_in_square
        )
        return base and all(p.passed for p in self.properties.values())

    def to_json_dict(self) -> dict:
        return {
            "pass": self.passed,
            "spanning": self.spanning,
            "connected": self.connected,
            "allEven": self.all_even,
            "maxDegreeOk": self.max_degree_ok,
            "edgesInSquare": self.edges_in_square,
            "properties": {
                name: {"pass": res.passed, "witness": res.witness}
                for name, res in sorted(self.properties.items())
            },
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


# -- factor verification ------------------------------------------------------


def verify_factor(
    g: Graph, edges: set[Edge], s: int, original_tags: set[Edge] | None = None
) -> VerificationReport:
    """Check that ``edges`` is a connected spanning even subgraph of g**2
    with maximum degree at most 2s; when tags are supplied, also that every
    edge claimed original is a host edge and vice versa."""
    if s < 1:
        raise ArgumentError("s must be a positive integer")
    sq = square(g)
    deg = [0] * g.n
    bad_edges = []
    for u, v in edges:
        if not (0 <= u < g.n and 0 <= v < g.n) or not sq.has_edge(u, v):
            bad_edges.append((u, v))
            continue
        deg[u] += 1
        deg[v] += 1
    tag_ok = True
    if original_tags is not None:
        for e in edges:
            claimed = e in original_tags
            actual = 0 <= e[0] < g.n and 0 <= e[1] < g.n and g.has_edge(*e)
            if claimed != actual:
                tag_ok = False
                bad_edges.append(e)

    spanning = all(d >= 1 for d in deg)
    all_even = all(d % 2 == 0 and d >= 2 for d in deg)
    max_degree_ok = all(d <= 2 * s for d in deg)

    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for u, v in edges:
        if 0 <= u < g.n and 0 <= v < g.n:
            adj[u].append(v)
            adj[v].append(u)
    connected = False
    if g.n:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        connected = len(seen) == g.n

    report = VerificationReport(
        spanning=spanning,
        connected=connected,
        all_even=all_even,
        max_degree_ok=max_degree_ok,
        edges_in_square=not bad_edges and tag_ok,
    )
    if bad_edges:
        report.witnesses["badEdges"] = sorted(set(bad_edges))
    offenders = [v for v in range(g.n) if deg[v] % 2 or deg[v] < 2 or deg[v] > 2 * s]
    if offenders:
        report.witnesses["badDegrees"] = [[v, deg[v]] for v in offenders]
    return report


def verify_certificate(g: Graph, cert: FactorCertificate) -> VerificationReport:
    """Full property check of a lemma-grade certificate against g.

    Recomputes the block structure and taxonomy of g, so the check shares
    no state with the construction.  The two three-vertex and four-vertex
    stars are exempt from the cut-vertex degree-4 properties, matching the
    guarantee's stated exceptions.
    """
    report = verify_factor(g, set(cert.edges), s=2, original_tags=set(cert.original_edges))
    deg = {v: 0 for v in range(g.n)}
    for u, v in cert.edges:
        if u in deg:
            deg[u] += 1
        if v in deg:
            deg[v] += 1

    exempt = star_center(g) is not None and g.n in (3, 4)
    cuts = decompose(g).cut_vertices if (is_connected(g) and g.edge_count) else frozenset()
    cls = classify(g, decompose(g)) if (is_connected(g) and g.edge_count) else None

    # a) degree 2 everywhere outside the cut vertices
    offenders = [v for v in range(g.n) if v not in cuts and deg[v] != 2]
    report.properties["a"] = PropertyResult(not offenders, [[v, deg[v]] for v in offenders])

    # b) the tracked vertex keeps two host edges
    b_witness: list = []
    if cert.u_designation is not None:
        u, pair = cert.u_designation
        at_u = {e for e in cert.edges if u in e}
        if set(pair) != at_u or len(at_u) != 2:
            b_witness.append(["designation-mismatch", u])
        for e in pair:
            if not g.has_edge(*e):
                b_witness.append(["square-only", list(e)])
    report.properties["b"] = PropertyResult(not b_witness, b_witness)

    # c) every cut vertex: degree 4 with an original designated pair,
    #    trivial bridges when the vertex is a trivial cut vertex
    c_witness: list = []
    if not exempt:
        for y in sorted(cuts):
            if deg[y] != 4:
                c_witness.append(["degree", y, deg[y]])
            pair = cert.cut_designations.get(y)
            if pair is None:
                c_witness.append(["missing-designation", y])
                continue
            if len(set(pair)) != 2:
                c_witness.append(["degenerate-designation", y])
            for e in pair:
                if e not in cert.edges or y not in e:
                    c_witness.append(["not-a-factor-edge", y, list(e)])
                elif not g.has_edge(*e):
                    c_witness.append(["square-only", y, list(e)])
                elif cls is not None and y in cls.trivial_cut_vertices:
                    other = e[0] if e[1] == y else e[1]
                    if g.degree(other) != 1:
                        c_witness.append(["not-a-trivial-bridge", y, list(e)])
    report.properties["c"] = PropertyResult(not c_witness, c_witness)

    # d) the tracked pair avoids every cut designation
    d_witness: list = []
    if cert.u_designation is not None and not exempt:
        u_pair = set(cert.u_designation[1])
        for y, pair in sorted(cert.cut_designations.items()):
            shared = u_pair & set(pair)
            if shared:
                d_witness.append([cert.u_designation[0], y, sorted(list(e) for e in shared)])
    report.properties["d"] = PropertyResult(not d_witness, d_witness)

    # e) cut designations pairwise disjoint
    e_witness: list = []
    if not exempt:
        items = sorted(cert.cut_designations.items())
        for i, (y1, p1) in enumerate(items):
            for y2, p2 in items[i + 1:]:
                shared = set(p1) & set(p2)
                if shared:
                    e_witness.append([y1, y2, sorted(list(e) for e in shared)])
    report.properties["e"] = PropertyResult(not e_witness, e_witness)
    return report


# -- exact existence oracle ----------------------------------------------------


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 18
    max_edges: int = 80
    max_nodes: int | None = None
    explicit: bool = False


@dataclass(frozen=True)
class ExistsResult:
    status: str  # "yes" | "no" | "out_of_budget"
    witness: tuple[Edge, ...] | None = None

    @property
    def is_yes(self) -> bool:
        return self.status == "yes"


def _exact_search(
    g: Graph,
    s: int,
    budget: SearchBudget,
    require_degree4: bool = False,
) -> ExistsResult:
    """Backtracking over edge inclusion in square(g).

    Vertices are processed in decreasing square-degree; pruning uses degree
    parity/bound feasibility and connectivity of the still-possible graph.
    Exhausts the space before answering "no".
    """
    sq = square(g)
    n = g.n
    edges = list(sq.edges())
    m = len(edges)
    if n == 0:
        return ExistsResult("no")
    if not budget.explicit and (n > budget.max_vertices or m > budget.max_edges):
        return ExistsResult("out_of_budget")

    rank = {
        v: i
        for i, v in enumerate(sorted(range(n), key=lambda v: (-sq.degree(v), v)))
    }
    edges.sort(key=lambda e: tuple(sorted((rank[e[0]], rank[e[1]]))))
    incident: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)

    cap = 2 * s
    in_deg = [0] * n
    rem_deg = [len(incident[v]) for v in range(n)]
    state = [0] * m  # 0 undecided, 1 in, -1 out
    nodes = 0

    def feasible(v: int) -> bool:
        lo = max(2, in_deg[v])
        if lo % 2:
            lo += 1
        return lo <= min(cap, in_deg[v] + rem_deg[v])

    def degree4_possible() -> bool:
        return any(in_deg[v] + rem_deg[v] >= 4 for v in range(n))

    def alive_connected() -> bool:
        adj = [0] * n
        for i, (u, v) in enumerate(edges):
            if state[i] >= 0:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        full = (1 << n) - 1
        reach = 1
        frontier = 1
        while frontier:
            nxt = 0
            mask = frontier
            while mask:
                b = mask & -mask
                nxt |= adj[b.bit_length() - 1]
                mask ^= b
            nxt &= ~reach
            reach |= nxt
            frontier = nxt
        return reach == full

    def included_valid() -> bool:
        if any(in_deg[v] % 2 or in_deg[v] < 2 or in_deg[v] > cap for v in range(n)):
            return False
        if require_degree4 and not any(in_deg[v] == 4 for v in range(n)):
            return False
        adj: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(edges):
            if state[i] == 1:
                adj[u].append(v)
                adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def solve(idx: int) -> str:
        nonlocal nodes
        nodes += 1
        if budget.max_nodes is not None and nodes > budget.max_nodes:
            return "budget"
        if included_valid():
            return "yes"
        if idx == m:
            return "no"
        if require_degree4 and not degree4_possible():
            return "no"
        u, v = edges[idx]
        # include
        in_deg[u] += 1
        in_deg[v] += 1
        rem_deg[u] -= 1
        rem_deg[v] -= 1
        state[idx] = 1
        if in_deg[u] <= cap and in_deg[v] <= cap and feasible(u) and feasible(v):
            res = solve(idx + 1)
            if res != "no":
                state[idx] = 0
                in_deg[u] -= 1
                in_deg[v] -= 1
                rem_deg[u] += 1
                rem_deg[v] += 1
                return res
        in_deg[u] -= 1
        in_deg[v] -= 1
        state[idx] = -1
        # exclude (rem already decremented)
        if feasible(u) and feasible(v) and alive_connected():
            res = solve(idx + 1)
            if res != "no":
                state[idx] = 0
                rem_deg[u] += 1
                rem_deg[v] += 1
                return res
        state[idx] = 0
        rem_deg[u] += 1
        rem_deg[v] += 1
        return "no"

    if n == 1 or m == 0:
        return ExistsResult("no")
    if not alive_connected():
        return ExistsResult("no")
    verdict = solve(0)
    if verdict == "yes":
        witness = tuple(sorted(edges[i] for i in range(m) if state[i] == 1))
        return ExistsResult("yes", witness=witness)
    if verdict == "budget":
        return ExistsResult("out_of_budget")
    return ExistsResult("no")


def exists_factor(g: Graph, s: int, budget: SearchBudget | None = None) -> ExistsResult:
    """Exact decision: does square(g) contain a connected spanning even
    subgraph with degrees between 2 and 2s?"""
    if s < 1:
        raise ArgumentError("s must be a positive integer")
    return _exact_search(g, s, budget or SearchBudget())


def degree4_variant_check(g: Graph, budget: SearchBudget | None = None) -> bool:
    """Does square(g) contain such a factor for s=2 with some vertex of
    degree exactly 4?"""
    res = _exact_search(g, 2, budget or SearchBudget(), require_degree4=True)
    if res.status == "out_of_budget":
        from .errors import BudgetExceededError

        raise BudgetExceededError("degree-4 variant check exceeded its budget")
    return res.is_yes


# -- hostile family --------------------------------------------------------------


@dataclass(frozen=True)
class CounterexampleDescriptor:
    """Parameters of one generated family member.

    4s+1 spoke vertices sit between the two hubs, each carrying one pendant
    leaf; the two attachment graphs join through a single arc edge.
    """

    s: int
    hub_a: int
    hub_b: int
    spokes: tuple[tuple[int, int], ...]  # (spoke w_i, leaf v_i)
    g1_vertices: tuple[int, ...]
    g2_vertices: tuple[int, ...]
    arc: Edge

    def to_json_dict(self) -> dict:
        return {
            "s": self.s,
            "hubA": self.hub_a,
            "hubB": self.hub_b,
            "spokes": [list(p) for p in self.spokes],
            "g1Vertices": list(self.g1_vertices),
            "g2Vertices": list(self.g2_vertices),
            "arc": list(self.arc),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def descriptor_from_json(text: str) -> CounterexampleDescriptor:
    from .errors import FormatError

    try:
        d = json.loads(text)
        return CounterexampleDescriptor(
            s=int(d["s"]),
            hub_a=int(d["hubA"]),
            hub_b=int(d["hubB"]),
            spokes=tuple((int(w), int(v)) for w, v in d["spokes"]),
            g1_vertices=tuple(int(v) for v in d["g1Vertices"]),
            g2_vertices=tuple(int(v) for v in d["g2Vertices"]),
            arc=edge(int(d["arc"][0]), int(d["arc"][1])),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"bad descriptor JSON: {exc}") from None


def triangle() -> Graph:
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


def gen_counterexample(
    s: int,
    g1: Graph | None = None,
    g2: Graph | None = None,
    hub1: int = 0,
    hub2: int = 0,
    arc1: int | None = None,
    arc2: int | None = None,
) -> tuple[Graph, CounterexampleDescriptor]:
    """Build a family member: g1 and g2 joined by 4s+1 hub-to-hub spokes,
    one pendant leaf per spoke, and a single arc between non-hub vertices.

    Both attachment graphs must be essentially 2-edge connected.  The result
    is asserted essentially 2-edge connected, and 2-connected after leaf
    deletion whenever g1 and g2 are 2-connected.
    """
    if s < 1:
        raise ArgumentError("s must be a positive integer")
    g1 = g1 or triangle()
    g2 = g2 or triangle()
    for name, gi, hub in (("g1", g1, hub1), ("g2", g2, hub2)):
        if gi.n < 2:
            raise ArgumentError(f"{name} needs at least 2 vertices to host the arc")
        if not (0 <= hub < gi.n):
            raise ArgumentError(f"{name} hub vertex {hub} out of range")
        if not is_connected(gi) or not is_essentially_two_edge_connected(gi):
            raise ArgumentError(f"{name} must be essentially 2-edge connected")
    if arc1 is None:
        arc1 = min(v for v in range(g1.n) if v != hub1)
    if arc2 is None:
        arc2 = min(v for v in range(g2.n) if v != hub2)
    if not (0 <= arc1 < g1.n) or not (0 <= arc2 < g2.n):
        raise ArgumentError("arc endpoints out of range")

    edges: list[Edge] = []
    edges.extend(g1.edges())
    off2 = g1.n
    edges.extend((u + off2, v + off2) for u, v in g2.edges())
    a = hub1
    b = hub2 + off2
    base = g1.n + g2.n
    spokes = []
    for i in range(4 * s + 1):
        w = base + 2 * i
        leaf = base + 2 * i + 1
        spokes.append((w, leaf))
        edges.extend([(a, w), (b, w), (w, leaf)])
    edges.append((arc1, arc2 + off2))
    g = Graph(base + 2 * (4 * s + 1), edges)

    if not is_essentially_two_edge_connected(g):
        raise InternalInvariantError("family member is not essentially 2-edge connected")
    if is_two_connected(g1) and is_two_connected(g2):
        keep = [v for v in range(g.n) if g.degree(v) > 1]
        core, _ = g.induced(keep)
        if not is_two_connected(core):
            raise InternalInvariantError("leaf-deleted family member is not 2-connected")

    descriptor = CounterexampleDescriptor(
        s=s,
        hub_a=a,
        hub_b=b,
        spokes=tuple(spokes),
        g1_vertices=tuple(range(g1.n)),
        g2_vertices=tuple(range(off2, off2 + g2.n)),
        arc=edge(arc1, arc2 + off2),
    )
    return g, descriptor


# -- counting certificate ----------------------------------------------------------


@dataclass(frozen=True)
class CountingProof:
    """Pigeonhole witness: more forced leaf edges than hub capacity."""

    s: int
    leaves: tuple[int, ...]
    hubs: tuple[int, int]
    demand: int
    capacity: int

    def to_json_dict(self) -> dict:
        return {
            "s": self.s,
            "leaves": list(self.leaves),
            "hubs": list(self.hubs),
            "demand": self.demand,
            "capacity": self.capacity,
        }


def counting_certificate(
    g: Graph, d: CounterexampleDescriptor
) -> CountingProof | None:
    """Structural nonexistence proof for a descriptor-shaped graph.

    Verifies that every pendant leaf sees exactly its spoke and the two hubs
    in the square; each leaf then needs at least one factor edge into a hub,
    but the hubs offer only 4s endpoints against 4s+1 leaves.  Returns None
    when the structural shape does not hold.
    """
    a, b = d.hub_a, d.hub_b
    if len(d.spokes) != 4 * d.s + 1:
        return None
    sq = square(g)
    leaves = []
    for w, leaf in d.spokes:
        if not (0 <= w < g.n and 0 <= leaf < g.n):
            return None
        if g.degree(leaf) != 1 or g.adj[leaf][0] != w:
            return None
        if sorted(g.adj[w]) != sorted({a, b, leaf}):
            return None
        if sorted(sq.adj[leaf]) != sorted({w, a, b}):
            return None
        leaves.append(leaf)
    demand = len(leaves)
    capacity = 2 * d.s * 2
    if demand <= capacity:
        return None
    return CountingProof(
        s=d.s,
        leaves=tuple(leaves),
        hubs=(a, b),
        demand=demand,
        capacity=capacity,
    )
