"""Builds certified connected even factors with degrees in {2, 4} in G**2.

Two entry points:

* ``lemma_factor`` works on hosts without non-trivial bridges and without
  bad leaves.  It peels blocks of the leaf-stripped graph in the fixed
  ordering, merging one constrained Hamiltonian cycle per cyclic block,
  then re-attaches the removed leaves as cycles through their trivial cut
  vertices.  The result carries designated-edge witnesses for the
  certificate properties.

* ``build_factor`` additionally tolerates bad leaves as long as no two sit
  at distance exactly 4: it strips them, runs ``lemma_factor`` on the rest,
  and reattaches each bad leaf by one of three local surgeries chosen from
  the structure of the intermediate factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    ArgumentError,
    FormatError,
    InternalInvariantError,
    PreconditionError,
)
from .graph import Edge, Graph, bfs_distances, edge, graph_from_json, is_connected
from .hamilton import constrained_hamiltonian_cycle, make_problem
from .structure import (
    BRIDGE,
    CYCLIC,
    BlockOrdering,
    StripResult,
    StructureClassification,
    classify,
    decompose,
    order_blocks,
    strip,
)


# -- certificate ------------------------------------------------------------


@dataclass(frozen=True)
class FactorCertificate:
    """A factor of square(host) with origin tags and designated-edge witnesses.

    ``lemma_grade`` marks certificates claiming the full property set
    (degree-2 outside cut vertices, degree-4 with original designated pairs
    at cut vertices, pairwise disjoint designations); plain factors from the
    bad-leaf pipeline only claim the connected-even-degree-at-most-4 shape.
    """

    host: Graph
    edges: frozenset[Edge]
    original_edges: frozenset[Edge]
    square_only_edges: frozenset[Edge]
    u_designation: tuple[int, tuple[Edge, Edge]] | None
    cut_designations: dict[int, tuple[Edge, Edge]]
    lemma_grade: bool

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def edges_at(self, v: int) -> tuple[Edge, ...]:
        return tuple(sorted(e for e in self.edges if v in e))

    def to_json_dict(self) -> dict:
        return {
            "kind": "lemma-certificate" if self.lemma_grade else "factor",
            "host": {"n": self.host.n, "edges": [list(e) for e in self.host.edges()]},
            "edges": [
                {"u": u, "v": v, "origin": "original" if (u, v) in self.original_edges else "square-only"}
                for u, v in sorted(self.edges)
            ],
            "u": None if self.u_designation is None else self.u_designation[0],
            "uEdges": None
            if self.u_designation is None
            else [list(e) for e in self.u_designation[1]],
            "cutDesignations": {
                str(y): [list(e) for e in pair]
                for y, pair in sorted(self.cut_designations.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def certificate_from_json(text: str) -> FactorCertificate:
    try:
        data = json.loads(text)
        host = graph_from_json(json.dumps(data["host"]))
        edges = set()
        originals = set()
        for rec in data["edges"]:
            e = edge(int(rec["u"]), int(rec["v"]))
            edges.add(e)
            if rec["origin"] == "original":
                originals.add(e)
            elif rec["origin"] != "square-only":
                raise FormatError(f"unknown edge origin {rec['origin']!r}")
        u_desig = None
        if data.get("u") is not None:
            pair = tuple(edge(int(a), int(b)) for a, b in data["uEdges"])
            u_desig = (int(data["u"]), (pair[0], pair[1]))
        cuts = {
            int(y): tuple(edge(int(a), int(b)) for a, b in pair)
            for y, pair in data.get("cutDesignations", {}).items()
        }
        return FactorCertificate(
            host=host,
            edges=frozenset(edges),
            original_edges=frozenset(originals),
            square_only_edges=frozenset(edges) - frozenset(originals),
            u_designation=u_desig,
            cut_designations={y: (p[0], p[1]) for y, p in cuts.items()},
            lemma_grade=data.get("kind") == "lemma-certificate",
        )
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"bad certificate JSON: {exc}") from None


def _tagged(host: Graph, edges: set[Edge]) -> tuple[frozenset[Edge], frozenset[Edge]]:
    originals = frozenset(e for e in edges if host.has_edge(*e))
    return originals, frozenset(edges) - originals


def _in_square(g: Graph, e: Edge) -> bool:
    u, v = e
    if g.has_edge(u, v):
        return True
    return bool(set(g.adj[u]) & set(g.adj[v]))


# -- precondition checks ------------------------------------------------------


@dataclass(frozen=True)
class PreconditionReport:
    ok: bool
    violations: tuple[tuple, ...]

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [
                {"kind": kind, "subject": list(subject) if isinstance(subject, tuple) else subject}
                for kind, subject in self.violations
            ],
        }


def star_center(g: Graph) -> int | None:
    """Center of K_{1,s} (s >= 2), else None."""
    if g.n < 3 or g.edge_count != g.n - 1:
        return None
    hubs = [v for v in range(g.n) if g.degree(v) == g.n - 1]
    if len(hubs) == 1 and all(g.degree(v) == 1 for v in range(g.n) if v != hubs[0]):
        return hubs[0]
    return None


def check_lemma_preconditions(g: Graph, cls: StructureClassification) -> PreconditionReport:
    """No non-trivial bridge and no bad leaf; K_{1,2} and K_{1,3} pass as the
    stated exceptions."""
    violations: list[tuple] = []
    for e in sorted(cls.nontrivial_bridges):
        violations.append(("non-trivial-bridge", e))
    for x in sorted(cls.bad_leaves):
        violations.append(("bad-leaf", x))
    center = star_center(g)
    exempt = center is not None and g.n in (3, 4)
    return PreconditionReport(ok=not violations or exempt, violations=tuple(violations))


def check_theorem_preconditions(g: Graph, cls: StructureClassification) -> PreconditionReport:
    """No non-trivial bridge and no pair of bad leaves at distance exactly 4.

    Also asserts the derived fact that bad-leaf pairs sit at distance >= 3;
    a closer pair would mean the classification is inconsistent.
    """
    violations: list[tuple] = []
    for e in sorted(cls.nontrivial_bridges):
        violations.append(("non-trivial-bridge", e))
    bad = sorted(cls.bad_leaves)
    for i, x in enumerate(bad):
        dist = bfs_distances(g, x)
        for x2 in bad[i + 1:]:
            if dist[x2] < 3:
                raise InternalInvariantError(
                    f"bad leaves {x},{x2} at distance {dist[x2]} < 3: classification bug"
                )
            if dist[x2] == 4:
                violations.append(("bad-leaf-pair-distance-4", (x, x2)))
    return PreconditionReport(ok=not violations, violations=tuple(violations))


# -- the block peel -----------------------------------------------------------


def _peel_factor(
    gp: Graph,
    ordering: BlockOrdering,
    u: int | None,
    budget_nodes: int | None,
) -> tuple[set[Edge], dict[int, list[Edge]]]:
    """Merge per-block constrained cycles along the ordering.

    Returns the factor edge set of gp**2 and, per cut vertex, its two
    designated original factor edges from child blocks.
    """
    bct = ordering.bct
    factor: set[Edge] = set()
    designated: dict[int, list[Edge]] = {}
    pending: dict[int, list[int]] = {}

    def block_cycle(block_vertices: tuple[int, ...], anchor: int) -> list[int]:
        sub, ids = gp.induced(block_vertices)
        local = {v: i for i, v in enumerate(ids)}
        wit = constrained_hamiltonian_cycle(
            make_problem(sub, local[anchor]), budget_nodes=budget_nodes
        )
        return [ids[i] for i in wit.vertices]

    for bi in ordering.sequence:
        blk = bct.blocks[bi]
        if bi == ordering.root_block:
            anchor = u if (u is not None and u in blk.vertices) else min(blk.vertices)
            seq = block_cycle(blk.vertices, anchor)
            factor.update(edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))
            continue

        v0 = ordering.parent_cut_vertex[bi]
        if blk.kind == BRIDGE:
            a, b = blk.vertices
            leaf = a if b == v0 else b
            if gp.degree(leaf) != 1:
                raise InternalInvariantError(
                    f"bridge child {blk.vertices} has no leaf endpoint: "
                    "non-trivial bridge survived the precondition check"
                )
            pending.setdefault(v0, []).append(leaf)
            continue

        seq = block_cycle(blk.vertices, v0)
        cyc = [edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))]
        f2 = edge(v0, seq[1])
        f1 = edge(v0, seq[-1])

        if v0 not in designated:
            leaves = pending.pop(v0, [])
            factor.update(cyc)
            if leaves:
                # splice the deferred leaves into the cycle in place of f1;
                # consecutive leaves and the last hop are square edges via v0
                factor.remove(f1)
                chain = [v0] + leaves + [seq[-1]]
                factor.update(edge(chain[i], chain[i + 1]) for i in range(len(chain) - 1))
                designated[v0] = [edge(v0, leaves[0]), f2]
            else:
                designated[v0] = [f2, f1]
        else:
            if v0 in pending:
                raise InternalInvariantError(
                    f"cut vertex {v0} has deferred bridges after its first cyclic child"
                )
            e_old = designated[v0].pop(0)
            x = e_old[0] if e_old[1] == v0 else e_old[1]
            w = seq[-1]
            factor.remove(e_old)
            factor.update(cyc)
            factor.remove(f1)
            factor.add(edge(x, w))
            designated[v0].append(f2)

    if pending:
        raise InternalInvariantError(
            f"leaf bridges never consumed at cut vertices {sorted(pending)}"
        )

    cuts = set(bct.cut_vertices)
    for v in range(gp.n):
        d = sum(1 for e in factor if v in e)
        want = 4 if v in cuts else 2
        if d != want:
            raise InternalInvariantError(
                f"peel produced degree {d} at vertex {v}, expected {want}"
            )
    for v in cuts:
        pair = designated.get(v, [])
        if len(pair) != 2 or any(e not in factor or not gp.has_edge(*e) for e in pair):
            raise InternalInvariantError(f"designated pair at cut vertex {v} is broken")
    return factor, designated


# -- lemma-grade construction --------------------------------------------------


def _star_certificate(g: Graph, center: int) -> FactorCertificate:
    leaves = sorted(v for v in range(g.n) if v != center)
    s = len(leaves)
    if s in (2, 3):
        # exempt stars: a Hamiltonian cycle of the square is all there is
        chain = [center] + leaves
        edges = {edge(chain[i], chain[(i + 1) % len(chain)]) for i in range(len(chain))}
        originals, sq_only = _tagged(g, edges)
        return FactorCertificate(
            host=g,
            edges=frozenset(edges),
            original_edges=originals,
            square_only_edges=sq_only,
            u_designation=None,
            cut_designations={},
            lemma_grade=True,
        )
    half = (s + 1) // 2
    runs = [leaves[:half], leaves[half:]]
    edges = set()
    for run in runs:
        chain = [center] + run + [center]
        edges.update(edge(chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    originals, sq_only = _tagged(g, edges)
    return FactorCertificate(
        host=g,
        edges=frozenset(edges),
        original_edges=originals,
        square_only_edges=sq_only,
        u_designation=None,
        cut_designations={center: (edge(center, runs[0][0]), edge(center, runs[0][-1]))},
        lemma_grade=True,
    )


def lemma_factor(
    g: Graph, u: int | None = None, budget_nodes: int | None = None
) -> FactorCertificate:
    """Certified factor of g**2 for hosts without non-trivial bridges and
    without bad leaves.

    When ``u`` is given it must be neither a cut vertex nor a leaf; both of
    its factor edges are then host edges.
    """
    if g.n <= 2:
        raise PreconditionError(
            "hosts with at most 2 vertices have no spanning even subgraph in their square"
        )
    if not is_connected(g):
        raise ArgumentError("lemma_factor requires a connected host")
    bct = decompose(g)
    cls = classify(g, bct)
    report = check_lemma_preconditions(g, cls)
    if not report.ok:
        raise PreconditionError(
            "host violates the factor hypotheses (non-trivial bridges / bad leaves)",
            violations=list(report.violations),
        )
    if u is not None:
        if not (0 <= u < g.n):
            raise ArgumentError(f"u={u} is not a vertex")
        if u in bct.cut_vertices or g.degree(u) == 1:
            raise ArgumentError(f"u={u} must be neither a cut vertex nor a leaf")

    center = star_center(g)
    if center is not None:
        return _star_certificate(g, center)

    removal = set()
    for leaves in cls.leaf_sets.values():
        removal.update(leaves)
    stripped = strip(g, removal)
    gp = stripped.graph
    if gp.n < 3 or gp.edge_count == 0:
        raise InternalInvariantError("non-star host reduced to a degenerate core")
    bct_p = decompose(gp)
    u_sub = stripped.to_sub[u] if u is not None else None
    ordering = order_blocks(gp, bct_p, preferred_root_vertex=u_sub)
    if bct_p.blocks[ordering.sequence[-1]].kind != CYCLIC:
        raise InternalInvariantError("final block of the ordering is not cyclic")

    factor_sub, desig_sub = _peel_factor(gp, ordering, u_sub, budget_nodes)

    factor = {stripped.host_edge(e) for e in factor_sub}
    cut_desig: dict[int, tuple[Edge, Edge]] = {}
    for v_sub, pair in desig_sub.items():
        y = stripped.to_host[v_sub]
        cut_desig[y] = (stripped.host_edge(pair[0]), stripped.host_edge(pair[1]))

    for t in sorted(cls.trivial_cut_vertices):
        leaves = sorted(cls.leaf_sets[t])
        if len(leaves) < 2:
            raise InternalInvariantError(
                f"trivial cut vertex {t} has a single leaf: a bad bridge escaped the check"
            )
        chain = [t] + leaves + [t]
        factor.update(edge(chain[i], chain[i + 1]) for i in range(len(chain) - 1))
        cut_desig[t] = (edge(t, leaves[0]), edge(t, leaves[-1]))

    if set(cut_desig) != set(bct.cut_vertices):
        raise InternalInvariantError("designated pairs do not cover the cut vertices")

    u_desig = None
    if u is not None:
        at_u = sorted(e for e in factor if u in e)
        if len(at_u) != 2 or not all(g.has_edge(*e) for e in at_u):
            raise InternalInvariantError(f"factor edges at u={u} are not two host edges")
        u_desig = (u, (at_u[0], at_u[1]))

    for e in factor:
        if not _in_square(g, e):
            raise InternalInvariantError(f"factor edge {e} is outside the host square")
    originals, sq_only = _tagged(g, factor)
    return FactorCertificate(
        host=g,
        edges=frozenset(factor),
        original_edges=originals,
        square_only_edges=sq_only,
        u_designation=u_desig,
        cut_designations=cut_desig,
        lemma_grade=True,
    )


# -- bad-leaf reattachment ------------------------------------------------------


@dataclass(frozen=True)
class CaseRecord:
    x: int
    y: int
    z: int
    z_prime: int | None = None


@dataclass(frozen=True)
class BadLeafPlan:
    """Surgery plan reattaching every bad leaf to the stripped-host factor."""

    bad_leaves: frozenset[int]
    close_pairs: frozenset[int]  # members with another bad leaf at distance 3
    cliques: tuple[tuple[int, ...], ...]  # neighbor cliques of the close pairs
    case1: tuple[CaseRecord, ...]
    case2: tuple[CaseRecord, ...]
    case3: tuple[CaseRecord, ...]
    additions_clique: frozenset[Edge]
    additions_case1: frozenset[Edge]
    additions_case2: frozenset[Edge]
    additions_case3: frozenset[Edge]
    removals_case1: frozenset[Edge]
    removals_case3: frozenset[Edge]

    def additions(self) -> frozenset[Edge]:
        return (
            self.additions_clique
            | self.additions_case1
            | self.additions_case2
            | self.additions_case3
        )

    def removals(self) -> frozenset[Edge]:
        return self.removals_case1 | self.removals_case3


def translate_factor_edges(stripped: StripResult, cert: FactorCertificate) -> set[Edge]:
    return {stripped.host_edge(e) for e in cert.edges}


def plan_bad_leaves(
    g: Graph, stripped: StripResult, f_prime: FactorCertificate
) -> BadLeafPlan:
    """Decide, per bad leaf, how it joins the factor of the stripped host.

    Case 1 reroutes an original factor edge at the neighbor through the
    leaf; case 2 opens a triangle with a non-cut neighbor; case 3 steals an
    original factor edge from a cut-vertex neighbor.  Runs of case-3 cut
    vertices joined by original factor edges are resolved by shifting each
    donation one step along the run.
    """
    bct = decompose(g)
    cls = classify(g, bct)
    bad = sorted(cls.bad_leaves)
    removed = set(range(g.n)) - set(stripped.to_host)
    if removed != set(bad):
        raise ArgumentError("stripped graph does not match the host's bad leaves")
    if f_prime.host != stripped.graph:
        raise ArgumentError("certificate host does not match the stripped graph")

    f_host = translate_factor_edges(stripped, f_prime)
    neighbor = {x: g.adj[x][0] for x in bad}

    for x in bad:
        y = neighbor[x]
        dy = sum(1 for e in f_host if y in e)
        if dy != 2:
            raise InternalInvariantError(
                f"bad-leaf neighbor {y} has factor degree {dy}, expected 2"
            )

    dist_from = {x: bfs_distances(g, x) for x in bad}
    close = {
        x for x in bad
        if any(dist_from[x][x2] == 3 for x2 in bad if x2 != x)
    }
    for x in close:
        mates = [x2 for x2 in bad if x2 != x and dist_from[x][x2] == 3]
        for x2 in mates:
            if not g.has_edge(neighbor[x], neighbor[x2]):
                raise InternalInvariantError(
                    f"bad leaves {x},{x2} at distance 3 with non-adjacent neighbors"
                )

    # components of the neighbors of close pairs, inside the stripped host
    close_ys = sorted({neighbor[x] for x in close})
    y_of = {neighbor[x]: x for x in close}
    comp_of: dict[int, int] = {}
    cliques: list[list[int]] = []
    for y in close_ys:
        if y in comp_of:
            continue
        comp = [y]
        comp_of[y] = len(cliques)
        queue = [y]
        while queue:
            a = queue.pop()
            for b in close_ys:
                if b not in comp_of and g.has_edge(a, b):
                    comp_of[b] = len(cliques)
                    comp.append(b)
                    queue.append(b)
        cliques.append(sorted(comp))
    for comp in cliques:
        if len(comp) < 2:
            raise InternalInvariantError("close bad leaf with no clique partner")
        for i, a in enumerate(comp):
            for b in comp[i + 1:]:
                if not g.has_edge(a, b):
                    raise InternalInvariantError(
                        f"neighbors {a},{b} of close bad leaves are not adjacent; "
                        "a distance-4 pair escaped the precondition check"
                    )

    additions_clique: set[Edge] = set()
    for comp in cliques:
        xs = [y_of[y] for y in comp]
        t = len(comp)
        for j in range(t - 1):
            additions_clique.add(edge(xs[j], comp[j + 1]))
            additions_clique.add(edge(xs[j + 1], comp[j]))
        additions_clique.add(edge(xs[0], comp[0]))
        additions_clique.add(edge(xs[t - 1], comp[t - 1]))

    # far bad leaves: classify into the three cases
    cuts_sub = decompose(stripped.graph).cut_vertices if stripped.graph.edge_count else frozenset()
    cuts_host = {stripped.to_host[v] for v in cuts_sub}
    case1: list[CaseRecord] = []
    case2: list[CaseRecord] = []
    case3: list[CaseRecord] = []
    for x in bad:
        if x in close:
            continue
        y = neighbor[x]
        at_y = sorted(e for e in f_host if y in e)
        orig_at_y = [e for e in at_y if g.has_edge(*e)]
        if orig_at_y:
            others = sorted((e[0] if e[1] == y else e[1]) for e in orig_at_y)
            case1.append(CaseRecord(x=x, y=y, z=others[0]))
            continue
        nbrs = sorted(w for w in g.adj[y] if w != x)
        if not nbrs:
            raise InternalInvariantError(f"bad-leaf neighbor {y} has no other neighbor")
        non_cut = [w for w in nbrs if w not in cuts_host]
        if non_cut:
            case2.append(CaseRecord(x=x, y=y, z=non_cut[0]))
        else:
            case3.append(CaseRecord(x=x, y=y, z=nbrs[0]))

    case3 = _assign_case3_donors(g, f_host, case3)

    all_z = [r.z for r in case1 + case2 + case3]
    if len(set(all_z)) != len(all_z):
        raise InternalInvariantError("duplicate donor vertex across bad-leaf cases")
    forbidden = set(neighbor.values()) | set(bad)
    if any(z in forbidden for z in all_z):
        raise InternalInvariantError("donor vertex is a bad leaf or a bad-leaf neighbor")

    additions_case1 = {edge(r.x, r.y) for r in case1} | {edge(r.x, r.z) for r in case1}
    removals_case1 = {edge(r.y, r.z) for r in case1}
    additions_case2 = set()
    for r in case2:
        additions_case2.update({edge(r.x, r.y), edge(r.x, r.z), edge(r.y, r.z)})
    additions_case3 = set()
    removals_case3 = set()
    for r in case3:
        additions_case3.update({edge(r.x, r.y), edge(r.x, r.z), edge(r.y, r.z_prime)})
        removals_case3.add(edge(r.z, r.z_prime))

    return BadLeafPlan(
        bad_leaves=frozenset(bad),
        close_pairs=frozenset(close),
        cliques=tuple(tuple(c) for c in cliques),
        case1=tuple(case1),
        case2=tuple(case2),
        case3=tuple(case3),
        additions_clique=frozenset(additions_clique),
        additions_case1=frozenset(additions_case1),
        additions_case2=frozenset(additions_case2),
        additions_case3=frozenset(additions_case3),
        removals_case1=frozenset(removals_case1),
        removals_case3=frozenset(removals_case3),
    )


def _assign_case3_donors(
    g: Graph, f_host: set[Edge], case3: list[CaseRecord]
) -> list[CaseRecord]:
    """Pick each case-3 record's donated edge endpoint (z').

    Donors joined by original factor edges form paths or cycles; along a
    run each donor passes its edge toward the next one, and the run's last
    donor picks its smallest qualifying original factor neighbor.
    """
    if not case3:
        return []
    zs = [r.z for r in case3]
    rec_of = {r.z: r for r in case3}
    zset = set(zs)
    nbrs_in_run: dict[int, list[int]] = {z: [] for z in zs}
    for z in zs:
        for e in f_host:
            if z in e and g.has_edge(*e):
                other = e[0] if e[1] == z else e[1]
                if other in zset:
                    nbrs_in_run[z].append(other)
    for z, lst in nbrs_in_run.items():
        if len(lst) > 2:
            raise InternalInvariantError(
                f"case-3 donor {z} touches {len(lst)} other donors via original "
                "factor edges; run structure is not a path or cycle"
            )

    def original_factor_neighbors(z: int) -> list[int]:
        out = []
        for e in sorted(f_host):
            if z in e and g.has_edge(*e):
                out.append(e[0] if e[1] == z else e[1])
        return sorted(out)

    assigned: dict[int, int] = {}
    seen: set[int] = set()
    for z0 in sorted(zs):
        if z0 in seen:
            continue
        # walk the run containing z0
        comp = {z0}
        stack = [z0]
        while stack:
            a = stack.pop()
            for b in nbrs_in_run[a]:
                if b not in comp:
                    comp.add(b)
                    stack.append(b)
        seen |= comp
        endpoints = sorted(z for z in comp if len(nbrs_in_run[z]) < 2)
        if endpoints:
            order = [endpoints[0]]
        else:
            order = [min(comp)]  # cycle: cut at the smallest donor
        while len(order) < len(comp):
            prev = order[-2] if len(order) > 1 else None
            nxt = sorted(b for b in nbrs_in_run[order[-1]] if b != prev and b not in order)
            if not nxt:
                break
            order.append(nxt[0])
        if len(order) != len(comp):
            raise InternalInvariantError("case-3 donor run walk failed")
        for i, z in enumerate(order[:-1]):
            assigned[z] = order[i + 1]
        last = order[-1]
        prev = order[-2] if len(order) > 1 else None
        y_last = rec_of[last].y
        candidates = [
            w for w in original_factor_neighbors(last)
            if w != prev and edge(y_last, w) not in f_host and w != y_last
        ]
        if not candidates:
            raise InternalInvariantError(
                f"no qualifying donated-edge endpoint at case-3 donor {last}"
            )
        assigned[last] = candidates[0]

    out = []
    for r in case3:
        zp = assigned[r.z]
        if edge(r.y, zp) in f_host:
            raise InternalInvariantError(
                f"donated edge target {zp} is already a factor neighbor of {r.y}"
            )
        out.append(CaseRecord(x=r.x, y=r.y, z=r.z, z_prime=zp))
    return out


def apply_bad_leaf_plan(
    g: Graph, f_host: set[Edge], plan: BadLeafPlan
) -> set[Edge]:
    """Apply the plan's removals and additions and check the factor shape."""
    removals = plan.removals()
    additions = plan.additions()
    if not removals <= f_host:
        raise InternalInvariantError(
            "plan removes edges missing from the factor", trace=plan
        )
    result = (f_host - removals) | additions
    if additions & (f_host - removals):
        raise InternalInvariantError("plan re-adds an existing factor edge", trace=plan)
    for e in additions:
        if not _in_square(g, e):
            raise InternalInvariantError(f"planned edge {e} is outside the square", trace=plan)
    deg = [0] * g.n
    for a, b in result:
        deg[a] += 1
        deg[b] += 1
    for v in range(g.n):
        if deg[v] < 2 or deg[v] > 4 or deg[v] % 2:
            raise InternalInvariantError(
                f"factor degree {deg[v]} at vertex {v} after reattachment", trace=plan
            )
    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for a, b in result:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != g.n:
        raise InternalInvariantError("factor disconnected after reattachment", trace=plan)
    return result


def build_factor(g: Graph, budget_nodes: int | None = None) -> FactorCertificate:
    """Factor of g**2 for hosts without non-trivial bridges and without two
    bad leaves at distance exactly 4."""
    if g.n <= 2:
        raise PreconditionError(
            "hosts with at most 2 vertices have no spanning even subgraph in their square"
        )
    if not is_connected(g):
        raise ArgumentError("build_factor requires a connected host")
    bct = decompose(g)
    cls = classify(g, bct)
    report = check_theorem_preconditions(g, cls)
    if not report.ok:
        raise PreconditionError(
            "host violates the factor hypotheses (non-trivial bridges / "
            "distance-4 bad leaves)",
            violations=list(report.violations),
        )
    if not cls.bad_leaves:
        return lemma_factor(g, budget_nodes=budget_nodes)

    stripped = strip(g, set(cls.bad_leaves))
    gp = stripped.graph
    gp_report = check_lemma_preconditions(gp, classify(gp, decompose(gp)))
    if not gp_report.ok:
        raise InternalInvariantError(
            "stripping the bad leaves left a host violating the inner hypotheses",
            trace=gp_report.violations,
        )
    try:
        f_prime = lemma_factor(gp, budget_nodes=budget_nodes)
    except PreconditionError as exc:
        raise InternalInvariantError(f"inner factor construction refused: {exc}") from exc
    plan = plan_bad_leaves(g, stripped, f_prime)
    f_host = translate_factor_edges(stripped, f_prime)
    edges = apply_bad_leaf_plan(g, f_host, plan)
    originals, sq_only = _tagged(g, edges)
    return FactorCertificate(
        host=g,
        edges=frozenset(edges),
        original_edges=originals,
        square_only_edges=sq_only,
        u_designation=None,
        cut_designations={},
        lemma_grade=False,
    )
