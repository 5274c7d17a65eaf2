"""Exact search for constrained Hamiltonian cycles in the square of a block.

For a 2-connected graph B and a vertex v1 (optionally a second vertex v2),
finds a Hamiltonian cycle of B**2 whose two edges at v1 are edges of B and,
when v2 is given, at least one edge at v2 is an edge of B (a third distinct
edge when v2 ends up next to v1 on the cycle).  Such a cycle always exists,
so the search is exhaustive and treats "not found" as an internal bug, never
as a negative answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ArgumentError,
    BudgetExceededError,
    InternalInvariantError,
    PreconditionError,
)
from .graph import Edge, Graph, edge, is_two_connected, square

DEFAULT_UNBUDGETED_MAX = 24


@dataclass(frozen=True)
class ConstrainedCycleProblem:
    block: Graph
    square: Graph
    v1: int
    v2: int | None = None


def make_problem(block: Graph, v1: int, v2: int | None = None) -> ConstrainedCycleProblem:
    return ConstrainedCycleProblem(block=block, square=square(block), v1=v1, v2=v2)


@dataclass(frozen=True)
class CycleWitness:
    """Hamiltonian cycle as a vertex sequence plus tagged edges."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    original_edges: frozenset[Edge]
    square_only_edges: frozenset[Edge]

    def edges_at(self, v: int) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if v in e)


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def validate_witness(block: Graph, witness: CycleWitness, v1: int, v2: int | None = None) -> bool:
    """Re-check a witness from scratch; independent of the search code path.

    Uses per-pair shortest-path distances instead of the square constructor.
    """
    from .graph import distance

    seq = witness.vertices
    if sorted(seq) != list(range(block.n)):
        return False
    cycle_edges = [edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))]
    if sorted(cycle_edges) != sorted(witness.edges):
        return False
    for u, v in cycle_edges:
        if distance(block, u, v) > 2:
            return False
        claimed_orig = edge(u, v) in witness.original_edges
        if claimed_orig != block.has_edge(u, v):
            return False
    at_v1 = [e for e in cycle_edges if v1 in e]
    if len(at_v1) != 2 or not all(block.has_edge(*e) for e in at_v1):
        return False
    if v2 is not None:
        at_v2 = [e for e in cycle_edges if v2 in e]
        allowed = [e for e in at_v2 if block.has_edge(*e) and e not in at_v1]
        ok_shared = [e for e in at_v2 if block.has_edge(*e)]
        adjacent = any(v2 in e for e in at_v1)
        if adjacent:
            if not allowed:
                return False
        elif not ok_shared:
            return False
    return True


def constrained_hamiltonian_cycle(
    problem: ConstrainedCycleProblem,
    budget_nodes: int | None = None,
) -> CycleWitness:
    """Search B**2 for the constrained Hamiltonian cycle.

    Deterministic: v1's two cycle edges are pre-committed by iterating
    ordered pairs of its original neighbors and branching prefers original
    edges, then ascending ids.  Without an explicit ``budget_nodes``, blocks
    larger than DEFAULT_UNBUDGETED_MAX vertices are refused outright.
    """
    block, sq, v1, v2 = problem.block, problem.square, problem.v1, problem.v2
    n = block.n
    if not (0 <= v1 < n):
        raise ArgumentError(f"v1={v1} is not a vertex of the block")
    if v2 is not None and (not 0 <= v2 < n or v2 == v1):
        raise ArgumentError("v2 must be a block vertex distinct from v1")
    if not is_two_connected(block):
        raise PreconditionError("block is not 2-connected")
    if budget_nodes is None and n > DEFAULT_UNBUDGETED_MAX:
        raise BudgetExceededError(
            f"block has {n} vertices; pass an explicit node budget above "
            f"{DEFAULT_UNBUDGETED_MAX}"
        )

    if n == 3:
        others = sorted(v for v in range(3) if v != v1)
        seq = (v1, others[0], others[1])
        edges = tuple(edge(seq[i], seq[(i + 1) % 3]) for i in range(3))
        return CycleWitness(seq, edges, frozenset(edges), frozenset())

    orig_mask = [0] * n
    sq_mask = [0] * n
    for u in range(n):
        for w in block.adj[u]:
            orig_mask[u] |= 1 << w
        for w in sq.adj[u]:
            sq_mask[u] |= 1 << w

    all_mask = (1 << n) - 1
    nodes_used = 0

    def run(first: int, last: int) -> list[int] | None:
        nonlocal nodes_used
        last_bit = 1 << last
        path = [v1, first]
        visited = (1 << v1) | (1 << first)
        # per-depth pending candidate masks: (original, square-only)
        pend: list[list[int]] = []

        def candidate_masks(cur: int) -> list[int]:
            cands = sq_mask[cur] & ~visited
            if len(path) < n - 1:
                cands &= ~last_bit
            else:
                cands &= last_bit
            return [cands & orig_mask[cur], cands & ~orig_mask[cur]]

        def dead_or_forced(w: int) -> tuple[bool, int]:
            """Prune test assuming w is appended next; returns (dead, forced)."""
            wbit = 1 << w
            rem = all_mask & ~(visited | wbit)
            if rem == 0:
                return False, 0
            region = rem | wbit
            reach = wbit
            frontier = wbit
            while frontier:
                nxt = 0
                for b in _bits(frontier):
                    nxt |= sq_mask[b]
                nxt &= region & ~reach
                reach |= nxt
                frontier = nxt
            if reach != region:
                return True, 0
            forced = 0
            for v in _bits(rem):
                among_rem = sq_mask[v] & rem & ~(1 << v)
                avail = among_rem | (sq_mask[v] & wbit)
                need = 1 if v == last else 2
                if avail.bit_count() < need:
                    return True, 0
                if among_rem == 0:
                    if forced:
                        return True, 0
                    forced = 1 << v
            return False, forced

        def v2_interior_ok(pred: int, mid: int, succ: int) -> bool:
            e1_orig = bool(orig_mask[mid] & (1 << pred))
            e2_orig = bool(orig_mask[mid] & (1 << succ))
            if pred == v1:
                return e2_orig
            return e1_orig or e2_orig

        pend.append(candidate_masks(first))
        while pend:
            masks = pend[-1]
            if masks[0]:
                b = masks[0] & -masks[0]
                masks[0] ^= b
            elif masks[1]:
                b = masks[1] & -masks[1]
                masks[1] ^= b
            else:
                pend.pop()
                if len(path) > 2:
                    visited ^= 1 << path.pop()
                continue
            w = b.bit_length() - 1
            cur = path[-1]
            if v2 is not None and cur == v2 and not v2_interior_ok(path[-2], cur, w):
                continue
            nodes_used += 1
            if budget_nodes is not None and nodes_used > budget_nodes:
                raise BudgetExceededError(
                    f"node budget {budget_nodes} exceeded", partial_state=list(path)
                )
            if len(path) == n - 1:
                # w == last; the cycle closes over the original edge last-v1
                if v2 is not None and w == v2 and not (orig_mask[v2] & (1 << cur)):
                    continue
                return path + [w]
            dead, forced = dead_or_forced(w)
            if dead:
                continue
            path.append(w)
            visited |= 1 << w
            nxt = candidate_masks(w)
            if forced:
                nxt = [nxt[0] & forced, nxt[1] & forced]
            pend.append(nxt)
        return None

    orig_nbrs = sorted(block.adj[v1])
    for first in orig_nbrs:
        for last in orig_nbrs:
            if last == first:
                continue
            seq = run(first, last)
            if seq is not None:
                edges = tuple(edge(seq[i], seq[(i + 1) % n]) for i in range(n))
                originals = frozenset(e for e in edges if block.has_edge(*e))
                witness = CycleWitness(
                    vertices=tuple(seq),
                    edges=edges,
                    original_edges=originals,
                    square_only_edges=frozenset(edges) - originals,
                )
                if not validate_witness(block, witness, v1, v2):
                    raise InternalInvariantError(
                        "search produced an invalid witness", trace=seq
                    )
                return witness

    raise InternalInvariantError(
        "no constrained Hamiltonian cycle found in a 2-connected block; "
        "this contradicts the existence guarantee",
        trace={"n": n, "v1": v1, "v2": v2},
    )
