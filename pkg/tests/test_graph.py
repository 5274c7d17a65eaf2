from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squarefactor.errors import ArgumentError, FormatError
from squarefactor.graph import (
    Graph,
    bridges,
    distance,
    edge,
    graph_from_json,
    graph_to_json,
    is_connected,
    is_essentially_two_edge_connected,
    is_two_edge_connected,
    parse_edge_list,
    serialize_edge_list,
    square,
    to_dot,
)

from .conftest import cycle, path, star


@st.composite
def graphs(draw, n_min=2, n_max=8):
    n = draw(st.integers(n_min, n_max))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph(n, chosen)


def delete_edge(g: Graph, e) -> Graph:
    return Graph(g.n, [x for x in g.edges() if x != edge(*e)])


# -- parsing -----------------------------------------------------------------


def test_parse_smallest_path():
    g = parse_edge_list("0 1\n1 2")
    assert g.n == 3
    assert g.edges() == ((0, 1), (1, 2))


def test_parse_comments_blanks_and_labels():
    g = parse_edge_list("# header\n\n10 20\n20 30\n")
    assert g.n == 3
    assert g.labels == (10, 20, 30)
    assert g.edges() == ((0, 1), (1, 2))


def test_parse_self_loop_rejected():
    with pytest.raises(FormatError):
        parse_edge_list("0 0")


def test_parse_duplicate_edge_rejected():
    with pytest.raises(FormatError):
        parse_edge_list("0 1\n0 1")
    with pytest.raises(FormatError):
        parse_edge_list("0 1\n1 0")


def test_parse_bad_tokens_rejected():
    with pytest.raises(FormatError):
        parse_edge_list("0 a")
    with pytest.raises(FormatError):
        parse_edge_list("0 1 2")
    with pytest.raises(FormatError):
        parse_edge_list("-1 2")


def test_parse_bytes():
    assert parse_edge_list(b"0 1\n").edge_count == 1


# -- square ---------------------------------------------------------------


def test_square_of_path_is_triangle():
    sq = square(parse_edge_list("0 1\n1 2"))
    assert sq.edges() == ((0, 1), (0, 2), (1, 2))


def test_square_of_claw_is_k4():
    sq = square(star(3))
    assert sq.edge_count == 6


def test_square_of_c6_is_4_regular():
    sq = square(cycle(6))
    assert all(sq.degree(v) == 4 for v in range(6))
    # each vertex gains exactly its two distance-2 chords
    assert sq.edge_count == 12


@settings(max_examples=60, deadline=None)
@given(graphs(n_min=2, n_max=9))
def test_square_matches_bfs_oracle(g):
    # independent oracle: pairwise BFS distances
    sq = square(g)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            d = distance(g, u, v)
            assert sq.has_edge(u, v) == (d in (1, 2))


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_square_contains_host(g):
    sq = square(g)
    assert set(g.edges()) <= set(sq.edges())


# -- distance ---------------------------------------------------------------


def test_distance_triangle_and_path():
    tri = cycle(3)
    assert distance(tri, 0, 1) == 1
    p3 = path(3)
    assert distance(p3, 0, 2) == 2


def test_distance_disconnected_is_infinite():
    g = Graph(4, [(0, 1), (2, 3)])
    assert distance(g, 0, 2) == math.inf


def test_distance_unknown_vertex():
    with pytest.raises(ArgumentError):
        distance(cycle(3), 0, 7)


# -- connectivity predicates -----------------------------------------------


def test_two_edge_connected_cycle_and_path():
    assert is_two_edge_connected(cycle(4))
    assert not is_two_edge_connected(path(3))


def test_two_edge_connected_bowtie_against_deletion_oracle(bowtie):
    # oracle: delete each edge in turn and re-test connectivity
    oracle = all(is_connected(delete_edge(bowtie, e)) for e in bowtie.edges())
    assert oracle is True
    assert is_two_edge_connected(bowtie) is True


def test_essentially_2ec_star_by_enumeration():
    g = star(4)
    # oracle: every single-edge deletion leaves an isolated vertex aside
    for e in g.edges():
        h = delete_edge(g, e)
        comps = [c for c in _components(h)]
        nontrivial = [c for c in comps if _has_edge_within(h, c)]
        assert len(nontrivial) <= 1
    assert is_essentially_two_edge_connected(g) is True


def test_essentially_2ec_path4_false():
    assert not is_essentially_two_edge_connected(path(4))


def test_essentially_2ec_requires_connected():
    with pytest.raises(ArgumentError):
        is_essentially_two_edge_connected(Graph(4, [(0, 1), (2, 3)]))


def _components(g: Graph):
    seen = set()
    for s in range(g.n):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        yield comp


def _has_edge_within(g: Graph, comp) -> bool:
    return any(u in comp and v in comp for u, v in g.edges())


@settings(max_examples=40, deadline=None)
@given(graphs(n_min=2, n_max=7))
def test_2ec_implies_essentially_2ec(g):
    if is_two_edge_connected(g):
        assert is_essentially_two_edge_connected(g)


@settings(max_examples=40, deadline=None)
@given(graphs(n_min=2, n_max=7))
def test_bridges_match_deletion_oracle(g):
    found = bridges(g)
    comps_before = len(list(_components(g)))
    for e in g.edges():
        drops = len(list(_components(delete_edge(g, e)))) > comps_before
        assert (edge(*e) in found) == drops


# -- serialization ------------------------------------------------------------


def test_serialize_round_trip():
    g = parse_edge_list("5 9\n9 2\n2 5\n")
    again = parse_edge_list(serialize_edge_list(g))
    assert again.edges() == g.edges()
    assert again.labels == g.labels


@settings(max_examples=30, deadline=None)
@given(graphs(n_min=2, n_max=8))
def test_serialize_round_trip_random(g):
    text = serialize_edge_list(g)
    if not g.edge_count:
        assert text == ""
        return
    again = parse_edge_list(text)
    # isolated vertices are not representable in edge lists
    assert set(again.edges()) == {
        e for e in map(lambda e: _relabel(g, again, e), g.edges())
    }


def _relabel(g, again, e):
    u = again.labels.index(g.labels[e[0]])
    v = again.labels.index(g.labels[e[1]])
    return edge(u, v)


def test_graph_json_round_trip():
    g = cycle(4)
    assert graph_from_json(graph_to_json(g)) == g


def test_dot_export_deterministic_with_dashes():
    g = path(3)
    dot = to_dot(g, dashed_edges=[(0, 2)])
    assert dot == to_dot(g, dashed_edges=[(2, 0)])
    assert "0 -- 1;" in dot
    # dashed styling applies only to listed edges
    assert '[style="dashed"]' not in dot.split("0 -- 1;")[0]


def test_graph_rejects_bad_edges():
    with pytest.raises(ArgumentError):
        Graph(2, [(0, 0)])
    with pytest.raises(ArgumentError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ArgumentError):
        Graph(2, [(0, 5)])
