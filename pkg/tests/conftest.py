"""Shared fixtures: named instance graphs and session-scoped enumerations."""

from __future__ import annotations

import pytest

from squarefactor.graph import Graph


@pytest.fixture(scope="session")
def fig1():
    """The worked taxonomy example: a 4-cycle block with pendants, a
    non-trivial bridge into a chain of two triangles.

    Vertices: c1,c2,c3,w on the 4-cycle; x pendant at c1; y1,y2 at c2;
    z at c3; bridge c3-p; triangle p-q-c4; triangle c4-r-t.
    """
    names = {
        "c1": 0, "c2": 1, "c3": 2, "w": 3,
        "x": 4, "y1": 5, "y2": 6, "z": 7,
        "p": 8, "q": 9, "c4": 10, "r": 11, "t": 12,
    }
    n = names
    edges = [
        (n["c1"], n["c2"]), (n["c2"], n["c3"]), (n["c3"], n["w"]), (n["w"], n["c1"]),
        (n["c1"], n["x"]),
        (n["c2"], n["y1"]), (n["c2"], n["y2"]),
        (n["c3"], n["z"]),
        (n["c3"], n["p"]),
        (n["p"], n["q"]), (n["q"], n["c4"]), (n["p"], n["c4"]),
        (n["c4"], n["r"]), (n["r"], n["t"]), (n["c4"], n["t"]),
    ]
    return Graph(13, edges), names


@pytest.fixture
def bowtie():
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


@pytest.fixture
def triangle_pendant():
    """Triangle 0-1-2 with a pendant (bad) leaf 3 at vertex 0."""
    return Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def star(s: int) -> Graph:
    return Graph(s + 1, [(0, i) for i in range(1, s + 1)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])
