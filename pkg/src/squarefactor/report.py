"""Batch report: run the seeded suites and render summary figures.

Writes ``report.csv`` (one row per host) and three PNG figures next to it.
Used by ``squarefactor report``; safe to import headless (Agg backend).
"""

from __future__ import annotations

import csv
import os
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .corpus import lemma_corpus, theorem_corpus
from .factor import build_factor, lemma_factor
from .graph import square
from .verify import verify_certificate, verify_factor

FIG_SIZE = (6.4, 4.0)
SUITE_COLORS = {"lemma": "tab:blue", "theorem": "tab:orange"}


def _collect_rows(seed: int, s: int, count: int) -> list[dict]:
    rows: list[dict] = []
    for idx, (g, u) in enumerate(lemma_corpus(seed, count)):
        t0 = time.perf_counter()
        cert = lemma_factor(g, u)
        ms = (time.perf_counter() - t0) * 1000
        ok = verify_certificate(g, cert).passed
        rows.append(_row("lemma", idx, g, cert, ms, ok))
    for idx, g in enumerate(theorem_corpus(seed + 1, count)):
        t0 = time.perf_counter()
        cert = build_factor(g)
        ms = (time.perf_counter() - t0) * 1000
        ok = verify_factor(g, set(cert.edges), s, set(cert.original_edges)).passed
        rows.append(_row("theorem", idx, g, cert, ms, ok))
    return rows


def _row(suite: str, idx: int, g, cert, ms: float, ok: bool) -> dict:
    degrees = [cert.degree(v) for v in range(g.n)]
    return {
        "suite": suite,
        "index": idx,
        "n": g.n,
        "m": g.edge_count,
        "squareEdges": square(g).edge_count,
        "factorEdges": len(cert.edges),
        "originalEdges": len(cert.original_edges),
        "squareOnlyEdges": len(cert.square_only_edges),
        "degree4Vertices": sum(1 for d in degrees if d == 4),
        "buildMillis": round(ms, 3),
        "verified": ok,
    }


def _fig_composition(rows: list[dict], path: str) -> None:
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    for suite, color in SUITE_COLORS.items():
        pts = [r for r in rows if r["suite"] == suite]
        xs = [r["n"] for r in pts]
        ys = [
            r["squareOnlyEdges"] / r["factorEdges"] if r["factorEdges"] else 0.0
            for r in pts
        ]
        ax.scatter(xs, ys, s=14, alpha=0.6, color=color, label=suite)
    ax.set_xlabel("host vertices")
    ax.set_ylabel("square-only fraction of factor edges")
    ax.set_title("Factor composition")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_runtime(rows: list[dict], path: str) -> None:
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    for suite, color in SUITE_COLORS.items():
        pts = [r for r in rows if r["suite"] == suite]
        ax.scatter(
            [r["n"] for r in pts],
            [r["buildMillis"] for r in pts],
            s=14,
            alpha=0.6,
            color=color,
            label=suite,
        )
    ax.set_xlabel("host vertices")
    ax.set_ylabel("build time (ms)")
    ax.set_title("Construction time")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _fig_degrees(rows: list[dict], path: str) -> None:
    fig, ax = plt.subplots(figsize=FIG_SIZE)
    for suite, color in SUITE_COLORS.items():
        counts = [r["degree4Vertices"] for r in rows if r["suite"] == suite]
        if counts:
            bins = range(0, max(counts) + 2)
            ax.hist(counts, bins=bins, alpha=0.55, color=color, label=suite)
    ax.set_xlabel("vertices of degree 4 per factor")
    ax.set_ylabel("hosts")
    ax.set_title("Degree-4 usage")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def generate_report(out_dir: str, seed: int = 2024, s: int = 2, count: int = 60) -> list[str]:
    """Run both suites, write report.csv and the figures; returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    rows = _collect_rows(seed, s, count)
    csv_path = os.path.join(out_dir, "report.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    paths = [csv_path]
    for name, fn in (
        ("factor_composition.png", _fig_composition),
        ("build_runtime.png", _fig_runtime),
        ("degree4_usage.png", _fig_degrees),
    ):
        path = os.path.join(out_dir, name)
        fn(rows, path)
        paths.append(path)
    return paths
