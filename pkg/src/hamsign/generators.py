"""Deterministic instance generators.

All randomness comes from :class:`~hamsign.rng.SplitMix64`.  Edges are
visited in lexicographic order of (u, v) with u < v, so a generator and
seed pin down the instance in any language.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Edge, MultisignedCompleteGraph, add_constant, edge, switch
from .rng import SplitMix64


def lex_edges(n: int) -> list[Edge]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def unit(m: int, i: int) -> int:
    """i-th standard basis vector; i = 0 is the leftmost bit."""
    return 1 << (m - 1 - i)


def uniform(n: int, m: int, seed: int) -> MultisignedCompleteGraph:
    """Each label is the top m bits of one SplitMix64 output, in lexicographic edge order."""
    rng = SplitMix64(seed)
    return MultisignedCompleteGraph(n, m, {e: rng.bits(m) for e in lex_edges(n)})


def all_identity(n: int, m: int) -> MultisignedCompleteGraph:
    return MultisignedCompleteGraph(n, m)


def parse_edge_list(text: str) -> list[Edge]:
    """``"1-2,2-3"`` -> [(1, 2), (2, 3)]."""
    out = []
    for item in text.split(","):
        u, _, v = item.strip().partition("-")
        out.append(edge(int(u), int(v)))
    return out


def normalized_sparse(
    n: int,
    m: int,
    seed: int = 0,
    special: Sequence[Edge] | None = None,
    rest: int = 0,
) -> MultisignedCompleteGraph:
    """Vertex 0 normalized; ``m`` special edges away from 0 carry the unit vectors.

    The i-th special edge gets the unit vector with its one in position i.
    Every other edge not at vertex 0 carries ``rest``.  Without ``special``
    the edges are drawn by rejection from the pairs of 1..n-1.
    """
    if special is None:
        rng = SplitMix64(seed)
        pool = [e for e in lex_edges(n) if 0 not in e]
        if len(pool) < m:
            raise ValueError(f"K_{n - 1} has fewer than {m} edges")
        chosen: list[Edge] = []
        while len(chosen) < m:
            e = pool[rng.below(len(pool))]
            if e not in chosen:
                chosen.append(e)
        special = chosen
    special = [edge(*e) for e in special]
    if len(special) != m or len(set(special)) != m:
        raise ValueError(f"need {m} distinct special edges")
    if any(0 in e or max(e) >= n for e in special):
        raise ValueError("special edges must avoid vertex 0 and lie in the graph")
    labels = {e: rest for e in lex_edges(n) if 0 not in e}
    for i, e in enumerate(special):
        labels[e] = unit(m, i)
    return MultisignedCompleteGraph(n, m, labels)


CASE1_SHAPES = {
    "star": [(1, 2), (1, 3), (1, 4)],
    "triangle": [(1, 2), (2, 3), (1, 3)],
}


def paper_case1(n: int = 7, shape: str = "star") -> MultisignedCompleteGraph:
    """m = 3; three independent-label edges at a common vertex (or on a triangle), rest e."""
    if shape not in CASE1_SHAPES:
        raise ValueError(f"shape must be one of {sorted(CASE1_SHAPES)}")
    if n < 5:
        raise ValueError("case-1 fixture needs n >= 5")
    return normalized_sparse(n, 3, special=CASE1_SHAPES[shape])


def paper_figure3(n: int = 9) -> MultisignedCompleteGraph:
    """m = 4; the path v1 v2 v3 v4 v5 (vertices 0..4) carries the unit vectors, rest e."""
    if n < 5:
        raise ValueError("figure-3 fixture needs n >= 5")
    return MultisignedCompleteGraph(n, 4, {(i, i + 1): unit(4, i) for i in range(4)})


def independent_triangles(n: int, m: int, seed: int = 0) -> MultisignedCompleteGraph:
    """Every triangle multisign lies in {x_1, ..., x_m}, the unit vectors, with x_1 most frequent.

    Built as: vertex 0 normalized, a matching (1,2), (3,4), ... labelled
    x_i + x_1 for i = 2..m, everything shifted by x_1, then disguised by a
    seeded random switching (which keeps all cycle multisigns).
    """
    if n - 1 < 2 * (m - 1):
        raise ValueError(f"need n >= {2 * m - 1} for {m - 1} matching edges")
    x1 = unit(m, 0)
    labels = {(2 * i - 1, 2 * i): unit(m, i) ^ x1 for i in range(1, m)}
    G = add_constant(MultisignedCompleteGraph(n, m, labels), x1)
    rng = SplitMix64(seed)
    s = [rng.bits(m) for _ in range(n)]
    return switch(G, s)
