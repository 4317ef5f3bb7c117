"""Multisigned complete graphs and the operations that preserve or shift multisigns."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .gf2 import DimensionError, Multisign, to_bits

Edge = tuple[int, int]


class MalformedCycleError(ValueError):
    pass


class InstanceFormatError(ValueError):
    """Parse failure in an instance file; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def pair_index(u: int, v: int) -> int:
    """Triangular index of the unordered pair {u, v}."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


class MultisignedCompleteGraph:
    """K_n with every edge labelled by an element of F_2^m.

    Labels live in a flat tuple of ints indexed by :func:`pair_index`.
    Instances are immutable; operations return new graphs.
    """

    __slots__ = ("n", "m", "_labels")

    def __init__(
        self,
        n: int,
        m: int,
        labels: Mapping[Edge, Multisign | int] | Sequence[int] | None = None,
    ):
        if n < 3:
            raise ValueError(f"need n >= 3, got {n}")
        Multisign.zero(m)  # validates m
        size = n * (n - 1) // 2
        if labels is None:
            table = [0] * size
        elif isinstance(labels, Mapping):
            table = [0] * size
            for (u, v), x in labels.items():
                self._check_vertex(n, u)
                self._check_vertex(n, v)
                if isinstance(x, Multisign) and x.m != m:
                    raise DimensionError(f"label on {(u, v)} has dimension {x.m}")
                table[pair_index(*edge(u, v))] = to_bits(x)
        else:
            table = [int(x) for x in labels]
            if len(table) != size:
                raise ValueError(f"expected {size} labels, got {len(table)}")
        limit = 1 << m
        if any(not 0 <= x < limit for x in table):
            raise ValueError(f"label does not fit in {m} bits")
        self.n = n
        self.m = m
        self._labels = tuple(table)

    @staticmethod
    def _check_vertex(n: int, v: int) -> None:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range 0..{n - 1}")

    @classmethod
    def constant(cls, n: int, m: int, x: Multisign | int = 0) -> MultisignedCompleteGraph:
        return cls(n, m, [to_bits(x)] * (n * (n - 1) // 2))

    @property
    def labels(self) -> tuple[int, ...]:
        return self._labels

    def sigma(self, u: int, v: int) -> int:
        """Label of {u, v} as a raw int."""
        return self._labels[pair_index(u, v)]

    def label(self, u: int, v: int) -> Multisign:
        return Multisign(self.sigma(u, v), self.m)

    def edges(self) -> Iterator[Edge]:
        for v in range(self.n):
            for u in range(v):
                yield (u, v)

    def matrix(self) -> list[list[int]]:
        """Dense symmetric label matrix (diagonal 0) for hot loops."""
        n = self.n
        mat = [[0] * n for _ in range(n)]
        for v in range(n):
            for u in range(v):
                mat[u][v] = mat[v][u] = self._labels[v * (v - 1) // 2 + u]
        return mat

    def zero(self) -> Multisign:
        return Multisign.zero(self.m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultisignedCompleteGraph):
            return NotImplemented
        return (self.n, self.m, self._labels) == (other.n, other.m, other._labels)

    def __hash__(self) -> int:
        return hash((self.n, self.m, self._labels))

    def __repr__(self) -> str:
        return f"MultisignedCompleteGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class CycleSubgraph:
    """An edge set in which every touched vertex has degree exactly 2."""

    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        degree: Counter[int] = Counter()
        for u, v in self.edges:
            if u >= v:
                raise MalformedCycleError(f"edge {(u, v)} not in (min, max) form")
            degree[u] += 1
            degree[v] += 1
        bad = sorted(v for v, d in degree.items() if d != 2)
        if bad:
            raise MalformedCycleError(f"vertices with degree != 2: {bad}")

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> CycleSubgraph:
        return cls(frozenset(edge(u, v) for u, v in edges))

    @classmethod
    def from_vertices(cls, cycle: Sequence[int]) -> CycleSubgraph:
        """Simple cycle through ``cycle`` in order."""
        if len(set(cycle)) != len(cycle) or len(cycle) < 3:
            raise MalformedCycleError(f"not a simple cycle: {list(cycle)}")
        k = len(cycle)
        return cls.from_edges((cycle[i], cycle[(i + 1) % k]) for i in range(k))

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


@dataclass(frozen=True)
class HamiltonianCycle:
    """Canonical vertex order: starts at 0, second vertex < last vertex."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        order = self.order
        n = len(order)
        if n < 3 or sorted(order) != list(range(n)):
            raise MalformedCycleError(f"not a permutation of 0..{n - 1}: {order}")
        if order[0] != 0 or order[1] > order[-1]:
            raise MalformedCycleError(f"not in canonical form: {order}")

    @classmethod
    def from_order(cls, order: Sequence[int]) -> HamiltonianCycle:
        seq = list(order)
        if 0 not in seq:
            raise MalformedCycleError(f"vertex 0 missing from {seq}")
        i = seq.index(0)
        seq = seq[i:] + seq[:i]
        if len(seq) >= 3 and seq[1] > seq[-1]:
            seq = [0] + seq[:0:-1]
        return cls(tuple(seq))

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self) -> Iterator[Edge]:
        o = self.order
        for i in range(len(o)):
            yield edge(o[i], o[i - 1])

    def subgraph(self) -> CycleSubgraph:
        return CycleSubgraph(frozenset(self.edges()))

    def __str__(self) -> str:
        return " ".join(map(str, self.order))


CycleLike = Union[HamiltonianCycle, CycleSubgraph, Iterable[Edge]]


def _cycle_edges(G: MultisignedCompleteGraph, C: CycleLike) -> Iterable[Edge]:
    if isinstance(C, HamiltonianCycle):
        if C.n != G.n:
            raise MalformedCycleError(f"cycle on {C.n} vertices, graph has {G.n}")
        return C.edges()
    if not isinstance(C, CycleSubgraph):
        C = CycleSubgraph.from_edges(C)
    for v in C.vertices():
        if not 0 <= v < G.n:
            raise MalformedCycleError(f"vertex {v} not in graph")
    return C.edges


def cycle_multisign(G: MultisignedCompleteGraph, C: CycleLike) -> Multisign:
    """XOR of the labels over the edges of ``C``."""
    total = 0
    for u, v in _cycle_edges(G, C):
        total ^= G.sigma(u, v)
    return Multisign(total, G.m)


def path_bits(G: MultisignedCompleteGraph, vertices: Sequence[int]) -> int:
    """XOR of labels along the open walk ``vertices``."""
    total = 0
    for a, b in zip(vertices, vertices[1:]):
        total ^= G.sigma(a, b)
    return total


def triangle_bits(G: MultisignedCompleteGraph, a: int, b: int, c: int) -> int:
    return G.sigma(a, b) ^ G.sigma(b, c) ^ G.sigma(a, c)


def _switch_vector(G: MultisignedCompleteGraph, s: Sequence[Multisign | int]) -> list[int]:
    if len(s) != G.n:
        raise ValueError(f"switching function must cover all {G.n} vertices")
    out = []
    for x in s:
        if isinstance(x, Multisign) and x.m != G.m:
            raise DimensionError("switching value has wrong dimension")
        out.append(to_bits(x))
    return out


def switch(G: MultisignedCompleteGraph, s: Sequence[Multisign | int]) -> MultisignedCompleteGraph:
    """Apply sigma'({u,v}) = s(u) + sigma({u,v}) + s(v)."""
    sv = _switch_vector(G, s)
    labels = [G.sigma(u, v) ^ sv[u] ^ sv[v] for u, v in G.edges()]
    return MultisignedCompleteGraph(G.n, G.m, labels)


def normalize_vertex(
    G: MultisignedCompleteGraph, v: int
) -> tuple[MultisignedCompleteGraph, list[Multisign]]:
    """Switch so every edge at ``v`` carries the identity; returns (graph, switching)."""
    MultisignedCompleteGraph._check_vertex(G.n, v)
    s = [Multisign(0 if u == v else G.sigma(u, v), G.m) for u in range(G.n)]
    return switch(G, s), s


def add_constant(G: MultisignedCompleteGraph, x: Multisign | int) -> MultisignedCompleteGraph:
    """Shift every edge label by ``x``."""
    if isinstance(x, Multisign) and x.m != G.m:
        raise DimensionError("shift has wrong dimension")
    xb = to_bits(x)
    return MultisignedCompleteGraph(G.n, G.m, [y ^ xb for y in G.labels])


def triangles(n: int) -> Iterator[tuple[int, int, int]]:
    """All vertex triples in lexicographic order."""
    return itertools.combinations(range(n), 3)


def triangle_census(G: MultisignedCompleteGraph) -> dict[Multisign, int]:
    """eta: multisign -> number of triangles carrying it (zero counts omitted)."""
    mat = G.matrix()
    counts: Counter[int] = Counter()
    for a, b, c in triangles(G.n):
        counts[mat[a][b] ^ mat[b][c] ^ mat[a][c]] += 1
    return {Multisign(x, G.m): k for x, k in counts.items()}


def symmetric_difference(A: Iterable[Edge], B: Iterable[Edge]) -> frozenset[Edge]:
    return frozenset(edge(*e) for e in A) ^ frozenset(edge(*e) for e in B)


def edge_set_multisign(G: MultisignedCompleteGraph, edges: Iterable[Edge]) -> Multisign:
    """XOR of labels over an arbitrary edge set (no cycle check)."""
    total = 0
    for u, v in edges:
        total ^= G.sigma(u, v)
    return Multisign(total, G.m)


# -- instance file format ---------------------------------------------------


def dumps_instance(G: MultisignedCompleteGraph, comment: str | None = None) -> str:
    """Serialize ``G``; identity-labelled edges are omitted."""
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"msg {G.n} {G.m}")
    for u in range(G.n):
        for v in range(u + 1, G.n):
            x = G.sigma(u, v)
            if x:
                lines.append(f"{u} {v} {x:0{G.m}b}")
    return "\n".join(lines) + "\n"


def loads_instance(text: str) -> MultisignedCompleteGraph:
    header: tuple[int, int] | None = None
    labels: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "msg" or len(fields) != 3:
                raise InstanceFormatError(lineno, "expected header 'msg <n> <m>'")
            try:
                n, m = int(fields[1]), int(fields[2])
            except ValueError:
                raise InstanceFormatError(lineno, "n and m must be integers") from None
            if n < 3 or not 1 <= m <= 64:
                raise InstanceFormatError(lineno, f"bad dimensions n={n} m={m}")
            header = (n, m)
            continue
        n, m = header
        if len(fields) != 3:
            raise InstanceFormatError(lineno, "expected 'u v <bits>'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise InstanceFormatError(lineno, "vertices must be integers") from None
        if not (0 <= u < v < n):
            raise InstanceFormatError(lineno, f"need 0 <= u < v < {n}, got {u} {v}")
        bits = fields[2]
        if len(bits) != m or set(bits) - {"0", "1"}:
            raise InstanceFormatError(lineno, f"expected {m}-bit string, got {bits!r}")
        if (u, v) in labels:
            raise InstanceFormatError(lineno, f"duplicate edge {u} {v}")
        labels[(u, v)] = int(bits, 2)
    if header is None:
        raise InstanceFormatError(max(1, len(text.splitlines())), "missing header")
    return MultisignedCompleteGraph(header[0], header[1], labels)
