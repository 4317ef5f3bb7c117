"""Covering C4-necklaces and realization of a target multisign on them.

A necklace is a ring of components.  Each component has two ends:
a square ``(a, b, c, d)`` (cycle order) has its junctions ``a`` and ``c`` as
ends, a path has its first and last vertex.  Consecutive components are
joined either by sharing an end vertex or by a ``link`` edge between two ends.
A single-vertex path has both ends at the same vertex and must be joined by
two links.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .gf2 import DimensionError, Gf2Basis, Multisign, solve_combination, span_basis_bits
from .graph import Edge, HamiltonianCycle, InstanceFormatError, MultisignedCompleteGraph, edge, path_bits


class InvalidNecklaceError(ValueError):
    pass


@dataclass(frozen=True)
class Square:
    """4-cycle a-b-c-d-a with junctions (a, c) and interior (b, d)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if len({self.a, self.b, self.c, self.d}) != 4:
            raise ValueError(f"square needs four distinct vertices: {self.cycle}")

    @property
    def cycle(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def junctions(self) -> tuple[int, int]:
        return (self.a, self.c)

    @property
    def interior(self) -> tuple[int, int]:
        return (self.b, self.d)

    def edges(self) -> list[Edge]:
        cyc = self.cycle
        return [edge(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]

    def vertices(self) -> frozenset[int]:
        return frozenset(self.cycle)


@dataclass(frozen=True)
class NecklacePath:
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("path needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"path repeats a vertex: {self.vertices}")

    @property
    def ends(self) -> tuple[int, int]:
        return (self.vertices[0], self.vertices[-1])

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [edge(a, b) for a, b in zip(vs, vs[1:])]


@dataclass(frozen=True)
class CoveringNecklace:
    squares: tuple[Square, ...]
    paths: tuple[NecklacePath, ...] = ()
    links: tuple[Edge, ...] = ()

    @classmethod
    def build(
        cls,
        squares: Sequence[Square],
        paths: Sequence[NecklacePath | Sequence[int]] = (),
        links: Sequence[tuple[int, int]] = (),
    ) -> CoveringNecklace:
        return cls(
            tuple(squares),
            tuple(p if isinstance(p, NecklacePath) else NecklacePath(tuple(p)) for p in paths),
            tuple(edge(u, v) for u, v in links),
        )

    def components(self) -> list[Square | NecklacePath]:
        return [*self.squares, *self.paths]


@dataclass(frozen=True)
class Violation:
    """First violated necklace condition (1: junction links, 2: closed chain, 3: cover)."""

    condition: int
    message: str
    vertices: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"condition {self.condition}: {self.message} {list(self.vertices)}"


# one step of the chain: component index, entry vertex, exit vertex
ChainStep = tuple[int, int, int]


def _ends(comp: Square | NecklacePath) -> tuple[int, int]:
    return comp.junctions if isinstance(comp, Square) else comp.ends


def _walk_chain(N: CoveringNecklace, n: int) -> list[ChainStep] | Violation:
    comps = N.components()
    if not comps:
        return Violation(2, "necklace has no components")
    owners: dict[int, list[int]] = defaultdict(list)
    for i, comp in enumerate(comps):
        verts = comp.cycle if isinstance(comp, Square) else comp.vertices
        for v in verts:
            owners[v].append(i)
    link_count: dict[int, int] = defaultdict(int)
    for u, v in N.links:
        link_count[u] += 1
        link_count[v] += 1
    if len(set(N.links)) != len(N.links):
        dup = sorted({e for e in N.links if N.links.count(e) > 1})
        return Violation(1, "duplicate link", tuple(v for e in dup for v in e))

    # condition 1: square interiors are private, links attach to ends only
    for sq in N.squares:
        for v in sq.interior:
            if len(owners[v]) > 1 or link_count[v]:
                return Violation(1, "interior square vertex is attached elsewhere", (v,))
    end_slots: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i, comp in enumerate(comps):
        for side, v in enumerate(_ends(comp)):
            end_slots[v].append((i, side))
    for v, count in list(link_count.items()):
        if count and v not in end_slots:
            return Violation(1, "link at a vertex that is not a junction or path end", (v,))

    # pair every end with exactly one partner end
    partner: dict[tuple[int, int], tuple[int, int]] = {}
    link_ends: dict[int, list[tuple[int, int]]] = {}
    for v, slots in sorted(end_slots.items()):
        comps_here = {i for i, _ in slots}
        links_here = link_count[v]
        if len(slots) == 1 and links_here == 1:
            link_ends[v] = list(slots)
        elif len(slots) == 2 and len(comps_here) == 2 and links_here == 0:
            partner[slots[0]] = slots[1]
            partner[slots[1]] = slots[0]
        elif len(slots) == 2 and len(comps_here) == 1 and links_here == 2:
            link_ends[v] = list(slots)
        else:
            return Violation(1, "end vertex is not joined exactly once per end", (v,))
    for u, v in N.links:
        a, b = link_ends[u].pop(), link_ends[v].pop()
        if a[0] == b[0]:
            return Violation(1, "link joins a component to itself", (u, v))
        partner[a] = b
        partner[b] = a

    # condition 2: following joins visits every component once
    chain: list[ChainStep] = []
    seen = set()
    i, side = 0, 0
    while i not in seen:
        seen.add(i)
        ends = _ends(comps[i])
        chain.append((i, ends[side], ends[1 - side]))
        i, side = partner[(i, 1 - side)]
    if (i, side) != (0, 0) or len(seen) != len(comps):
        missing = sorted(set(range(len(comps))) - seen)
        stray = [v for j in missing for v in _ends(comps[j])]
        return Violation(2, "components do not form a single closed chain", tuple(stray))

    # condition 3: vertex cover, disjoint apart from shared ends
    for v, owner in sorted(owners.items()):
        if not 0 <= v < n:
            return Violation(3, "vertex outside the graph", (v,))
        if len(owner) > 1 and not (len(owner) == 2 and v in end_slots and not link_count[v]):
            return Violation(3, "components overlap away from a shared end", (v,))
    uncovered = sorted(set(range(n)) - set(owners))
    if uncovered:
        return Violation(3, "vertices not covered", tuple(uncovered))
    return chain


def validate(G: MultisignedCompleteGraph, N: CoveringNecklace) -> Violation | None:
    """None when ``N`` is a covering necklace of ``G``, else the first violation."""
    result = _walk_chain(N, G.n)
    return result if isinstance(result, Violation) else None


def chain_of(G: MultisignedCompleteGraph, N: CoveringNecklace) -> list[ChainStep]:
    result = _walk_chain(N, G.n)
    if isinstance(result, Violation):
        raise InvalidNecklaceError(str(result))
    return result


def diamond_paths(G: MultisignedCompleteGraph, D: Square) -> tuple[NecklacePath, NecklacePath]:
    """The two junction-to-junction Hamiltonian paths of the square plus chord b-d."""
    return (
        NecklacePath((D.a, D.b, D.d, D.c)),
        NecklacePath((D.a, D.d, D.b, D.c)),
    )


def square_bits(G: MultisignedCompleteGraph, D: Square) -> int:
    total = 0
    for u, v in D.edges():
        total ^= G.sigma(u, v)
    return total


@dataclass(frozen=True)
class NecklaceCoset:
    """``base + span(square multisigns)`` is exactly what the necklace reaches.

    ``base`` is the multisign of the cycle that takes path p0 in every square.
    """

    base: int
    square_signs: tuple[int, ...]
    span: Gf2Basis

    def contains(self, g: int) -> bool:
        return self.span.reduce(g ^ self.base) == 0

    def elements(self) -> list[int]:
        return [self.base ^ x for x in self.span.elements()]


def _assemble(
    G: MultisignedCompleteGraph,
    N: CoveringNecklace,
    chain: list[ChainStep],
    choice: Sequence[int],
) -> list[int]:
    comps = N.components()
    order: list[int] = []
    for i, entry, exit_ in chain:
        comp = comps[i]
        if isinstance(comp, Square):
            seq = list(diamond_paths(G, comp)[choice[i]].vertices)
        else:
            seq = list(comp.vertices)
        if seq[0] != entry:
            seq.reverse()
        assert seq[0] == entry and seq[-1] == exit_
        if order and order[-1] == seq[0]:
            seq = seq[1:]
        order.extend(seq)
    if len(order) > 1 and order[-1] == order[0]:
        order.pop()
    return order


def necklace_coset(G: MultisignedCompleteGraph, N: CoveringNecklace) -> NecklaceCoset:
    chain = chain_of(G, N)
    order = _assemble(G, N, chain, [0] * len(N.squares))
    base = path_bits(G, order + order[:1])
    signs = tuple(square_bits(G, D) for D in N.squares)
    return NecklaceCoset(base, signs, span_basis_bits(signs, G.m))


def fixed_part_bits(G: MultisignedCompleteGraph, N: CoveringNecklace) -> int:
    """h: XOR over all path edges and all link edges."""
    total = 0
    for p in N.paths:
        total ^= path_bits(G, p.vertices)
    for u, v in N.links:
        total ^= G.sigma(u, v)
    return total


def realize_multisign(
    G: MultisignedCompleteGraph, N: CoveringNecklace, g: Multisign
) -> HamiltonianCycle | None:
    """Hamiltonian cycle with multisign ``g`` built from ``N``, or None if out of reach.

    Solves ``sum a_i sigma(D_i) = g + h + sum x_i`` where ``x_i`` is the
    multisign of path p0 in square i and ``h`` covers paths and links, then
    takes path p_{a_i} in square i.
    """
    if g.m != G.m:
        raise DimensionError("target dimension differs from graph")
    chain = chain_of(G, N)
    h = fixed_part_bits(G, N)
    xs = 0
    for D in N.squares:
        xs ^= path_bits(G, diamond_paths(G, D)[0].vertices)
    signs = [Multisign(square_bits(G, D), G.m) for D in N.squares]
    rhs = Multisign(g.bits ^ h ^ xs, G.m)
    coeffs = solve_combination(signs, rhs)
    if coeffs is None:
        return None
    choice = list(coeffs) + [0] * len(N.paths)
    order = _assemble(G, N, chain, choice)
    if len(order) != G.n:
        raise InvalidNecklaceError(f"assembled walk has {len(order)} vertices, expected {G.n}")
    H = HamiltonianCycle.from_order(order)
    got = path_bits(G, order + order[:1])
    if got != g.bits:  # pragma: no cover - algebra guarantees equality
        raise AssertionError(f"assembled cycle has multisign {got:b}, wanted {g}")
    return H


# -- necklace file format ---------------------------------------------------


def dumps_necklace(N: CoveringNecklace) -> str:
    lines = [f"square {D.a} {D.b} {D.c} {D.d}" for D in N.squares]
    lines += ["path " + " ".join(map(str, p.vertices)) for p in N.paths]
    lines += [f"link {u} {v}" for u, v in N.links]
    return "\n".join(lines) + "\n"


def parse_necklace_lines(lines: Sequence[tuple[int, list[str]]]) -> CoveringNecklace:
    """Build a necklace from pre-split ``(lineno, fields)`` records."""
    squares, paths, links = [], [], []
    for lineno, fields in lines:
        kind, args = fields[0], fields[1:]
        try:
            nums = [int(a) for a in args]
        except ValueError:
            raise InstanceFormatError(lineno, "vertices must be integers") from None
        try:
            if kind == "square":
                if len(nums) != 4:
                    raise InstanceFormatError(lineno, "square takes 4 vertices")
                squares.append(Square(*nums))
            elif kind == "path":
                paths.append(NecklacePath(tuple(nums)))
            elif kind == "link":
                if len(nums) != 2:
                    raise InstanceFormatError(lineno, "link takes 2 vertices")
                links.append(edge(*nums))
            else:
                raise InstanceFormatError(lineno, f"unknown record {kind!r}")
        except InstanceFormatError:
            raise
        except ValueError as exc:
            raise InstanceFormatError(lineno, str(exc)) from None
    return CoveringNecklace(tuple(squares), tuple(paths), tuple(links))


def loads_necklace(text: str, G: MultisignedCompleteGraph) -> CoveringNecklace:
    """Parse and validate a necklace file against ``G``."""
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            records.append((lineno, line.split()))
    N = parse_necklace_lines(records)
    problem = validate(G, N)
    if problem is not None:
        raise InvalidNecklaceError(str(problem))
    return N
