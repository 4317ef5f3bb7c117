"""Search for the structures that feed the necklace realization.

The main route picks vertex-disjoint triangles T_1..T_k with independent
multisigns, disjoint identity triangles R_1..R_k, a triangular strip P_i from
each T_i to R_i, and inside each strip an adjacent pair whose symmetric
difference Q_i keeps the running family independent.  The quads are then
chained into a covering necklace.

When not enough vertices are available for that, :func:`cover_by_necklaces`
searches for several smaller necklaces whose reachable cosets together cover
the target set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .gf2 import Gf2Basis, Multisign, solve_combination, span_basis_bits
from .graph import HamiltonianCycle, MultisignedCompleteGraph, triangle_bits, triangles
from .necklace import (
    CoveringNecklace,
    NecklacePath,
    Square,
    necklace_coset,
    realize_multisign,
    validate,
)
from .rng import SplitMix64


class ConstructionFailure(Exception):
    """Base for typed pipeline failures; callers fall back to the oracle or Unknown."""


class NotFound(ConstructionFailure):
    pass


class ExceptionalCase(ConstructionFailure):
    pass


@dataclass(frozen=True)
class Triangle:
    vertices: tuple[int, int, int]
    multisign: Multisign

    @classmethod
    def of(cls, G: MultisignedCompleteGraph, a: int, b: int, c: int) -> Triangle:
        a, b, c = sorted((a, b, c))
        return cls((a, b, c), Multisign(triangle_bits(G, a, b, c), G.m))

    @property
    def bits(self) -> int:
        return self.multisign.bits


def find_independent_triangles(
    G: MultisignedCompleteGraph,
    limit: int | None = None,
    *,
    avoid: Iterable[int] = (),
    disjoint: bool = False,
) -> list[Triangle]:
    """Greedy lexicographic scan keeping triangles that extend the running span.

    With ``disjoint`` the chosen triangles are also pairwise vertex-disjoint,
    which may return fewer than the rank.
    """
    blocked = set(avoid)
    chosen: list[Triangle] = []
    basis = span_basis_bits((), G.m)
    cap = G.m if limit is None else min(limit, G.m)
    for tri in triangles(G.n):
        if len(chosen) >= cap:
            break
        if blocked.intersection(tri):
            continue
        x = triangle_bits(G, *tri)
        if basis.reduce(x) == 0:
            continue
        chosen.append(Triangle(tri, Multisign(x, G.m)))
        basis = span_basis_bits([t.bits for t in chosen], G.m)
        if disjoint:
            blocked.update(tri)
    return chosen


def check_almost_disjoint(sets: Sequence[Iterable[int]]) -> bool:
    """Pairs share at most one vertex; among any three, one misses the other two."""
    sets = [frozenset(s) for s in sets]
    for a, b in itertools.combinations(sets, 2):
        if len(a & b) > 1:
            return False
    for trio in itertools.combinations(sets, 3):
        if not any(
            not (trio[i] & trio[(i + 1) % 3]) and not (trio[i] & trio[(i + 2) % 3])
            for i in range(3)
        ):
            return False
    return True


def _packings(
    G: MultisignedCompleteGraph,
    count: int,
    blocked: set[int],
    accept,
    budget: int = 200_000,
) -> Iterator[list[tuple[int, int, int]]]:
    """Yield sets of ``count`` disjoint triangles satisfying ``accept``, lexicographically.

    ``accept(chosen, tri)`` decides whether ``tri`` may extend ``chosen``.
    Stops silently once ``budget`` search nodes have been expanded.
    """
    free = [v for v in range(G.n) if v not in blocked]
    used: set[int] = set()
    chosen: list[tuple[int, int, int]] = []
    steps = 0

    def rec(start: int) -> Iterator[list[tuple[int, int, int]]]:
        nonlocal steps
        need = count - len(chosen)
        if need == 0:
            yield list(chosen)
            return
        steps += 1
        if steps > budget:
            return
        avail = [v for v in free[start:] if v not in used]
        for i, a in enumerate(avail):
            if len(avail) - i < 3 * need:
                break
            rest = avail[i + 1 :]
            for j, b in enumerate(rest):
                for c in rest[j + 1 :]:
                    tri = (a, b, c)
                    if not accept(chosen, tri):
                        continue
                    chosen.append(tri)
                    used.update(tri)
                    yield from rec(free.index(a) + 1)
                    chosen.pop()
                    used.difference_update(tri)
                    if steps > budget:
                        return

    yield from rec(0)


def _independent_accept(G: MultisignedCompleteGraph):
    def accept(chosen, tri):
        signs = [triangle_bits(G, *t) for t in chosen] + [triangle_bits(G, *tri)]
        return span_basis_bits(signs, G.m).rank == len(signs)

    return accept


def find_disjoint_independent_triangles(
    G: MultisignedCompleteGraph, count: int, forbidden: Iterable[int] = ()
) -> list[Triangle]:
    """``count`` pairwise-disjoint triangles whose multisigns are independent."""
    for found in _packings(G, count, set(forbidden), _independent_accept(G)):
        return [Triangle.of(G, *t) for t in found]
    raise NotFound(f"no {count} disjoint triangles with independent multisigns")


def find_identity_triangles(
    G: MultisignedCompleteGraph, count: int, forbidden: Iterable[int] = ()
) -> list[Triangle]:
    """``count`` pairwise-disjoint triangles with multisign e avoiding ``forbidden``."""
    if count <= 0:
        return []
    for found in _packings(G, count, set(forbidden), lambda chosen, tri: triangle_bits(G, *tri) == 0):
        return [Triangle(t, G.zero()) for t in found]
    raise NotFound(f"no {count} disjoint identity triangles outside the forbidden set")


@dataclass(frozen=True)
class TriangularPath:
    """Triangles T, Y_1, ..., Y_r, R; consecutive ones share exactly one edge."""

    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        tris = [frozenset(t) for t in self.triangles]
        if len(tris) < 2 or any(len(t) != 3 for t in tris):
            raise ValueError("a triangular path needs at least two triangles")
        for i, j in itertools.combinations(range(len(tris)), 2):
            common = len(tris[i] & tris[j])
            if j == i + 1 and common != 2:
                raise ValueError(f"triangles {i} and {j} do not share an edge")
            if j > i + 1 and common > 1:
                raise ValueError(f"nonconsecutive triangles {i} and {j} share an edge")

    @classmethod
    def strip(cls, vertices: Sequence[int]) -> TriangularPath:
        """Zig-zag strip: triangles on every window of three consecutive vertices."""
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            raise ValueError("strip repeats a vertex")
        return cls(tuple(tuple(vs[i : i + 3]) for i in range(len(vs) - 2)))

    @property
    def interior_length(self) -> int:
        return len(self.triangles) - 2

    def vertices(self) -> frozenset[int]:
        return frozenset(v for t in self.triangles for v in t)


def build_triangular_path(
    G: MultisignedCompleteGraph,
    start: Triangle,
    end: Triangle,
    avoid: Iterable[int] = (),
    fresh: int = 0,
) -> TriangularPath:
    """Strip from ``start`` to ``end`` through ``fresh`` new vertices."""
    s, t = list(start.vertices), list(end.vertices)
    common = [v for v in s if v in t]
    if len(common) == 3:
        raise ValueError("start and end are the same triangle")
    if common and fresh:
        raise ValueError("fresh vertices only fit between disjoint end triangles")
    if len(common) == 2:
        (x,) = set(s) - set(common)
        (w,) = set(t) - set(common)
        return TriangularPath.strip([x, *common, w])
    if len(common) == 1:
        v = common[0]
        head = [u for u in s if u != v] + [v]
        tail = [v] + [u for u in t if u != v]
        return TriangularPath.strip(head + tail[1:])
    blocked = set(avoid) | set(s) | set(t)
    pool = [v for v in range(G.n) if v not in blocked]
    if len(pool) < fresh:
        raise NotFound(f"need {fresh} fresh vertices, {len(pool)} available")
    return TriangularPath.strip(s + pool[:fresh] + t)


@dataclass(frozen=True)
class QuadChoice:
    square: Square
    multisign: Multisign
    pair_index: int
    coefficients: tuple[int, ...]


def quad_from_pair(tri1: Sequence[int], tri2: Sequence[int]) -> Square:
    """T1 delta T2 for triangles sharing an edge; junctions are the unshared vertices."""
    shared = [v for v in tri1 if v in tri2]
    if len(shared) != 2:
        raise ValueError("triangles must share exactly one edge")
    (p,) = [v for v in tri1 if v not in shared]
    (s,) = [v for v in tri2 if v not in shared]
    q, r = shared
    return Square(p, q, s, r)


def construct_q(
    G: MultisignedCompleteGraph,
    P: TriangularPath,
    others: Sequence[Multisign],
    t_sign: Multisign,
) -> QuadChoice:
    """Pick the first adjacent pair of P straddling the two cosets of span(others).

    ``others`` generates the hyperplane U of the target space that must not
    contain ``t_sign``.  The returned quad's multisign equals ``t_sign`` plus a
    combination of ``others`` given by ``coefficients``.
    """
    m = G.m
    U = span_basis_bits([o.bits for o in others], m)
    if U.reduce(t_sign) == 0:
        raise ExceptionalCase("t_sign lies in span(U)")
    signs = [triangle_bits(G, *tri) for tri in P.triangles]
    if signs[0] != t_sign.bits:
        raise ExceptionalCase("first triangle does not carry t_sign")
    if signs[-1] != 0:
        raise ExceptionalCase("terminal triangle is not an identity triangle")
    in_u = []
    for tri, x in zip(P.triangles, signs):
        if U.reduce(x) == 0:
            in_u.append(True)
        elif U.reduce(x ^ t_sign.bits) == 0:
            in_u.append(False)
        else:
            raise ExceptionalCase(f"triangle {tri} lies outside span(U) and its t_sign coset")
    for j in range(len(signs) - 1):
        if in_u[j] != in_u[j + 1]:
            break
    else:  # pragma: no cover - endpoints differ, so a switch exists
        raise AssertionError("no coset switch along the path")
    sq = quad_from_pair(P.triangles[j], P.triangles[j + 1])
    sign = Multisign(signs[j] ^ signs[j + 1], m)
    coeffs = solve_combination(list(others), sign + t_sign)
    assert coeffs is not None
    return QuadChoice(sq, sign, j, coeffs)


@dataclass(frozen=True)
class QSequence:
    quads: tuple[Square, ...]
    signs: tuple[Multisign, ...]
    provenance: tuple[tuple[int, int], ...]  # (path index, pair index)
    coefficients: tuple[tuple[int, ...], ...]

    def rank(self, m: int) -> int:
        return span_basis_bits([s.bits for s in self.signs], m).rank


def construct_q_sequence(
    G: MultisignedCompleteGraph,
    paths: Sequence[TriangularPath],
    t_signs: Sequence[Multisign],
) -> QSequence:
    """Replace each T_i by Q_i in turn; independence is kept at every step."""
    if len(paths) != len(t_signs):
        raise ValueError("one path per triangle multisign")
    k = len(t_signs)
    if span_basis_bits([t.bits for t in t_signs], G.m).rank != k:
        raise ExceptionalCase("triangle multisigns are not independent")
    current = list(t_signs)
    quads, signs, prov, coeffs = [], [], [], []
    for i, P in enumerate(paths):
        others = current[:i] + current[i + 1 :]
        choice = construct_q(G, P, others, t_signs[i])
        current[i] = choice.multisign
        quads.append(choice.square)
        signs.append(choice.multisign)
        prov.append((i, choice.pair_index))
        coeffs.append(choice.coefficients)
    return QSequence(tuple(quads), tuple(signs), tuple(prov), tuple(coeffs))


def assemble_necklace(G: MultisignedCompleteGraph, Q: QSequence) -> CoveringNecklace:
    """Ring Q_1 - Q_2 - ... - Q_k - (path of leftover vertices) - Q_1."""
    quads = list(Q.quads)
    if not quads:
        raise NotFound("no quads to assemble")
    used: set[int] = set()
    for sq in quads:
        if used & sq.vertices():
            raise NotFound("quads overlap; only vertex-disjoint quads are chained")
        used |= sq.vertices()
    leftover = [v for v in range(G.n) if v not in used]
    links = [(quads[i].c, quads[i + 1].a) for i in range(len(quads) - 1)]
    paths: list[NecklacePath] = []
    if leftover:
        paths.append(NecklacePath(tuple(leftover)))
        links += [(quads[-1].c, leftover[0]), (leftover[-1], quads[0].a)]
    elif len(quads) == 1:
        paths.append(NecklacePath((quads[0].c, quads[0].a)))
    else:
        links.append((quads[-1].c, quads[0].a))
    N = CoveringNecklace.build(quads, paths, links)
    problem = validate(G, N)
    if problem is not None:
        raise ExceptionalCase(f"assembled necklace invalid: {problem}")
    return N


@dataclass
class Construction:
    """Everything the main route built, in certificate order."""

    triangles: list[Triangle] = field(default_factory=list)
    identities: list[Triangle] = field(default_factory=list)
    paths: list[TriangularPath] = field(default_factory=list)
    qseq: QSequence | None = None
    necklaces: list[CoveringNecklace] = field(default_factory=list)
    realizations: dict[int, HamiltonianCycle] = field(default_factory=dict)


def build_q_necklace(G: MultisignedCompleteGraph) -> Construction:
    """Run the triangle / strip / quad pipeline on ``G``.

    Targets are the span of all triangle multisigns of ``G``.  Raises
    :class:`ConstructionFailure` when some structure cannot be found.
    """
    full = find_independent_triangles(G)
    k = len(full)
    out = Construction()
    if k == 0:
        raise NotFound("all triangles are identity triangles; no quads needed")
    if G.n < 6 * k:
        raise NotFound(f"need {6 * k} vertices for {k} disjoint strips, have {G.n}")
    for packing in _packings(G, k, set(), _independent_accept(G), budget=20_000):
        taken = {v for t in packing for v in t}
        try:
            out.identities = find_identity_triangles(G, k, forbidden=taken)
        except NotFound:
            continue
        ts = [Triangle.of(G, *t) for t in packing]
        break
    else:
        raise NotFound(f"no {k} disjoint independent triangles leaving room for {k} identity triangles")
    out.triangles = ts
    out.paths = [build_triangular_path(G, t, r) for t, r in zip(ts, out.identities)]
    out.qseq = construct_q_sequence(G, out.paths, [t.multisign for t in ts])
    if out.qseq.rank(G.m) != k:  # pragma: no cover - guaranteed by construction
        raise AssertionError("quad multisigns lost independence")
    out.necklaces = [assemble_necklace(G, out.qseq)]
    return out


def ring_necklace(order: Sequence[int]) -> CoveringNecklace:
    """Necklace reading ``order`` as a Hamiltonian cycle with the most 3-step windows.

    Window j spans positions 3j..3j+3 (visited a, b, d, c); consecutive
    windows share their junction.  Leftover positions become a path.
    """
    n = len(order)
    if n < 4:
        raise ValueError("ring necklace needs n >= 4")
    w = n // 3
    o = list(order)
    squares = []
    for j in range(w):
        a, b, d = o[3 * j], o[3 * j + 1], o[3 * j + 2]
        c = o[(3 * j + 3) % n]
        squares.append(Square(a, b, c, d))
    paths: list[NecklacePath] = []
    links: list[tuple[int, int]] = []
    end = 3 * w
    if end == n:  # last junction wraps to order[0]
        if w == 1:  # pragma: no cover - n == 3 is excluded above
            raise ValueError("single square cannot close on itself")
        return CoveringNecklace.build(squares)
    rest = o[end + 1 :]
    if rest:
        paths.append(NecklacePath(tuple(rest)))
        links += [(o[end], rest[0]), (rest[-1], o[0])]
    elif w == 1:
        paths.append(NecklacePath((o[end], o[0])))
    else:
        links.append((o[end], o[0]))
    return CoveringNecklace.build(squares, paths, links)


def cover_by_necklaces(
    G: MultisignedCompleteGraph,
    targets: Iterable[int],
    *,
    seed: int = 0,
    budget: int = 4000,
    start: Sequence[CoveringNecklace] = (),
) -> Construction:
    """Certify every target with some necklace's reachable coset.

    Tries ``start`` first, then ring necklaces over seeded random vertex
    orders.  Raises :class:`NotFound` if targets remain after ``budget`` tries.
    """
    remaining = set(targets)
    out = Construction()
    rng = SplitMix64(seed)
    order = list(range(G.n))

    def candidates():
        yield from start
        for _ in range(budget):
            rng.shuffle(order)
            yield ring_necklace(order)

    for N in candidates():
        if not remaining:
            break
        coset = necklace_coset(G, N)
        hits = sorted(g for g in remaining if coset.contains(g))
        if not hits:
            continue
        out.necklaces.append(N)
        for g in hits:
            H = realize_multisign(G, N, Multisign(g, G.m))
            assert H is not None
            out.realizations[g] = H
            remaining.discard(g)
    if remaining:
        raise NotFound(f"{len(remaining)} targets left uncovered after {budget} necklaces")
    return out


def realize_all(G: MultisignedCompleteGraph, N: CoveringNecklace, targets: Iterable[int]) -> dict[int, HamiltonianCycle]:
    out = {}
    for g in targets:
        H = realize_multisign(G, N, Multisign(g, G.m))
        if H is None:
            raise NotFound(f"target {g:0{G.m}b} outside the necklace coset")
        out[g] = H
    return out


def target_space(G: MultisignedCompleteGraph) -> Gf2Basis:
    """Span of all triangle multisigns (equals the cycle-space image)."""
    return span_basis_bits((triangle_bits(G, *t) for t in triangles(G.n)), G.m)
