"""Exhaustive ground truth over all Hamiltonian cycles of K_n."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator

from .gf2 import DimensionError, Gf2Basis, Multisign, RealizationVerdict, classify_set, span_basis_bits
from .graph import HamiltonianCycle, MultisignedCompleteGraph

EXHAUSTIVE_MAX_N = 13
DFS_MAX_N = 10


class OracleRangeError(ValueError):
    """Exhaustive work requested beyond the supported range."""


def hamiltonian_count(n: int) -> int:
    return 1 if n == 3 else math.factorial(n - 1) // 2


def _check_range(n: int, force: bool) -> None:
    if n > EXHAUSTIVE_MAX_N and not force:
        raise OracleRangeError(
            f"n={n} exceeds exhaustive cap {EXHAUSTIVE_MAX_N}; pass force=True"
        )


def _orders(n: int, second: int | None = None) -> Iterator[tuple[int, ...]]:
    """Canonical orders in lexicographic order, optionally fixing the second vertex."""
    order = [0] * n
    used = [False] * n
    used[0] = True

    def rec(depth: int, first: int) -> Iterator[tuple[int, ...]]:
        if depth == n:
            if order[-1] > first:
                yield tuple(order)
            return
        for v in range(1, n):
            if used[v]:
                continue
            if depth == n - 1 and v < first:
                continue
            used[v] = True
            order[depth] = v
            yield from rec(depth + 1, first)
            used[v] = False

    seconds = range(1, n - 1) if second is None else [second]
    for s in seconds:
        used[s] = True
        order[1] = s
        yield from rec(2, s)
        used[s] = False


def enumerate_hamiltonian(G: MultisignedCompleteGraph | int) -> Iterator[HamiltonianCycle]:
    """Yield every Hamiltonian cycle of K_n once, canonical form, lexicographic order."""
    n = G if isinstance(G, int) else G.n
    if n < 3:
        raise ValueError("need n >= 3")
    for order in _orders(n):
        yield HamiltonianCycle(order)


def _branch_signs(args: tuple[int, tuple[int, ...], int, int | None]) -> set[int]:
    """Multisigns of all cycles whose second vertex is ``second``."""
    n, labels, second, stop_at = args
    mat = [[0] * n for _ in range(n)]
    for v in range(n):
        for u in range(v):
            mat[u][v] = mat[v][u] = labels[v * (v - 1) // 2 + u]
    found: set[int] = set()
    used = [False] * n
    used[0] = used[second] = True
    row0 = mat[0]

    def rec(last: int, depth: int, acc: int) -> bool:
        row = mat[last]
        if depth == n - 1:
            for v in range(second + 1, n):
                if not used[v]:
                    found.add(acc ^ row[v] ^ row0[v])
            return stop_at is not None and len(found) >= stop_at
        for v in range(1, n):
            if not used[v]:
                used[v] = True
                done = rec(v, depth + 1, acc ^ row[v])
                used[v] = False
                if done:
                    return True
        return False

    rec(second, 2, row0[second])
    return found


def _signs_by_enumeration(G: MultisignedCompleteGraph, jobs: int, stop_at: int | None) -> set[int]:
    n = G.n
    tasks = [(n, G.labels, s, stop_at) for s in range(1, n - 1)]
    found: set[int] = set()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_branch_signs, tasks):
                found |= part
    else:
        for task in tasks:
            found |= _branch_signs(task)
            if stop_at is not None and len(found) >= stop_at:
                break
    return found


def _path_table(G: MultisignedCompleteGraph) -> list[list[set[int]]]:
    """table[mask][v]: multisigns of Hamiltonian paths 0 -> v over vertices {0} | mask.

    ``mask`` ranges over subsets of 1..n-1, bit (v-1) standing for vertex v.
    """
    n = G.n
    mat = G.matrix()
    k = n - 1
    table: list[list[set[int]]] = [[set() for _ in range(n)] for _ in range(1 << k)]
    for v in range(1, n):
        table[1 << (v - 1)][v].add(mat[0][v])
    for mask in range(1, 1 << k):
        cells = table[mask]
        for v in range(1, n):
            here = cells[v]
            if not here:
                continue
            row = mat[v]
            for w in range(1, n):
                bit = 1 << (w - 1)
                if mask & bit:
                    continue
                y = row[w]
                table[mask | bit][w].update(s ^ y for s in here)
    return table


def hamiltonian_census(G: MultisignedCompleteGraph, *, force: bool = False) -> dict[Multisign, int]:
    """Number of Hamiltonian cycles per multisign (path-table count, halved for direction)."""
    _check_range(G.n, force)
    n = G.n
    mat = G.matrix()
    k = n - 1
    table: list[list[dict[int, int]]] = [[{} for _ in range(n)] for _ in range(1 << k)]
    for v in range(1, n):
        table[1 << (v - 1)][v][mat[0][v]] = 1
    for mask in range(1, 1 << k):
        for v in range(1, n):
            here = table[mask][v]
            if not here:
                continue
            row = mat[v]
            for w in range(1, n):
                bit = 1 << (w - 1)
                if mask & bit:
                    continue
                cell = table[mask | bit][w]
                y = row[w]
                for s, c in here.items():
                    cell[s ^ y] = cell.get(s ^ y, 0) + c
    totals: dict[int, int] = {}
    for v in range(1, n):
        y = mat[v][0]
        for s, c in table[-1][v].items():
            totals[s ^ y] = totals.get(s ^ y, 0) + c
    return {Multisign(s, G.m): c // 2 for s, c in totals.items()}


def _signs_by_table(G: MultisignedCompleteGraph) -> set[int]:
    table = _path_table(G)
    full = table[-1]
    out: set[int] = set()
    for v in range(1, G.n):
        y = G.sigma(v, 0)
        out.update(s ^ y for s in full[v])
    return out


def realized_bits(
    G: MultisignedCompleteGraph,
    *,
    method: str = "auto",
    jobs: int = 1,
    force: bool = False,
    stop_at: int | None = None,
) -> set[int]:
    """S(G) as raw ints.  ``stop_at`` allows early exit once that many are found."""
    _check_range(G.n, force)
    if method == "auto":
        method = "enumerate" if G.n <= DFS_MAX_N else "table"
    if method == "enumerate":
        return _signs_by_enumeration(G, jobs, stop_at)
    if method == "table":
        return _signs_by_table(G)
    raise ValueError(f"unknown method {method!r}")


def realized_multisigns(
    G: MultisignedCompleteGraph, *, method: str = "auto", jobs: int = 1, force: bool = False
) -> set[Multisign]:
    """The set of multisigns of all Hamiltonian cycles."""
    return {Multisign(x, G.m) for x in realized_bits(G, method=method, jobs=jobs, force=force)}


def oracle_verdict(
    G: MultisignedCompleteGraph, *, jobs: int = 1, force: bool = False
) -> RealizationVerdict:
    return classify_set(realized_multisigns(G, jobs=jobs, force=force), G.m)


def _find_dfs(G: MultisignedCompleteGraph, g: int) -> HamiltonianCycle | None:
    n = G.n
    mat = G.matrix()
    order = [0] * n
    used = [False] * n
    used[0] = True

    def rec(depth: int, acc: int) -> bool:
        last = order[depth - 1]
        row = mat[last]
        if depth == n:
            return order[-1] > order[1] and acc ^ row[0] == g
        for v in range(1, n):
            if used[v]:
                continue
            if depth == n - 1 and depth > 1 and v < order[1]:
                continue
            used[v] = True
            order[depth] = v
            if rec(depth + 1, acc ^ row[v]):
                return True
            used[v] = False
        return False

    return HamiltonianCycle(tuple(order)) if rec(1, 0) else None


def _find_table(G: MultisignedCompleteGraph, g: int) -> HamiltonianCycle | None:
    n = G.n
    table = _path_table(G)
    mask = len(table) - 1
    want = None
    for v in range(1, n):
        if g ^ G.sigma(v, 0) in table[mask][v]:
            want, last = g ^ G.sigma(v, 0), v
            break
    if want is None:
        return None
    rev = [last]
    while mask != 1 << (last - 1):
        prev_mask = mask ^ (1 << (last - 1))
        for u in range(1, n):
            if prev_mask >> (u - 1) & 1 and want ^ G.sigma(u, last) in table[prev_mask][u]:
                want ^= G.sigma(u, last)
                mask, last = prev_mask, u
                rev.append(u)
                break
        else:  # pragma: no cover - table is consistent by construction
            raise AssertionError("path table reconstruction failed")
    return HamiltonianCycle.from_order([0] + rev[::-1])


def find_with_multisign(
    G: MultisignedCompleteGraph,
    g: Multisign,
    *,
    method: str = "auto",
    force: bool = False,
) -> HamiltonianCycle | None:
    """A Hamiltonian cycle with multisign ``g``, or None if none exists."""
    if g.m != G.m:
        raise DimensionError("target dimension differs from graph")
    _check_range(G.n, force)
    if method == "auto":
        method = "dfs" if G.n <= DFS_MAX_N else "table"
    if method == "dfs":
        return _find_dfs(G, g.bits)
    if method == "table":
        return _find_table(G, g.bits)
    raise ValueError(f"unknown method {method!r}")


def cycle_space_image(G: MultisignedCompleteGraph) -> Gf2Basis:
    """Basis of sigma(Z(K_n)), spanned by the triangles through vertex 0."""
    n = G.n
    row0 = [G.sigma(0, v) if v else 0 for v in range(n)]
    signs = (
        row0[a] ^ row0[b] ^ G.sigma(a, b) for a in range(1, n) for b in range(a + 1, n)
    )
    return span_basis_bits(signs, G.m)
