"""Decide the shape of S(G) constructively, by oracle, or both.

The constructive route rests on one bound and one construction.  For any
shift x taken from the triangle multisigns, every Hamiltonian cycle H
satisfies ``sigma(H) = n*x + sigma_x(H)`` with ``sigma_x(H)`` in the cycle
space image U_x of the shifted graph, so ``S(G) <= n*x + U_x``.  The finder
then certifies every element of that bound with an explicit cycle; when it
succeeds the bound is attained and the verdict is exact.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from . import finder
from .gf2 import Multisign, RealizationVerdict, classify_set, span_basis_bits
from .graph import HamiltonianCycle, MultisignedCompleteGraph, add_constant, cycle_multisign, triangle_census
from .necklace import dumps_necklace
from .oracle import EXHAUSTIVE_MAX_N, cycle_space_image, realized_bits

MODES = ("construct", "oracle", "both")


def shift_reduce(
    G: MultisignedCompleteGraph, x: Multisign
) -> tuple[MultisignedCompleteGraph, Multisign]:
    """(G + x, n*x); S(G) = n*x + S(G + x)."""
    offset = x if G.n % 2 else Multisign.zero(G.m)
    return add_constant(G, x), offset


@dataclass
class Certificate:
    """Shift used, structures built in the shifted graph, and verified cycles in G."""

    n: int
    m: int
    shift: Multisign
    offset: Multisign
    construction: finder.Construction
    realizations: dict[Multisign, HamiltonianCycle] = field(default_factory=dict)

    def to_text(self) -> str:
        m = self.m
        c = self.construction
        lines = [f"certificate {self.n} {m}", f"shift {self.shift}", f"offset {self.offset}"]
        lines += [f"triangle {' '.join(map(str, t.vertices))} {t.multisign}" for t in c.triangles]
        lines += [f"identity {' '.join(map(str, t.vertices))}" for t in c.identities]
        for P in c.paths:
            lines.append("tripath " + " ".join(",".join(map(str, t)) for t in P.triangles))
        if c.qseq is not None:
            for sq, s in zip(c.qseq.quads, c.qseq.signs):
                lines.append(f"quad {sq.a} {sq.b} {sq.c} {sq.d} {s}")
        for i, N in enumerate(c.necklaces):
            lines.append(f"necklace {i}")
            lines.extend(dumps_necklace(N).splitlines())
        for g in sorted(self.realizations):
            lines.append(f"realize {g} {self.realizations[g]}")
        return "\n".join(lines) + "\n"


@dataclass
class ClassificationReport:
    verdict: RealizationVerdict
    trace: list[str] = field(default_factory=list)
    certificate: Certificate | None = None
    oracle_checked: bool = False
    mismatch: bool = False
    exceptional: bool = False
    construct_verdict: RealizationVerdict | None = None
    oracle_verdict: RealizationVerdict | None = None

    @property
    def exit_code(self) -> int:
        if self.mismatch:
            return 3
        return 2 if self.verdict.kind == "Unknown" else 0

    def step(self, name: str, args: str, outcome: str) -> None:
        self.trace.append(f"step: {name} {args} -> {outcome}".replace("  ", " "))

    def to_text(self) -> str:
        lines = [self.verdict.to_text()]
        lines.append(f"oracle_checked={'yes' if self.oracle_checked else 'no'}")
        if self.mismatch:
            lines.append("mismatch=yes")
        if self.exceptional:
            lines.append("exceptional=yes")
        lines.extend(self.trace)
        return "\n".join(lines) + "\n"


def _eta_max(census: dict[Multisign, int]) -> Multisign:
    """Most frequent triangle multisign; ties go to e, then lexicographic order."""
    best = max(census.values())
    return min(x for x, k in census.items() if k == best)


def _shared_offset_witness(values: list[Multisign], k: int, m: int) -> Multisign | None:
    """A triangle multisign y admitting independent x_1..x_k with x_i + y independent."""
    for y in values:
        xs: list[int] = []
        for x in values:
            trial = xs + [x.bits]
            if span_basis_bits(trial, m).rank == len(trial) and (
                span_basis_bits([t ^ y.bits for t in trial], m).rank == len(trial)
            ):
                xs = trial
            if len(xs) == k:
                return y
    return None


def choose_shift(
    G: MultisignedCompleteGraph, report: ClassificationReport
) -> Multisign | None:
    """Walk the reduction cases and return the shift to apply, or None for Unknown."""
    m = G.m
    census = triangle_census(G)
    e = G.zero()
    eta_e = census.get(e, 0)
    image = cycle_space_image(G)
    k = image.rank
    report.step("census", f"triangles={sum(census.values())} distinct={len(census)}", f"eta(e)={eta_e}")
    report.step("image", "", f"rank={k} basis={image}")
    if k < m:
        report.step("restrict", f"m={m}", f"target space U of rank {k}")
    top = _eta_max(census)
    if census.get(e, 0) == census[top]:
        report.step("case", "eta(e) maximal", "identity-dominant pipeline, shift e")
        return e
    values = sorted(census)
    if eta_e >= 1:
        report.step("case", f"eta({top}) maximal, identity triangle present", f"shift by {top}")
        return top
    y = _shared_offset_witness(values, k, m)
    if y is not None:
        report.step("case", f"no identity triangle, y={y} keeps a basis independent", f"shift by {y}")
        report.step("case", f"then eta({top}+{y}) maximal in shifted graph", f"net shift {top}")
        return top
    if span_basis_bits([v.bits for v in values], m).rank == len(values):
        report.step(
            "case", f"triangle multisigns form an independent set, x1={top}", f"shift by {top}"
        )
        return top
    report.step("case", "no reduction applies", "Unknown")
    return None


def construct(
    G: MultisignedCompleteGraph,
    report: ClassificationReport | None = None,
    *,
    seed: int = 0,
    budget: int = 4000,
) -> ClassificationReport:
    """Constructive verdict: Full/Subspace/Affine with certificate, else Unknown."""
    report = report or ClassificationReport(RealizationVerdict.unknown(G.m))
    x = choose_shift(G, report)
    if x is None:
        report.exceptional = True
        report.verdict = RealizationVerdict.unknown(G.m)
        return report
    return _construct_with_shift(G, x, report, seed=seed, budget=budget)


def _construct_with_shift(
    G: MultisignedCompleteGraph,
    x: Multisign,
    report: ClassificationReport,
    *,
    seed: int,
    budget: int,
) -> ClassificationReport:
    m = G.m
    shifted, offset = shift_reduce(G, x)
    U = cycle_space_image(shifted)
    report.step("shift", f"x={x} n={G.n}", f"parity offset {offset}")
    report.step("bound", f"S <= {offset} + span{{{U}}}", f"{1 << U.rank} candidates")
    targets = list(U.elements())
    construction = finder.Construction()
    start = []
    try:
        construction = finder.build_q_necklace(shifted)
        N = construction.necklaces[0]
        construction.realizations = finder.realize_all(shifted, N, targets)
        report.step("pipeline", f"quads={len(construction.qseq.quads)}", "necklace realizes all targets")
    except finder.ConstructionFailure as exc:
        report.step("pipeline", "", f"failed: {exc}")
        start = construction.necklaces
        try:
            cover = finder.cover_by_necklaces(shifted, targets, seed=seed, budget=budget, start=start)
        except finder.ConstructionFailure as exc2:
            report.step("cover", f"budget={budget}", f"failed: {exc2}")
            report.exceptional = True
            report.verdict = RealizationVerdict.unknown(m)
            return report
        construction.necklaces = cover.necklaces
        construction.realizations = cover.realizations
        report.step("cover", f"budget={budget}", f"{len(cover.necklaces)} necklaces realize all targets")

    cert = Certificate(G.n, m, x, offset, construction)
    for g_shift, H in construction.realizations.items():
        g = Multisign(g_shift ^ offset.bits, m)
        if cycle_multisign(G, H) != g:  # pragma: no cover - guarded by necklace soundness
            raise AssertionError(f"certificate cycle {H} does not realize {g}")
        cert.realizations[g] = H
    report.certificate = cert
    report.verdict = classify_set(cert.realizations, m)
    report.step("verdict", f"certified={len(cert.realizations)}", report.verdict.kind)
    return report


def subspace_case(G: MultisignedCompleteGraph, *, seed: int = 0, budget: int = 4000) -> ClassificationReport:
    """Triangle multisigns inside an independent set: S is U (n even) or x1 + U (n odd).

    Falls through to :func:`classify_instance` when the hypothesis fails.
    """
    census = triangle_census(G)
    values = sorted(census)
    report = ClassificationReport(RealizationVerdict.unknown(G.m))
    if G.zero() in census or span_basis_bits([v.bits for v in values], G.m).rank != len(values):
        report.step("subspace-case", "hypothesis", "fails; general classification")
        general = classify_instance(G, "construct", seed=seed, budget=budget)
        general.trace[:0] = report.trace
        return general
    x1 = _eta_max(census)
    report.step("subspace-case", f"independent triangle multisigns, x1={x1}", f"shift by {x1}")
    return _construct_with_shift(G, x1, report, seed=seed, budget=budget)


def _oracle_bits(args: tuple[MultisignedCompleteGraph, bool]) -> set[int]:
    G, force = args
    return realized_bits(G, force=force)


def classify_instance(
    G: MultisignedCompleteGraph,
    mode: str = "construct",
    *,
    seed: int = 0,
    budget: int = 4000,
    force: bool = False,
    jobs: int = 1,
) -> ClassificationReport:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    report = ClassificationReport(RealizationVerdict.unknown(G.m))
    if mode == "both" and G.n > EXHAUSTIVE_MAX_N and not force:
        report.step("oracle", f"n={G.n}", f"skipped, above exhaustive cap {EXHAUSTIVE_MAX_N}")
        mode = "construct"
    oracle_bits = None
    pool = None
    future = None
    if mode in ("oracle", "both") and jobs > 1:
        pool = ProcessPoolExecutor(max_workers=1)
        future = pool.submit(_oracle_bits, (G, force))
    try:
        if mode in ("construct", "both"):
            construct(G, report, seed=seed, budget=budget)
            report.construct_verdict = report.verdict
        if mode in ("oracle", "both"):
            oracle_bits = future.result() if future else realized_bits(G, force=force)
    finally:
        if pool is not None:
            pool.shutdown()
    if oracle_bits is not None:
        ov = classify_set((Multisign(b, G.m) for b in oracle_bits), G.m)
        report.oracle_verdict = ov
        report.oracle_checked = True
        report.step("oracle", f"n={G.n}", f"|S|={len(oracle_bits)} {ov.kind}")
        cv = report.construct_verdict
        if cv is not None and cv.kind != "Unknown" and cv != ov:
            report.mismatch = True
            report.step("compare", f"construct={cv.kind}", f"MISMATCH oracle={ov.kind}")
        elif cv is not None:
            report.step("compare", f"construct={cv.kind}", "consistent")
        report.verdict = ov
    return report


def oracle_in_range(G: MultisignedCompleteGraph) -> bool:
    return G.n <= EXHAUSTIVE_MAX_N


def verify_realizations(
    G: MultisignedCompleteGraph, pairs: Iterable[tuple[Multisign, HamiltonianCycle]]
) -> list[tuple[Multisign, Multisign, bool]]:
    """(claimed, recomputed, ok) for each certificate cycle."""
    results = []
    for g, H in pairs:
        got = cycle_multisign(G, H)
        results.append((g, got, got == g))
    return results


def realize_constructive(
    G: MultisignedCompleteGraph, g: Multisign, *, seed: int = 0, budget: int = 4000
) -> tuple[str, HamiltonianCycle | None]:
    """("REALIZED", H), ("NOT-REALIZABLE", None) or ("UNKNOWN", None), without exhaustive search.

    NOT-REALIZABLE is only returned when g falls outside some shifted
    bound ``n*x + U_x``; each such bound contains all of S(G).
    """
    shifts = [G.zero(), *sorted(triangle_census(G))]
    for x in dict.fromkeys(shifts):
        shifted, offset = shift_reduce(G, x)
        if Multisign(g.bits ^ offset.bits, G.m) not in cycle_space_image(shifted):
            return "NOT-REALIZABLE", None
    try:
        cover = finder.cover_by_necklaces(G, [g.bits], seed=seed, budget=budget)
    except finder.ConstructionFailure:
        return "UNKNOWN", None
    H = cover.realizations[g.bits]
    assert cycle_multisign(G, H) == g
    return "REALIZED", H
