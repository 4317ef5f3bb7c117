"""Command-line interface: ``hamsign <command> ...``."""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import generators
from .classify import MODES, classify_instance, realize_constructive
from .gf2 import Multisign
from .graph import (
    HamiltonianCycle,
    InstanceFormatError,
    MalformedCycleError,
    MultisignedCompleteGraph,
    cycle_multisign,
    dumps_instance,
    loads_instance,
    triangle_census,
)
from .oracle import EXHAUSTIVE_MAX_N, OracleRangeError, find_with_multisign, hamiltonian_census, oracle_verdict

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN, EXIT_MISMATCH = 0, 1, 2, 3


class CliError(Exception):
    """Usage or input error; printed and mapped to exit code 1."""


def load_graph(path: str) -> MultisignedCompleteGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}") from None
    try:
        return loads_instance(text)
    except InstanceFormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def _parse_target(G: MultisignedCompleteGraph, text: str) -> Multisign:
    try:
        g = Multisign.parse(text)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if g.m != G.m:
        raise CliError(f"target has {g.m} bits, instance has m={G.m}")
    return g


def _oracle_guard(G: MultisignedCompleteGraph, force: bool) -> None:
    if G.n > EXHAUSTIVE_MAX_N and not force:
        raise CliError(f"n={G.n} exceeds the exhaustive cap {EXHAUSTIVE_MAX_N}; use --force")


def census_lines(counts: dict[Multisign, int]) -> list[str]:
    rows = sorted(counts.items(), key=lambda kv: (-kv[1], str(kv[0])))
    return [f"{x} {k}" for x, k in rows]


def build_instance(args: argparse.Namespace) -> MultisignedCompleteGraph:
    n, m, seed = args.n, args.m, args.seed
    if args.paper_case1:
        return generators.paper_case1(n or 7, args.shape)
    if args.paper_figure3:
        return generators.paper_figure3(n or 9)
    if n is None or m is None:
        raise CliError("--n and --m are required for this generator")
    if args.all_identity:
        return generators.all_identity(n, m)
    if args.uniform:
        return generators.uniform(n, m, seed)
    if args.normalized_sparse:
        special = generators.parse_edge_list(args.edges) if args.edges else None
        rest = int(args.rest, 2) if args.rest else 0
        return generators.normalized_sparse(n, m, seed, special, rest)
    if args.independent_triangles:
        return generators.independent_triangles(n, m, seed)
    raise CliError("choose a generator")  # pragma: no cover - argparse enforces one


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        G = build_instance(args)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    text = dumps_instance(G)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    G = load_graph(args.instance)
    print("\n".join(census_lines(triangle_census(G))))
    return EXIT_OK


def _classify_one(job: tuple[str, str, int, bool, int]) -> tuple[str, int, str, str | None]:
    path, mode, seed, force, jobs = job
    G = load_graph(path)
    if mode == "oracle":
        _oracle_guard(G, force)
    report = classify_instance(G, mode, seed=seed, force=force, jobs=jobs)
    cert = report.certificate.to_text() if report.certificate else None
    return path, report.exit_code, report.to_text(), cert


def cmd_classify(args: argparse.Namespace) -> int:
    paths = args.instances
    if args.certificate and len(paths) > 1:
        raise CliError("--certificate takes a single instance")
    jobs = [(p, args.mode, args.seed, args.force, 1) for p in paths]
    if len(paths) == 1:
        jobs = [(paths[0], args.mode, args.seed, args.force, args.jobs)]
        results = [_classify_one(jobs[0])]
    elif args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_classify_one, jobs))
    else:
        results = [_classify_one(j) for j in jobs]
    worst = EXIT_OK
    for path, code, text, cert in results:
        if len(paths) > 1:
            print(f"== {path}")
        sys.stdout.write(text)
        if args.certificate:
            if cert is None:
                print(f"no certificate produced; {args.certificate} not written", file=sys.stderr)
            else:
                Path(args.certificate).write_text(cert)
        worst = max(worst, code, key=lambda c: (c == EXIT_MISMATCH, c == EXIT_UNKNOWN))
    return worst


def cmd_realize(args: argparse.Namespace) -> int:
    G = load_graph(args.instance)
    g = _parse_target(G, args.target)
    if args.mode in ("construct", "both"):
        outcome, H = realize_constructive(G, g, seed=args.seed)
        if outcome != "UNKNOWN" or args.mode == "construct":
            print(f"{outcome} {g}" + (f" {H}" if H is not None else ""))
            return EXIT_UNKNOWN if outcome == "UNKNOWN" else EXIT_OK
        if G.n > EXHAUSTIVE_MAX_N and not args.force:
            print(f"UNKNOWN {g}")
            return EXIT_UNKNOWN
    _oracle_guard(G, args.force)
    H = find_with_multisign(G, g, force=args.force)
    if H is None:
        print(f"NOT-REALIZABLE {g}")
    else:
        print(f"REALIZED {g} {H}")
    return EXIT_OK


def parse_certificate(text: str, G: MultisignedCompleteGraph) -> list[tuple[int, Multisign, list[int]]]:
    """``realize`` records as (line number, claimed multisign, vertex order)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        if fields[0] == "certificate":
            if fields[1:] != [str(G.n), str(G.m)]:
                raise CliError(f"line {lineno}: certificate is for n,m={fields[1:]}, instance is {G.n},{G.m}")
        elif fields[0] == "realize":
            try:
                g = Multisign.parse(fields[1])
                order = [int(v) for v in fields[2:]]
            except (IndexError, ValueError):
                raise CliError(f"line {lineno}: malformed realize record") from None
            out.append((lineno, g, order))
    return out


def cmd_verify(args: argparse.Namespace) -> int:
    G = load_graph(args.instance)
    try:
        text = Path(args.certificate).read_text()
    except OSError as exc:
        raise CliError(f"{args.certificate}: {exc.strerror}") from None
    records = parse_certificate(text, G)
    if not records:
        raise CliError("certificate has no realize records")
    failures = 0
    for lineno, g, order in records:
        try:
            if len(order) != G.n:
                raise MalformedCycleError(f"{len(order)} vertices listed, graph has {G.n}")
            H = HamiltonianCycle.from_order(order)
        except MalformedCycleError as exc:
            failures += 1
            print(f"FAIL line {lineno} {g}: not a Hamiltonian cycle ({exc})")
            continue
        got = cycle_multisign(G, H)
        if got == g:
            print(f"PASS {g}")
        else:
            failures += 1
            print(f"FAIL line {lineno} claimed={g} recomputed={got}")
    print(f"verified {len(records) - failures}/{len(records)}")
    return EXIT_OK if failures == 0 else EXIT_ERROR


def cmd_oracle(args: argparse.Namespace) -> int:
    G = load_graph(args.instance)
    _oracle_guard(G, args.force)
    if args.census:
        print("\n".join(census_lines(hamiltonian_census(G, force=args.force))))
    elif args.realize:
        g = _parse_target(G, args.realize)
        H = find_with_multisign(G, g, force=args.force)
        print(f"NOT-REALIZABLE {g}" if H is None else f"REALIZED {g} {H}")
    else:
        print(oracle_verdict(G, jobs=args.jobs, force=args.force).to_text())
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=MODES, default="both")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--force", action="store_true", help="allow exhaustive search past n=13")

    parser = argparse.ArgumentParser(prog="hamsign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write an instance file")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--uniform", action="store_true")
    kind.add_argument("--normalized-sparse", action="store_true")
    kind.add_argument("--paper-case1", action="store_true")
    kind.add_argument("--paper-figure3", action="store_true")
    kind.add_argument("--all-identity", action="store_true")
    kind.add_argument("--independent-triangles", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--edges", help="special edges for --normalized-sparse, e.g. 1-2,3-4")
    p.add_argument("--rest", help="label of non-special edges for --normalized-sparse")
    p.add_argument("--shape", choices=sorted(generators.CASE1_SHAPES), default="star")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("census", parents=[common], help="triangle multisign counts")
    p.add_argument("instance")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("classify", parents=[common], help="classify S of one or more instances")
    p.add_argument("instances", nargs="+")
    p.add_argument("--certificate", help="write the construction certificate here")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("realize", parents=[common], help="find a Hamiltonian cycle with a given multisign")
    p.add_argument("instance")
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive queries")
    p.add_argument("instance")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--census", action="store_true", help="Hamiltonian cycles per multisign")
    what.add_argument("--realize", metavar="BITS")
    what.add_argument("--classify", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, OracleRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
