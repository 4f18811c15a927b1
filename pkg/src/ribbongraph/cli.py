"""Command-line front end.

    ribbongraph info --input moebius.arp
    ribbongraph dual --input annulus.arp --edges 1
    ribbongraph enumerate --input moebius.arp --kind eulerian
    ribbongraph verify --all-fixtures

Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import medial
from .duality import is_orientable, partial_dual, surface_invariants
from .medial import direction_to_json, enumerate_all_crossing, enumerate_crossing_total
from .presentation import (
    ArrowPresentation,
    ParseError,
    ValidationError,
    format_subset,
    is_bipartite,
    is_eulerian,
    label_key,
    parse,
    serialize,
)
from .report import VerificationReport
from .tracing import is_even_face, straight_ahead_walks, transition_system
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _load(args) -> ArrowPresentation:
    if args.input is None:
        raise InputError("--input FILE is required")
    if args.input == "-":
        text = sys.stdin.read()
    else:
        path = Path(args.input)
        if not path.exists() and args.input in V.FIXTURE_NAMES:
            return V.load_fixture(args.input).ap
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from exc
    try:
        ap = parse(text)
    except (ParseError, ValidationError) as exc:
        raise InputError(f"{args.input}: {exc}") from exc
    if ap.edge_count > args.max_edges:
        raise InputError(f"{ap.edge_count} edges exceeds --max-edges {args.max_edges}")
    return ap


def _subset(ap: ArrowPresentation, text: str) -> frozenset[str]:
    text = text.strip()
    if text.upper() == "ALL":
        return frozenset(ap.labels)
    labels = frozenset(s.strip() for s in text.split(",") if s.strip())
    unknown = labels - ap.edge_set
    if unknown:
        raise InputError(f"unknown edge labels: {', '.join(sorted(unknown, key=label_key))}")
    return labels


def _emit(args, payload, lines) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False, default=sorted))
    else:
        for line in lines:
            print(line)


def _family_json(family) -> list[list[str]]:
    items = sorted(family, key=lambda s: (len(s), sorted(s, key=label_key)))
    return [sorted(s, key=label_key) for s in items]


def cmd_info(args) -> int:
    ap = _load(args)
    inv = surface_invariants(ap)
    t = straight_ahead_walks(ap)[0]
    data = inv.to_dict()
    data.update(eulerian=is_eulerian(ap), bipartite=is_bipartite(ap), even_face=is_even_face(ap), t=t)
    line = (f"V={inv.vertex_count} E={inv.edge_count} F={inv.boundary_count} "
            f"χ={inv.euler_characteristic} {'orientable' if inv.orientable else 'nonorientable'} "
            f"genus={inv.genus} eulerian={_yes(data['eulerian'])} bipartite={_yes(data['bipartite'])} "
            f"even-face={_yes(data['even_face'])} t={t}")
    _emit(args, data, [line])
    return EXIT_OK


def cmd_dual(args) -> int:
    ap = _load(args)
    A = _subset(ap, args.edges)
    dual = partial_dual(ap, A)
    _emit(args, {"edges": sorted(A, key=label_key), "dual": serialize(dual)}, [serialize(dual)])
    return EXIT_OK


def cmd_medial(args) -> int:
    ap = _load(args)
    ts = transition_system(ap)
    t, walks = straight_ahead_walks(ap)
    edges = {label: [str(g) for g in ts.cyclic_gap_order(label)] for label in ts.labels}
    lines = [f"t={t}"]
    for label, gaps in edges.items():
        lines.append(f"edge {label}: {' '.join(gaps)}")
    for k, walk in enumerate(walks.to_json(), start=1):
        lines.append(f"walk {k}: {' '.join(walk['gaps'])}")
    _emit(args, {"t": t, "cyclic_order": edges, "straight_ahead_walks": walks.to_json()}, lines)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    ap = _load(args)
    kind = args.kind
    if kind == "ct-directions":
        dirs = enumerate_crossing_total(ap)
        payload = {"count": len(dirs), "directions": [
            {"orientation": direction_to_json(ap, d), **cls.to_json()} for d, cls in dirs]}
        lines = [f"{'#':>3}  {'C':<12} {'D':<12} {'T':<12}"]
        for k, (_, cls) in enumerate(dirs, start=1):
            lines.append(f"{k:>3}  {format_subset(cls.C):<12} {format_subset(cls.D):<12} "
                         f"{format_subset(cls.T):<12}")
        lines.append(f"({len(dirs)} directions)")
        _emit(args, payload, lines)
        return EXIT_OK
    if kind == "eulerian":
        family = medial.eulerian_sets(ap)
    elif kind == "even-face":
        family = medial.even_face_sets(ap)
    else:
        if not is_orientable(ap):
            raise InputError("bipartite enumeration needs an orientable graph")
        family = {cls.C for _, cls in enumerate_all_crossing(ap)}
    n = len(family)
    line = f"{V.fmt_family(family)} ({n} set{'s' if n != 1 else ''})"
    _emit(args, {"kind": kind, "count": n, "sets": _family_json(family)}, [line])
    return EXIT_OK


def _verification_targets(args) -> list[tuple[str, ArrowPresentation]]:
    if args.all_fixtures:
        return [(fx.name, fx.ap) for fx in V.fixtures()]
    if args.exhaustive is not None:
        if args.exhaustive > 4:
            raise InputError("--exhaustive is limited to 4 edges")
        return [(f"exhaustive#{k}", ap) for k, ap in enumerate(V.generate_catalog(args.exhaustive))]
    if args.random is not None:
        corpus = V.random_corpus(args.random, min(args.max_edges, 8), args.seed)
        return [(f"random#{k}", ap) for k, ap in enumerate(corpus)]
    return [(args.input, _load(args))]


def _verify_job(job: tuple[str, str | None, ArrowPresentation, int, bool]) -> VerificationReport:
    name, fixture, ap, seed, fault = job
    medial.FAULT_SWAP_CD = fault
    if fixture is not None:
        return V.verify_fixture(V.load_fixture(fixture))
    return V.verify_instance(ap, name, seed=seed)


def _run_jobs(jobs: list) -> list[VerificationReport]:
    """Reports in job order; instances are spread over worker processes."""
    workers = min(len(jobs), os.cpu_count() or 1)
    if workers <= 1:
        return [_verify_job(j) for j in jobs]
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_verify_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    except (OSError, PermissionError):
        return [_verify_job(j) for j in jobs]


def cmd_verify(args) -> int:
    targets = _verification_targets(args)
    fault = medial.FAULT_SWAP_CD
    jobs = [(name, name if args.all_fixtures else None, ap, args.seed, fault) for name, ap in targets]
    report = VerificationReport()
    for part in _run_jobs(jobs):
        report.extend(part)
    payload = report.to_dict()
    payload["instances"] = len(targets)
    lines = report.lines() + [f"{len(targets)} instances: {'PASS' if report.passed else 'FAIL'}"]
    _emit(args, payload, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_fixtures(args) -> int:
    if args.name:
        if args.name not in V.FIXTURE_NAMES:
            raise InputError(f"unknown fixture {args.name!r}")
        fx = V.load_fixture(args.name)
        _emit(args, {"name": fx.name, "arp": serialize(fx.ap), "expected": fx.expected},
              [serialize(fx.ap)])
        return EXIT_OK
    items = V.fixtures()
    _emit(args, [{"name": fx.name, "arp": serialize(fx.ap), "expected": fx.expected} for fx in items],
          [f"{fx.name}: {serialize(fx.ap).replace(chr(10), ' / ')}" for fx in items])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", metavar="FILE", help=".arp file, '-' for stdin, or a fixture name")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-edges", type=int, default=V.MAX_EDGES)
    common.add_argument("--inject-fault", choices=["cd-swap"], help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="ribbongraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[common], help="surface invariants and predicates").set_defaults(func=cmd_info)

    p = sub.add_parser("dual", parents=[common], help="partial dual with respect to --edges")
    p.add_argument("--edges", default="", help="comma-separated labels, or ALL")
    p.set_defaults(func=cmd_dual)

    sub.add_parser("medial", parents=[common], help="transition system and straight-ahead walks"
                   ).set_defaults(func=cmd_medial)

    p = sub.add_parser("enumerate", parents=[common], help="edge-set families and directions")
    p.add_argument("--kind", required=True, choices=["eulerian", "even-face", "bipartite", "ct-directions"])
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run the theorem checks")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all-fixtures", action="store_true")
    group.add_argument("--exhaustive", type=int, metavar="N", help="every graph with at most N edges")
    group.add_argument("--random", type=int, metavar="K", help="K seeded random graphs")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fixtures", parents=[common], help="list or print the bundled fixtures")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    previous = medial.FAULT_SWAP_CD
    medial.FAULT_SWAP_CD = args.inject_fault == "cd-swap"
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        medial.FAULT_SWAP_CD = previous


if __name__ == "__main__":
    sys.exit(main())
