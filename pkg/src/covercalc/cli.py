"""Command line entry point ``covercalc``.

Exit status is 0 on success, 1 when an input fails validation or a
certificate fails, and 2 on usage errors.  Errors are written to standard
error as one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from covercalc import crystal
from covercalc.diagram import (
    BraidParseError,
    ClosureViolation,
    ColoringError,
    check_simple_transitive,
    enumerate_colorings,
    parse_braid,
    parse_colored_braid,
)
from covercalc.permcalc import InventoryError, boundary_is_k_cycle, dihedral_rep, euler_char_disk_cover
from covercalc.pipeline import build_tower, final_certificate, prepare, report_json, report_text
from covercalc.rewrite import VARIANTS, RewriteError

VALIDATION_ERRORS = (BraidParseError, ClosureViolation, ColoringError, RewriteError, InventoryError, ValueError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit_error(kind: str, message: str, **extra) -> None:
    record = {"error": kind, "message": message, **extra}
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _braid_text(text: str) -> str:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return " ".join(ln for ln in lines if not ln.startswith("colors="))


def cmd_check(args) -> int:
    cb = parse_colored_braid(_read(args.file))
    rep = check_simple_transitive(cb)
    crossings = cb.crossings()
    tri = sum(c.tricolored for c in crossings)
    print(f"valid coloring: {cb.word}")
    print(f"colors used: {''.join(sorted(c.value for c in rep.colors))}")
    print(f"transitive: {'yes' if rep.transitive else 'no'}")
    print(f"crossings: {len(crossings)} tricolored={tri} monochromatic={len(crossings) - tri}")
    return 0 if rep.transitive else 1


def cmd_enumerate(args) -> int:
    word = parse_braid(_braid_text(_read(args.file)))
    colorings = enumerate_colorings(word)
    for cb in colorings:
        print("".join(c.value for c in cb.top))
    print(f"count={len(colorings)}")
    return 0


def cmd_standardize(args) -> int:
    cb = parse_colored_braid(_read(args.file))
    link, log = prepare(cb, args.variant)
    sys.stdout.write(link.serialize())
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            fh.write(log.serialize())
    else:
        sys.stdout.write("# moves\n")
        sys.stdout.write(log.serialize())
    return 0


def cmd_tower(args) -> int:
    cb = parse_colored_braid(_read(args.file))
    link, _ = prepare(cb, args.variant)
    tower = build_tower(link)
    cert = final_certificate(tower)
    if args.format == "json":
        print(json.dumps(report_json(tower, cert), indent=2, sort_keys=True))
    else:
        sys.stdout.write(report_text(tower, cert))
    return 0 if cert.passed else 1


def cmd_crystal(args) -> int:
    cover = crystal.default_cover()
    idx = crystal.index(cover.uhat, cover.utilde)
    normal = crystal.is_normal(cover.utilde, cover.uhat)
    orbits = crystal.axis_orbits()
    sub = crystal.doubled_borromean_sublink(cover)
    deg = crystal.covering_degree_t(cover)
    print(f"lattice Uhat covolume={cover.uhat.lattice.covolume} basis={list(cover.uhat.lattice.basis)}")
    print(f"lattice Utilde covolume={cover.utilde.lattice.covolume} basis={list(cover.utilde.lattice.basis)}")
    print(f"index={idx}")
    print(f"normal={'yes' if normal else 'no'}")
    pseudo = sum(o.kind == "pseudo" for o in orbits)
    print(f"orbits={len(orbits)} branch={len(orbits) - pseudo} pseudo={pseudo}")
    if args.verbose:
        sys.stdout.write(crystal.orbit_report(cover))
    for pr in sub.pairs:
        print(f"pair {crystal.AXIS_NAMES[pr.pseudo_axis.direction]}: pseudo {pr.pseudo_axis} branch {pr.branch_axis}")
    print(f"sublink certificate {'PASS' if sub.passed else 'FAIL'}")
    for comp in sorted(deg.fibers):
        print(f"degree over X{comp}: {deg.sheets_over(comp)} type {deg.branching_type(comp)}")
    print(f"degree={deg.degree}")
    ok = idx == 27 and not normal and len(orbits) == 15 and sub.passed and deg.degree == 27
    return 0 if ok else 1


def cmd_dihedral(args) -> int:
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    rep = dihedral_rep(args.k)
    chi = euler_char_disk_cover(rep)
    print(f"rho(x)={rep.rho_x}")
    print(f"rho(y)={rep.rho_y}")
    print(f"chi={chi}")
    print(f"boundary={rep.boundary}")
    cycle = boundary_is_k_cycle(rep)
    print(f"boundary {args.k}-cycle: {'yes' if cycle else 'no'}")
    return 0 if chi == 1 and cycle else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="covercalc", description="3-fold simple branched covering calculus")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("check", help="validate a colored braid file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="list the colorings of a braid")
    p.add_argument("file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("standardize", help="standard link and move journal")
    p.add_argument("file")
    p.add_argument("--variant", choices=VARIANTS, default="borromean")
    p.add_argument("--log", help="write the move journal here instead of standard output")
    p.set_defaults(func=cmd_standardize)

    p = sub.add_parser("tower", help="covering tower and certificate")
    p.add_argument("file")
    p.add_argument("--variant", choices=VARIANTS, default="borromean")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("crystal", help="crystallographic certificates")
    p.add_argument("-v", "--verbose", action="store_true", help="list every axis orbit")
    p.set_defaults(func=cmd_crystal)

    p = sub.add_parser("dihedral", help="dihedral disk cover of degree k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_dihedral)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except BrokenPipeError:
        # downstream closed early, e.g. piped into head
        sys.stdout = None
        return 0
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return 2
    except OSError as exc:
        _emit_error("io", str(exc))
        return 1
    except VALIDATION_ERRORS as exc:
        extra = {"position": exc.position} if isinstance(exc, BraidParseError) else {}
        _emit_error(type(exc).__name__, str(exc), **extra)
        return 1


if __name__ == "__main__":
    sys.exit(main())
