"""Command-line front end.  Every invocation prints one JSON report.

Exit codes: 0 success or check passed, 1 check failed, 2 input error, 3 resource guard.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .borel import borel_compare
from .chains import Ring
from .complex import relative_complex
from .errors import ResourceGuardError, SymSqError
from .formats import cell_json, chain_to_json, load_chain, load_complex, load_map
from .homology import homology
from .product import Tower
from .squaring import (SCHEMA, compat_check, fundamental_square_check, half_square_check, naturality_check,
                       sym_square_class, well_definedness_check)

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
DEFAULT_LEVEL_CAP = 2


class UsageError(SymSqError):
    """Arguments that parse but make no sense together."""


def _ring(value: str) -> Ring:
    try:
        return Ring.parse(value)
    except SymSqError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _degrees(value: str) -> list[int]:
    try:
        out = [int(x) for x in value.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"degrees must be comma-separated integers, got {value!r}") from None
    if not out or any(d < 0 for d in out):
        raise argparse.ArgumentTypeError("degrees must be non-negative")
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cell-cap", type=int, help="resource cap on cell counts (default: $SYMSQ_CELL_CAP or 5e6)")
    common.add_argument("--level-cap", type=int, default=DEFAULT_LEVEL_CAP, help="largest tower level allowed")

    p = argparse.ArgumentParser(prog="symsq", description="Symmetric squares of simplicial pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    h = sub.add_parser("homology", parents=[common], help="homology of a complex or pair")
    h.add_argument("complex")
    h.add_argument("--rel", help="label of the subcomplex to divide out")
    h.add_argument("--ring", type=_ring, default=Ring.Z)
    h.add_argument("--dim", type=int)

    s = sub.add_parser("symsq", parents=[common], help="symmetric square of a relative cycle")
    s.add_argument("complex")
    s.add_argument("chain")
    s.add_argument("--rel")
    s.add_argument("--ring", type=_ring, default=Ring.Z)
    s.add_argument("--level", type=int, default=0)

    c = sub.add_parser("check", help="theorem checks")
    checks = c.add_subparsers(dest="check", required=True)
    hs = checks.add_parser("half-square", parents=[common])
    hs.add_argument("complex")
    hs.add_argument("chain")
    hs.add_argument("--rel")
    hs.add_argument("--ring", type=_ring, default=Ring.Z)
    hs.add_argument("--level", type=int, default=0)

    wd = checks.add_parser("well-defined", parents=[common])
    wd.add_argument("complex")
    wd.add_argument("chain")
    wd.add_argument("perturbation", help="chain w; the check compares z with z + dw")
    wd.add_argument("--rel")
    wd.add_argument("--ring", type=_ring, default=Ring.Z)
    wd.add_argument("--level", type=int, default=1, help="finest tower level to compute")

    nat = checks.add_parser("naturality", parents=[common])
    nat.add_argument("map")
    nat.add_argument("chain")
    nat.add_argument("--ring", type=_ring, default=Ring.Z2)
    nat.add_argument("--level", type=int, default=0)

    cp = checks.add_parser("compat", parents=[common])
    cp.add_argument("map")
    cp.add_argument("--ring", type=_ring, default=Ring.Z)
    cp.add_argument("--level", type=int, default=0)

    fs = checks.add_parser("fund-square", parents=[common])
    fs.add_argument("complex")
    fs.add_argument("--ring", type=_ring, default=Ring.Z2)
    fs.add_argument("--level", type=int, default=0)

    b = sub.add_parser("borel-compare", parents=[common], help="Borel construction against the symmetric square")
    b.add_argument("complex")
    b.add_argument("--sphere", type=int, required=True)
    b.add_argument("--degrees", type=_degrees, required=True)
    b.add_argument("--rel")
    b.add_argument("--level", type=int, default=0)
    return p


def _pair(args):
    K, subs = load_complex(args.complex)
    label = getattr(args, "rel", None)
    if label is None:
        return K, None
    if label not in subs:
        raise UsageError(f"unknown subcomplex label {label!r}; available: {sorted(subs)}")
    return K, subs[label]


def _chain(path, ring: Ring):
    z = load_chain(path)
    if z.ring is not ring:
        raise UsageError(f"chain file is over {z.ring.value} but --ring is {ring.value}")
    return z


def _check_level(level: int, cap: int, extra: int = 0):
    if level < 0:
        raise UsageError("level must be non-negative")
    if level + extra > cap:
        raise UsageError(f"level {level + extra} exceeds the level cap {cap}")


def _homology_entry(C, k: int) -> dict:
    H = homology(C, k)
    return {"dim": k, "betti": H.betti, "torsion": H.torsion}


def cmd_homology(args) -> tuple[dict, int]:
    K, A = _pair(args)
    C = relative_complex(K, A, args.ring)
    report = {"command": "homology", "ring": args.ring.value, "complex": K.name}
    if args.dim is not None:
        entry = _homology_entry(C, args.dim)
        report.update(betti=entry["betti"], torsion=entry["torsion"], dim=args.dim)
    else:
        report["groups"] = [_homology_entry(C, k) for k in range(K.dim + 1)]
    return report, EXIT_OK


def cmd_symsq(args) -> tuple[dict, int]:
    _check_level(args.level, args.level_cap)
    K, A = _pair(args)
    z = _chain(args.chain, args.ring)
    tower = Tower(K, A, args.ring, args.cell_cap)
    lvl = tower.level(args.level)
    cls = sym_square_class(tower.lift(z, args.level), lvl.quotient)
    free, tors = cls.coordinates()
    return {"command": "symsq", "ring": args.ring.value, "level": args.level, "degree": cls.degree,
            "chain": chain_to_json(cls.chain), "orbit_cells": [cell_json(c) for c, _ in cls.chain],
            "coordinates": {"free": free, "torsion": tors},
            "group": {"betti": cls.homology.betti, "torsion": cls.homology.torsion}}, EXIT_OK


def cmd_check(args) -> tuple[dict, int]:
    name = args.check
    _check_level(args.level, args.level_cap)
    if name == "half-square":
        K, A = _pair(args)
        z = _chain(args.chain, args.ring)
        tower = Tower(K, A, args.ring, args.cell_cap)
        report = half_square_check(tower.lift(z, args.level), tower.level(args.level).quotient)
        report.level = args.level
    elif name == "well-defined":
        K, A = _pair(args)
        z, w = _chain(args.chain, args.ring), _chain(args.perturbation, args.ring)
        report = well_definedness_check(z, w, K, A, levels=args.level, tower=Tower(K, A, args.ring, args.cell_cap))
    elif name == "naturality":
        f, src, tgt = load_map(args.map)
        report = naturality_check(f, _chain(args.chain, args.ring), src, tgt, level=args.level)
    elif name == "compat":
        f, _, tgt = load_map(args.map)
        report = compat_check(f, args.ring, tgt, level=args.level)
    else:
        K, _ = load_complex(args.complex)
        report = fundamental_square_check(K, args.ring, level=args.level, max_level=args.level_cap,
                                          tower=Tower(K, None, args.ring, args.cell_cap))
    out = report.to_dict()
    out.pop("schema")
    return out, EXIT_OK if report.result else EXIT_FALSE


def cmd_borel(args) -> tuple[dict, int]:
    _check_level(args.level, args.level_cap, extra=1)
    if args.sphere < 0:
        raise UsageError("sphere dimension must be non-negative")
    K, A = _pair(args)
    report = borel_compare(K, args.sphere, args.degrees, args.level, A, args.cell_cap)
    report["command"] = "borel-compare"
    return report, EXIT_OK if report["result"] else EXIT_FALSE


COMMANDS = {"homology": cmd_homology, "symsq": cmd_symsq, "check": cmd_check, "borel-compare": cmd_borel}


def render(report: dict) -> str:
    return json.dumps({"schema": SCHEMA, **report}, sort_keys=True, indent=2) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    saved = os.environ.get("SYMSQ_CELL_CAP")
    if getattr(args, "cell_cap", None) is not None:
        os.environ["SYMSQ_CELL_CAP"] = str(args.cell_cap)
    try:
        report, code = COMMANDS[args.command](args)
    except ResourceGuardError as exc:
        report, code = {"command": args.command, "error": "resource-guard", "message": str(exc)}, EXIT_GUARD
    except SymSqError as exc:
        report, code = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}, EXIT_INPUT
    finally:
        if saved is None:
            os.environ.pop("SYMSQ_CELL_CAP", None)
        else:
            os.environ["SYMSQ_CELL_CAP"] = saved
    text = render(report)
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
