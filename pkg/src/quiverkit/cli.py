"""Command-line interface: ``quiverkit <command> [--input PATH | --inline JSON]``.

Exit codes: 0 success, 2 malformed input, 3 unrealizable rank conditions,
4 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import acceptance
from .lace import (
    LaceDiagram,
    RankConditions,
    all_orbits,
    codim,
    diagram_length,
    enumerate_kms,
    enumerate_minimal,
    rank_conditions,
)
from .polyring import BETA, Poly, substitute
from .quiver import component_polynomial, k_class, quiver_coefficients, verify_thom

log = logging.getLogger("quiverkit")

COMMANDS = ("orbits", "diagrams", "kms", "tp", "coeffs", "verify", "kclass", "selftest")


class InputError(Exception):
    """Malformed command input (exit code 2)."""


class Unrealizable(Exception):
    """Rank conditions with negative strand counts (exit code 3)."""


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverkit", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="JSON input file")
    src.add_argument("--inline", metavar="JSON", help="JSON input given on the command line")
    p.add_argument("--output", metavar="PATH", help="write the result here instead of stdout")
    p.add_argument("--max-degree", type=int, default=None, metavar="N",
                   help="refuse orbits of codimension above N")
    p.add_argument("--beta", choices=("keep", "zero"), default="keep",
                   help="for kclass: keep beta or set it to 0")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _threads() -> int:
    raw = os.environ.get("QUIVERKIT_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"QUIVERKIT_THREADS must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError("QUIVERKIT_THREADS must be at least 1")
    return value


def _load(args) -> object:
    if args.inline is not None:
        text = args.inline
    elif args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from None
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def parse_dims(data) -> tuple:
    if isinstance(data, dict):
        data = data.get("dims")
    if not isinstance(data, list) or not data or not all(isinstance(e, int) and e >= 0 for e in data):
        raise InputError("expected a dimension vector such as [1, 2, 1] or {\"dims\": [...]}")
    return tuple(data)


def parse_orbit(data) -> RankConditions:
    """Rank conditions given directly or through a lace diagram."""
    if not isinstance(data, dict) or "dims" not in data:
        raise InputError("expected an object with \"dims\" and \"ranks\" or \"connections\"")
    try:
        if "connections" in data:
            r = rank_conditions(LaceDiagram.from_json(data))
        elif "ranks" in data:
            r = RankConditions.from_json(data)
        else:
            raise InputError("need either \"ranks\" or \"connections\"")
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    if not r.is_realizable():
        raise Unrealizable(f"rank conditions {r} are not realizable")
    return r


def _diagram_record(d: LaceDiagram) -> dict:
    rec = d.to_json()
    rec["perms"] = [w.to_json() for w in d.perms]
    rec["length"] = diagram_length(d)
    return rec


def _poly_text(f: Poly) -> str:
    return str(f)


def run(args) -> tuple:
    """Execute one command; returns ``(json_document, text)``."""
    _threads()
    if args.command == "selftest":
        lines: list = []
        outcomes = acceptance.run_all(lines.append)
        doc = {
            "status": "pass" if all(o.passed for o in outcomes) else "fail",
            "criteria": [
                {"name": o.name, "status": "pass" if o.passed else "fail",
                 "detail": o.detail, "seconds": round(o.seconds, 3)}
                for o in outcomes
            ],
        }
        return doc, "\n".join(lines)

    data = _load(args)
    if args.command == "orbits":
        dims = parse_dims(data)
        orbits = all_orbits(dims)
        records = [dict(r.to_json(), codim=codim(r)) for r in orbits]
        text = "\n".join(f"{r}  codim={codim(r)}" for r in orbits)
        return {"dims": list(dims), "orbits": records}, text

    r = parse_orbit(data)
    d = codim(r)
    if args.max_degree is not None and d > args.max_degree:
        raise InputError(f"orbit codimension {d} exceeds --max-degree {args.max_degree}")

    if args.command in ("diagrams", "kms"):
        found = enumerate_minimal(r) if args.command == "diagrams" else enumerate_kms(r)
        ordered = sorted(found, key=lambda x: (diagram_length(x), x.dims, x.connections))
        doc = {"orbit": r.to_json(), "codim": d, "diagrams": [_diagram_record(x) for x in ordered]}
        text = "\n".join(f"{' '.join(x.perm_strings())}  length={diagram_length(x)}" for x in ordered)
        return doc, text
    if args.command == "tp":
        f = component_polynomial(r)
        return f.to_json(), _poly_text(f)
    if args.command == "coeffs":
        qc = quiver_coefficients(r)
        text = "\n".join(f"{c} * {list(map(list, lam))}" for lam, c in sorted(qc.coefficients.items()))
        return qc.to_json(), text
    if args.command == "verify":
        report = verify_thom(component_polynomial(r), r)
        doc = report.to_json()
        text = "\n".join(
            f"{rec['condition']:>2} {rec['status']}  {RankConditions.from_json(rec['orbit'])}"
            for rec in report.records
        ) + f"\n{doc['status']}"
        return doc, text
    if args.command == "kclass":
        f = k_class(r)
        if args.beta == "zero":
            f = substitute(f, {BETA: None})
        return f.to_json(), _poly_text(f)
    raise InputError(f"unknown command {args.command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        doc, text = run(args)
    except InputError as exc:
        print(f"quiverkit: {exc}", file=sys.stderr)
        return 2
    except Unrealizable as exc:
        print(f"quiverkit: {exc}", file=sys.stderr)
        return 3
    except (AssertionError, RuntimeError, ArithmeticError) as exc:
        print(f"quiverkit: internal error: {exc}", file=sys.stderr)
        return 4
    out = json.dumps(doc, sort_keys=True) + "\n" if args.format == "json" else text + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    if args.command == "selftest" and doc["status"] != "pass":
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
