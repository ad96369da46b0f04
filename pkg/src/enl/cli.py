"""Command-line entry point: ``enl check | construct | solve``."""

from __future__ import annotations

import argparse
import json
import sys

from .bundle import dumps, parse_bundle
from .errors import ENLError
from .tasks import CONSTRUCTS, emit_report, exit_code, run_all, run_task


def _load(path):
    with open(path, "rb") as fh:
        return parse_bundle(fh.read())


def merged_outputs(bundle_text, outputs: dict) -> dict:
    """Input entity sections plus constructed outputs, so the result parses on its own."""
    doc = {k: dict(v) for k, v in json.loads(bundle_text).items() if k != "tasks"}
    for section, entries in outputs.items():
        doc.setdefault(section, {}).update(entries)
    return doc


def _kv(items):
    """``key=value`` pairs; values are read as JSON when possible, else as strings."""
    out = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise SystemExit(f"enl: expected key=value, got {item!r}")
        try:
            out[key] = json.loads(raw)
        except json.JSONDecodeError:
            out[key] = raw
    return out


def _write(data: bytes, path):
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def cmd_check(args) -> int:
    b = _load(args.bundle)
    reports = [run_task(b, args.task)] if args.task else run_all(b)
    _write(emit_report(reports, args.format, args.timing), None)
    return exit_code(reports)


def _run_construct(path, task, out, fmt) -> int:
    with open(path, "rb") as fh:
        text = fh.read()
    report = run_task(parse_bundle(text), task)
    if report.status != "ERROR":
        _write(dumps(merged_outputs(text, report.outputs)).encode("utf-8"), out)
    sys.stderr.write(emit_report([report], fmt).decode("utf-8"))
    return exit_code([report])


def cmd_construct(args) -> int:
    task = dict(_kv(args.params), kind=args.kind, name=args.kind)
    return _run_construct(args.bundle, task, args.out, args.format)


def cmd_solve(args) -> int:
    task = {"kind": "centroid", "name": "centroid", "algebra": args.algebra}
    return _run_construct(args.bundle, task, args.out, args.format)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="enl", description="Exact checks for Lie algebras with "
                                "equivariant Nijenhuis operators.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the tasks of a bundle")
    c.add_argument("bundle")
    c.add_argument("--task", help="run a single named task")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--timing", action="store_true", help="include wall time in json reports")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("construct", help="build a derived structure and write it as a bundle")
    k.add_argument("kind", choices=sorted(CONSTRUCTS))
    k.add_argument("params", nargs="*", metavar="key=value")
    k.add_argument("bundle")
    k.add_argument("--out", default="-")
    k.add_argument("--format", choices=("text", "json"), default="text")
    k.set_defaults(func=cmd_construct)

    s = sub.add_parser("solve", help="solve linear problems over a bundle")
    s.add_argument("problem", choices=("centroid",))
    s.add_argument("--algebra", required=True)
    s.add_argument("bundle")
    s.add_argument("--out", default="-")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_solve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ENLError as exc:
        sys.stderr.write(f"ERROR {type(exc).__name__}: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"ERROR {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
