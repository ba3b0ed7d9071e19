"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation error,
3 computation error. Errors go to stderr, as JSON under ``--format json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import bpd
from .bonded import G_MAPS, g_map, nonrigid_invariant, rigid_invariant
from .diagram import BondedDiagram, DiagramError, contact_distance_coloring, natural_key, validate
from .embedding import SceneError, parse_scene, project_embedding
from .homflypt import homfly
from .moves import MoveError, apply_script, isolate_all, parse_script
from .reference import checks, data_names, data_path

__all__ = ["main", "run", "EXIT_OK", "EXIT_USAGE", "EXIT_INPUT", "EXIT_COMPUTE"]

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str, details: list[str] | None = None):
        super().__init__(message)
        self.code = code
        self.details = details or []


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_USAGE, message)


# -- input helpers -------------------------------------------------------------


def _read_text(path: str, stdin: TextIO) -> tuple[str, str]:
    """Text and display name for ``path``; ``-`` reads stdin.

    A missing path whose file name matches a bundled data file resolves
    to the bundled copy, so ``examples/knotB.bpd`` works from any directory.
    """
    if path == "-":
        return stdin.read(), "<stdin>"
    p = Path(path)
    if p.exists():
        return p.read_text(), str(p)
    stem = p.name[:-4] if p.name.endswith(".bpd") else p.name
    if stem in data_names():
        return data_path(stem).read_text(), f"{path} (bundled)"
    raise CliError(EXIT_USAGE, f"no such file: {path}")


def _load_diagram(path: str, stdin: TextIO, *, check: bool = True) -> BondedDiagram:
    text, name = _read_text(path, stdin)
    try:
        if text.lstrip().startswith("{"):
            return bpd.from_json(text)
        return bpd.parse_bpd(text, validate=check)
    except (DiagramError, ValueError, KeyError) as exc:
        raise CliError(EXIT_INPUT, f"{name}: {exc}") from None


def _emit_diagram(d: BondedDiagram, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(bpd.to_json(d), indent=2)
    return bpd.serialize_bpd(d).rstrip("\n")


# -- subcommands ---------------------------------------------------------------


def _cmd_compute(args, stdin) -> str:
    d = _load_diagram(args.file, stdin)
    try:
        if args.coloring == "contact-distance":
            d = d.with_colors(contact_distance_coloring(d, count_destination=args.count_destination))
        el = rigid_invariant(d) if args.basis == "rigid" else nonrigid_invariant(d)
    except DiagramError as exc:
        raise CliError(EXIT_COMPUTE, str(exc)) from None
    if args.format == "json":
        return el.dumps()
    if args.format == "latex":
        return el.latex()
    return str(el)


def _cmd_homfly(args, stdin) -> str:
    d = _load_diagram(args.file, stdin)
    try:
        p = homfly(d)
    except DiagramError as exc:
        raise CliError(EXIT_COMPUTE, str(exc)) from None
    if args.format == "json":
        return json.dumps({"homfly": str(p)})
    return p.latex() if args.format == "latex" else str(p)


def _cmd_isolate(args, stdin) -> str:
    d = _load_diagram(args.file, stdin)
    try:
        return _emit_diagram(isolate_all(d), args.format)
    except DiagramError as exc:
        raise CliError(EXIT_COMPUTE, str(exc)) from None


def _cmd_apply_moves(args, stdin) -> str:
    d = _load_diagram(args.file, stdin)
    text, name = _read_text(args.script, stdin)
    try:
        script = parse_script(text)
    except MoveError as exc:
        raise CliError(EXIT_INPUT, f"{name}: {exc}") from None
    try:
        out = apply_script(d, script)
    except DiagramError as exc:
        raise CliError(EXIT_COMPUTE, str(exc)) from None
    return _emit_diagram(out, args.format)


def _cmd_validate(args, stdin) -> str:
    d = _load_diagram(args.file, stdin, check=False)
    problems = validate(d)
    if problems:
        raise CliError(EXIT_INPUT, f"{len(problems)} violation(s) in {args.file}", problems)
    if args.format == "json":
        return json.dumps({"valid": True, "problems": []})
    return "ok"


def _cmd_project(args, stdin) -> str:
    text, name = _read_text(args.scene, stdin)
    direction = None
    if args.direction:
        try:
            direction = [float(t) for t in args.direction.split(",")]
        except ValueError:
            raise CliError(EXIT_USAGE, "--direction takes three comma-separated numbers") from None
        if len(direction) != 3:
            raise CliError(EXIT_USAGE, "--direction takes three comma-separated numbers")
    try:
        scene = parse_scene(text)
    except SceneError as exc:
        raise CliError(EXIT_INPUT, f"{name}: {exc}") from None
    try:
        d = project_embedding(scene, seed=args.seed, direction=direction)
    except SceneError as exc:
        raise CliError(EXIT_COMPUTE, str(exc)) from None
    return _emit_diagram(d, args.format)


def _cmd_color(args, stdin) -> str:
    d = _load_diagram(args.file, stdin)
    try:
        colors = contact_distance_coloring(d, count_destination=args.count_destination)
    except DiagramError as exc:
        raise CliError(EXIT_COMPUTE, str(exc)) from None
    if args.format == "json":
        return json.dumps({"coloring": colors, "count_destination": args.count_destination}, indent=2)
    rows = ["bond\tcolor"] + [f"{b}\t{colors[b]}" for b in sorted(colors, key=natural_key)]
    return "\n".join(rows)


def _cmd_gmap(args, stdin) -> str:
    d = _load_diagram(args.file, stdin)
    if args.bond not in d.colors:
        raise CliError(EXIT_INPUT, f"no bond {args.bond!r} in {args.file}")
    try:
        out = g_map(d, args.bond, args.kind)
    except DiagramError as exc:
        raise CliError(EXIT_COMPUTE, str(exc)) from None
    if out is None:
        return json.dumps({"zero": True}) if args.format == "json" else "zero"
    return _emit_diagram(out, args.format)


def _cmd_selftest(args, stdin) -> str:
    results = list(checks(include_performance=not args.quick))
    failed = [c for c in results if not c.ok]
    if args.format == "json":
        body = json.dumps(
            [{"criterion": c.criterion, "name": c.name, "ok": c.ok, "detail": c.detail} for c in results],
            indent=2,
        )
    else:
        body = "\n".join(c.line() for c in results)
    if failed:
        raise CliError(EXIT_COMPUTE, f"{len(failed)} of {len(results)} checks failed", [body])
    return body


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")

    p = _Parser(prog="bondskein", description="HOMFLYPT skein-module invariants of colored bonded links.")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("compute", parents=[common], help="invariant in the rigid or non-rigid basis")
    c.add_argument("--basis", choices=("rigid", "nonrigid"), required=True)
    c.add_argument("--coloring", choices=("file", "contact-distance"), default="file")
    c.add_argument("--count-destination", action="store_true", help="contact distance also counts the far endpoint")
    c.add_argument("file")
    c.set_defaults(fn=_cmd_compute)

    for name, fn, helptext in (
        ("homfly", _cmd_homfly, "HOMFLYPT polynomial of a bond-free diagram"),
        ("isolate", _cmd_isolate, "move every bond off its crossings"),
        ("validate", _cmd_validate, "report structural problems"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
        s.set_defaults(fn=fn)

    a = sub.add_parser("apply-moves", parents=[common], help="apply a move script")
    a.add_argument("file")
    a.add_argument("script")
    a.set_defaults(fn=_cmd_apply_moves)

    pr = sub.add_parser("project", parents=[common], help="diagram of a 3D polyline scene")
    pr.add_argument("scene")
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--direction", help="fixed view direction x,y,z")
    pr.set_defaults(fn=_cmd_project)

    co = sub.add_parser("color", parents=[common], help="contact-distance coloring table")
    co.add_argument("--count-destination", action="store_true", help="also count the far endpoint")
    co.add_argument("file")
    co.set_defaults(fn=_cmd_color)

    g = sub.add_parser("gmap", parents=[common], help="apply a g-map to one bond")
    g.add_argument("--kind", choices=G_MAPS, required=True)
    g.add_argument("--bond", required=True)
    g.add_argument("file")
    g.set_defaults(fn=_cmd_gmap)

    st = sub.add_parser("selftest", parents=[common], help="evaluate the bundled reference fixtures")
    st.add_argument("--quick", action="store_true", help="skip the timing check")
    st.set_defaults(fn=_cmd_selftest)
    return p


def _report(err: CliError, fmt: str, stderr: TextIO) -> None:
    if fmt == "json":
        payload = {"error": {"code": err.code, "message": str(err), "details": err.details}}
        print(json.dumps(payload, indent=2), file=stderr)
        return
    print(f"bondskein: error: {err}", file=stderr)
    for line in err.details:
        print(f"  {line}", file=stderr)


def run(
    argv: Sequence[str] | None = None,
    *,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
    stdin: TextIO | None = None,
) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "--format=json" in argv or any(
        a == "--format" and b == "json" for a, b in zip(argv, argv[1:])
    ) else "text"
    try:
        args = build_parser().parse_args(argv)
    except CliError as err:
        _report(err, fmt, stderr)
        return err.code
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        out = args.fn(args, stdin)
    except CliError as err:
        _report(err, args.format, stderr)
        return err.code
    except RecursionError:
        _report(CliError(EXIT_COMPUTE, "recursion limit reached"), args.format, stderr)
        return EXIT_COMPUTE
    print(out, file=stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
