"""Command-line front end.

Exit codes: 0 success, 1 at least one error diagnostic, 2 usage or I/O error.
Artifacts go to stdout (or ``--output``); diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .flow import check_flows
from .model import AcmeError, Diagnostic
from .parser import parse
from .printer import emit_text
from .sadg import build_sadg, emit_dot, emit_json
from .slicer import DIRECTIONS, project_slice, resolve_criterion, slice_graph
from .validate import validate

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_USAGE = 2

FORMATS = ("text", "dot", "json")
_DEFAULT_FORMAT = {"parse": "text", "validate": "text", "graph": "dot", "slice": "text"}
_ALLOWED_FORMATS = {
    "parse": ("text",),
    "validate": ("text",),
    "graph": ("dot", "json"),
    "slice": FORMATS,
}


@dataclass
class CliConfig:
    command: str
    input_path: Path
    output_path: Path | None = None
    format: str | None = None
    element: str | None = None
    ifaces: str | None = None
    direction: str = "backward"


class _UsageError(Exception):
    pass


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acmeslice",
        description="Dependence analysis and slicing of ACME architectural descriptions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", type=Path, help="ACME file to read")
        p.add_argument("-o", "--output", type=Path, help="write the result here instead of stdout")
        p.add_argument("--format", choices=FORMATS, help="output format")

    common(sub.add_parser("parse", help="parse and print the canonical text"))
    common(sub.add_parser("validate", help="report referential and flow diagnostics"))
    common(sub.add_parser("graph", help="print the dependence graph (dot or json)"))
    slice_p = sub.add_parser("slice", help="slice the description on a criterion")
    common(slice_p)
    slice_p.add_argument("--element", required=True, help="component or connector name")
    slice_p.add_argument(
        "--ifaces", required=True, help="comma-separated port or role names of the element"
    )
    slice_p.add_argument("--direction", choices=DIRECTIONS, default="backward")
    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        input_path=args.input,
        output_path=args.output,
        format=args.format,
        element=getattr(args, "element", None),
        ifaces=getattr(args, "ifaces", None),
        direction=getattr(args, "direction", "backward"),
    )


def _report(diags: Sequence[Diagnostic], path: Path, err: TextIO) -> None:
    for diag in diags:
        print(f"{path}:{diag}", file=err)


def _has_errors(diags: Sequence[Diagnostic]) -> bool:
    return any(d.is_error for d in diags)


def _render(config: CliConfig, err: TextIO) -> tuple[int, str | None]:
    fmt = config.format or _DEFAULT_FORMAT[config.command]
    if fmt not in _ALLOWED_FORMATS[config.command]:
        allowed = " or ".join(_ALLOWED_FORMATS[config.command])
        raise _UsageError(f"'{config.command}' supports --format {allowed}, not {fmt}")
    try:
        source = config.input_path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _UsageError(f"cannot read {config.input_path}: {exc}") from exc

    path = config.input_path
    try:
        desc = parse(source)
        if config.command == "parse":
            return EXIT_OK, emit_text(desc)

        diags = validate(desc)
        if config.command == "validate":
            if not _has_errors(diags):
                diags += check_flows(desc)
            _report(diags, path, err)
            return (EXIT_DIAGNOSTICS if _has_errors(diags) else EXIT_OK), None

        if config.command == "slice":
            ifaces = [s.strip() for s in (config.ifaces or "").split(",") if s.strip()]
            criterion = resolve_criterion(desc, config.element or "", ifaces)
        _report(diags, path, err)
        if _has_errors(diags):
            return EXIT_DIAGNOSTICS, None
        g = build_sadg(desc)
        _report(g.warnings, path, err)
        if config.command == "graph":
            return EXIT_OK, emit_dot(g) if fmt == "dot" else emit_json(g)

        s = slice_graph(g, criterion, config.direction)
        sliced = project_slice(desc, s)
        if fmt == "text":
            return EXIT_OK, emit_text(sliced)
        if fmt == "dot":
            return EXIT_OK, emit_dot(g, s.vertices)
        bundle = {
            "criterion": {
                "element": criterion.element,
                "ifaces": list(criterion.ifaces),
                "direction": s.direction,
            },
            "sliceVertices": sorted(v.label for v in s.vertices),
            "description": emit_text(sliced),
        }
        return EXIT_OK, json.dumps(bundle, indent=2)
    except AcmeError as exc:
        _report(exc.diagnostics, path, err)
        return EXIT_DIAGNOSTICS, None


def run(config: CliConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one command; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        code, artifact = _render(config, err)
        if artifact is not None:
            if not artifact.endswith("\n"):
                artifact += "\n"
            if config.output_path is None:
                out.write(artifact)
            else:
                config.output_path.write_text(artifact, encoding="utf-8")
    except _UsageError as exc:
        print(f"acmeslice: error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"acmeslice: error: cannot write {config.output_path}: {exc}", file=err)
        return EXIT_USAGE
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_arg_parser().parse_args(argv)
    return run(config_from_args(args))


def entry_point() -> None:
    sys.exit(main())
