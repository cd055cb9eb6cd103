"""Command-line driver: load data, replay a script, emit SVG and scene dumps.

Exit codes: 0 success, 1 script parse error, 2 replay error, 3 I/O error.
Stdout stays quiet on success; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path

from .errors import DataFileNotFound, ParseError, ReplayError
from .render import RenderConfig, render_svg, serialize_scene
from .script import ReplayConfig, parse_script, replay

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_~-]*\Z")
_CANVAS_RE = re.compile(r"([0-9]+(?:\.[0-9]+)?)x([0-9]+(?:\.[0-9]+)?)\Z")


def _split_data_arg(arg: str) -> tuple[str, str | None]:
    # `path[:name]`; the suffix counts as a name only when it looks like one.
    if ":" in arg:
        path, name = arg.rsplit(":", 1)
        if _NAME_RE.match(name):
            return path, name
    return arg, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sketchbind",
        description="Replay a construction script against CSV data and emit SVG.",
    )
    parser.add_argument(
        "--data",
        action="append",
        default=[],
        metavar="CSV[:NAME]",
        help="pre-register a CSV file (repeatable); scripts resolve `load data` "
        "paths against registered paths, basenames and names first",
    )
    parser.add_argument("--script", required=True, metavar="FILE", help="construction script")
    parser.add_argument("--out", metavar="SVG", help="render the final scene here")
    parser.add_argument("--dump", metavar="JSON", help="dump the final scene here")
    parser.add_argument(
        "--max-height",
        type=float,
        default=300.0,
        metavar="PX",
        help="pixel height mapped to a dimension's maximum (default 300)",
    )
    parser.add_argument("--canvas", default="960x540", metavar="WxH", help="canvas size in px")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    match = _CANVAS_RE.match(args.canvas)
    if not match:
        parser.error(f"--canvas expects WxH, got {args.canvas!r}")
    canvas = (float(match.group(1)), float(match.group(2)))

    registry: dict[str, bytes] = {}
    for data_arg in args.data:
        path, name = _split_data_arg(data_arg)
        try:
            payload = Path(path).read_bytes()
        except OSError as err:
            print(f"i/o error: {err}", file=sys.stderr)
            return 3
        registry[path] = payload
        registry[os.path.basename(path)] = payload
        if name:
            registry[name] = payload

    script_path = Path(args.script)
    try:
        text = script_path.read_text(encoding="utf-8")
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 3

    try:
        commands = parse_script(text)
    except ParseError as err:
        print(f"parse error at {err.line}:{err.column}: {err.message}", file=sys.stderr)
        return 1

    config = ReplayConfig(
        target_max_px=args.max_height,
        canvas_size=canvas,
        data_registry=registry,
        base_dir=script_path.parent,
    )
    try:
        result = replay(commands, config)
    except ReplayError as err:
        if isinstance(err.cause, DataFileNotFound):
            print(f"i/o error: {err.cause}", file=sys.stderr)
            return 3
        print(f"replay error at command {err.index}: {err.cause}", file=sys.stderr)
        return 2

    try:
        for path, payload in result.outputs:
            Path(path).write_bytes(payload)
        if args.out:
            Path(args.out).write_bytes(
                render_svg(result.scene, RenderConfig(canvas_size=canvas))
            )
        if args.dump:
            Path(args.dump).write_bytes(serialize_scene(result.scene))
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
