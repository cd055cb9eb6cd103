"""The construction-script DSL: parsing, canonical formatting, and replay.

A script records authoring gestures, one command per non-blank, non-comment
line (``#`` starts a comment, except that ``#`` followed by exactly six hex
digits is a color literal). It is not a programming language: no variables,
loops, or expressions.

Supported commands
------------------
``load data PATH as NAME``
    Ingest a CSV file as a named dataset.
``draw stroke ID [(x,y),(x,y),...] [closed] [stroke #RRGGBB] [width N]``
    Create an inert object from a polyline.
``apply fill #RRGGBB ID`` / ``apply strokecolor #RRGGBB ID`` / ``apply shape ID``
    One-shot transient modifiers.
``attach KIND ID`` / ``detach KIND ID``
    KIND is a persistent modifier (label, height, width) or an activator
    (ink, push, replicate, distribute, sort).
``map DATASET.DIM -> ID.CHANNEL``
    Bind a dimension to a persistent modifier (label/height/width) or to a
    sort tool (CHANNEL = sort). Dotted or spaced dimension names must be
    double-quoted: ``map trees."avg.height" -> s1.height``.
``move ID by (dx,dy)`` / ``move ID along [(x,y),...]``
    Translate an object; activators on it contribute side effects.
``drag ID.replicate by N``
    Pull the replicate handle N pixels to the right.
``drag ID.distribute left|right to N``
    Move one distribute handle to axis position N.
``tap ID.sort``
    Flip the sort direction.
``scale maxheight N``
    Set the pixel size mapped to a dimension's maximum (default 300).
``render PATH`` / ``dump PATH``
    Emit SVG / the canonical scene serialization.

Parsing is fail-fast: the first offense raises :class:`ParseError` with a
1-based line and column. Replay is fail-fast too and deterministic:
identical (script, CSV bytes, config) inputs produce byte-identical scene
dumps and SVG.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from . import activators as activators_ops
from . import modifiers as modifiers_ops
from . import scene as scene_ops
from . import tabular
from .errors import DataFileNotFound, KernelError, ParseError, ReplayError
from .modifiers import TransientModifier
from .render import RenderConfig, render_svg, serialize_scene
from .scene import Point, Scene

# -- commands --------------------------------------------------------------------


@dataclass(frozen=True)
class LoadData:
    path: str
    name: str


@dataclass(frozen=True)
class DrawStroke:
    id: str
    points: tuple[Point, ...]
    closed: bool = False
    stroke_color: str | None = None
    stroke_width: float | None = None


@dataclass(frozen=True)
class ApplyTransient:
    id: str
    modifier: TransientModifier


@dataclass(frozen=True)
class AttachPersistent:
    id: str
    kind: str


@dataclass(frozen=True)
class DetachPersistent:
    id: str
    kind: str


@dataclass(frozen=True)
class MapDimension:
    id: str
    kind: str
    dataset: str
    dimension: str


@dataclass(frozen=True)
class AttachActivator:
    id: str
    kind: str


@dataclass(frozen=True)
class DetachActivator:
    id: str
    kind: str


@dataclass(frozen=True)
class MoveObject:
    id: str
    delta: Point | None = None
    path: tuple[Point, ...] | None = None


@dataclass(frozen=True)
class ReplicateDrag:
    id: str
    dx: float


@dataclass(frozen=True)
class DistributeDrag:
    id: str
    handle: str  # "left" | "right"
    axis_pos: float


@dataclass(frozen=True)
class SortMap:
    id: str
    dataset: str
    dimension: str


@dataclass(frozen=True)
class SortToggle:
    id: str


@dataclass(frozen=True)
class SetScale:
    target_max_px: float


@dataclass(frozen=True)
class Render:
    path: str


@dataclass(frozen=True)
class DumpScene:
    path: str


Command = Union[
    LoadData,
    DrawStroke,
    ApplyTransient,
    AttachPersistent,
    DetachPersistent,
    MapDimension,
    AttachActivator,
    DetachActivator,
    MoveObject,
    ReplicateDrag,
    DistributeDrag,
    SortMap,
    SortToggle,
    SetScale,
    Render,
    DumpScene,
]

_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_~-]*")
_NUMBER_RE = re.compile(r"[+-]?[0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?")
_COLOR_RE = re.compile(r"#[0-9a-fA-F]{6}(?![0-9a-zA-Z])")
_RAW_RE = re.compile(r"[^\s]+")

_PERSISTENT = ("label", "height", "width")
_ACTIVATORS = ("ink", "push", "replicate", "distribute", "sort")


# -- scanner ------------------------------------------------------------------------


class _Scanner:
    """Cursor over one script line; every take_* records the token's column."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line_no = line_no
        self.pos = 0
        self.token_col = 1

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self._skip_ws()
        if self.pos >= len(self.text):
            return True
        # '#RRGGBB' is a color token; any other '#' opens a comment.
        if self.text[self.pos] == "#" and not _COLOR_RE.match(self.text, self.pos):
            return True
        return False

    def fail(self, message: str, token: str | None = None, column: int | None = None):
        if token is None:
            remainder = self.text[self.pos :].strip()
            token = remainder.split()[0] if remainder else "<end of line>"
        raise ParseError(self.line_no, column or self.pos + 1, message, token)

    def _match(self, pattern: re.Pattern, what: str) -> str:
        self._skip_ws()
        self.token_col = self.pos + 1
        m = pattern.match(self.text, self.pos)
        if not m:
            self.fail(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def take_word(self, what: str = "a word") -> str:
        return self._match(_WORD_RE, what)

    def take_word_exact(self, expected: str) -> str:
        word = self.take_word(f"'{expected}'")
        if word != expected:
            self.fail(f"expected '{expected}'", token=word, column=self.token_col)
        return word

    def try_word(self, expected: str) -> bool:
        saved = self.pos
        self._skip_ws()
        m = _WORD_RE.match(self.text, self.pos)
        if m and m.group() == expected:
            self.token_col = self.pos + 1
            self.pos = m.end()
            return True
        self.pos = saved
        return False

    def take_number(self) -> float:
        return float(self._match(_NUMBER_RE, "a number"))

    def take_color(self) -> str:
        return self._match(_COLOR_RE, "a color like #rrggbb")

    def take_punct(self, symbol: str) -> None:
        self._skip_ws()
        self.token_col = self.pos + 1
        if not self.text.startswith(symbol, self.pos):
            self.fail(f"expected '{symbol}'")
        self.pos += len(symbol)

    def try_punct(self, symbol: str) -> bool:
        saved = self.pos
        self._skip_ws()
        if self.text.startswith(symbol, self.pos):
            self.pos += len(symbol)
            return True
        self.pos = saved
        return False

    def peek_char(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_quoted(self) -> str:
        self._skip_ws()
        self.token_col = self.pos + 1
        if self.peek_char() != '"':
            self.fail("expected a quoted string")
        self.pos += 1
        out = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                if self.pos + 1 >= len(self.text):
                    self.fail("dangling escape", column=self.pos + 1)
                out.append(self.text[self.pos + 1])
                self.pos += 2
            elif ch == '"':
                self.pos += 1
                return "".join(out)
            else:
                out.append(ch)
                self.pos += 1
        self.fail("unterminated quoted string", column=self.token_col)

    def take_path(self) -> str:
        self._skip_ws()
        if self.peek_char() == '"':
            return self.take_quoted()
        return self._match(_RAW_RE, "a path")

    def take_point(self) -> Point:
        self.take_punct("(")
        x = self.take_number()
        self.take_punct(",")
        y = self.take_number()
        self.take_punct(")")
        return (x, y)

    def take_pointlist(self) -> tuple[Point, ...]:
        self.take_punct("[")
        points = [self.take_point()]
        while self.try_punct(","):
            points.append(self.take_point())
        self.take_punct("]")
        return tuple(points)

    def take_dimref(self) -> str:
        if self.peek_char() == '"':
            return self.take_quoted()
        return self.take_word("a dimension name")


# -- parsing ------------------------------------------------------------------------


def _parse_load(sc: _Scanner) -> Command:
    sc.take_word_exact("data")
    path = sc.take_path()
    sc.take_word_exact("as")
    return LoadData(path=path, name=sc.take_word("a dataset name"))


def _parse_draw(sc: _Scanner) -> Command:
    sc.take_word_exact("stroke")
    object_id = sc.take_word("an object id")
    points = sc.take_pointlist()
    closed = sc.try_word("closed")
    color = sc.take_color() if sc.try_word("stroke") else None
    width = sc.take_number() if sc.try_word("width") else None
    return DrawStroke(
        id=object_id, points=points, closed=closed, stroke_color=color, stroke_width=width
    )


def _parse_apply(sc: _Scanner) -> Command:
    kind = sc.take_word("a transient modifier (fill, strokecolor, shape)")
    if kind not in ("fill", "strokecolor", "shape"):
        sc.fail(f"unknown transient modifier {kind!r}", token=kind, column=sc.token_col)
    color = sc.take_color() if kind in ("fill", "strokecolor") else None
    object_id = sc.take_word("an object id")
    return ApplyTransient(id=object_id, modifier=TransientModifier(kind=kind, color=color))


def _parse_attach(sc: _Scanner) -> Command:
    kind = sc.take_word("a modifier or activator kind")
    kind_col = sc.token_col
    object_id = sc.take_word("an object id")
    if kind in _PERSISTENT:
        return AttachPersistent(id=object_id, kind=kind)
    if kind in _ACTIVATORS:
        return AttachActivator(id=object_id, kind=kind)
    sc.fail(f"unknown kind {kind!r}", token=kind, column=kind_col)


def _parse_detach(sc: _Scanner) -> Command:
    kind = sc.take_word("a modifier or activator kind")
    kind_col = sc.token_col
    object_id = sc.take_word("an object id")
    if kind in _PERSISTENT:
        return DetachPersistent(id=object_id, kind=kind)
    if kind in _ACTIVATORS:
        return DetachActivator(id=object_id, kind=kind)
    sc.fail(f"unknown kind {kind!r}", token=kind, column=kind_col)


def _parse_map(sc: _Scanner) -> Command:
    dataset = sc.take_word("a dataset name")
    sc.take_punct(".")
    dimension = sc.take_dimref()
    sc.take_punct("->")
    object_id = sc.take_word("an object id")
    sc.take_punct(".")
    channel = sc.take_word("a channel (label, height, width, sort)")
    if channel == "sort":
        return SortMap(id=object_id, dataset=dataset, dimension=dimension)
    if channel in _PERSISTENT:
        return MapDimension(id=object_id, kind=channel, dataset=dataset, dimension=dimension)
    sc.fail(f"unknown map channel {channel!r}", token=channel, column=sc.token_col)


def _parse_move(sc: _Scanner) -> Command:
    object_id = sc.take_word("an object id")
    if sc.try_word("by"):
        return MoveObject(id=object_id, delta=sc.take_point())
    if sc.try_word("along"):
        return MoveObject(id=object_id, path=sc.take_pointlist())
    sc.fail("expected 'by' or 'along'")


def _parse_drag(sc: _Scanner) -> Command:
    object_id = sc.take_word("an object id")
    sc.take_punct(".")
    mode = sc.take_word("'replicate' or 'distribute'")
    if mode == "replicate":
        sc.take_word_exact("by")
        return ReplicateDrag(id=object_id, dx=sc.take_number())
    if mode == "distribute":
        handle = sc.take_word("'left' or 'right'")
        if handle not in ("left", "right"):
            sc.fail(f"unknown handle {handle!r}", token=handle, column=sc.token_col)
        sc.take_word_exact("to")
        return DistributeDrag(id=object_id, handle=handle, axis_pos=sc.take_number())
    sc.fail(f"unknown drag target {mode!r}", token=mode, column=sc.token_col)


def _parse_tap(sc: _Scanner) -> Command:
    object_id = sc.take_word("an object id")
    sc.take_punct(".")
    sc.take_word_exact("sort")
    return SortToggle(id=object_id)


def _parse_scale(sc: _Scanner) -> Command:
    sc.take_word_exact("maxheight")
    return SetScale(target_max_px=sc.take_number())


def _parse_render(sc: _Scanner) -> Command:
    return Render(path=sc.take_path())


def _parse_dump(sc: _Scanner) -> Command:
    return DumpScene(path=sc.take_path())


_VERBS = {
    "load": _parse_load,
    "draw": _parse_draw,
    "apply": _parse_apply,
    "attach": _parse_attach,
    "detach": _parse_detach,
    "map": _parse_map,
    "move": _parse_move,
    "drag": _parse_drag,
    "tap": _parse_tap,
    "scale": _parse_scale,
    "render": _parse_render,
    "dump": _parse_dump,
}


def parse_script(text: str) -> list[Command]:
    """Parse a script into commands; raises :class:`ParseError` at the first offense."""
    commands: list[Command] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        sc = _Scanner(line, line_no)
        if sc.at_end():
            continue
        verb = sc.take_word("a command verb")
        parser = _VERBS.get(verb)
        if parser is None:
            sc.fail(f"unknown verb {verb!r}", token=verb, column=sc.token_col)
        command = parser(sc)
        if not sc.at_end():
            sc.fail("unexpected trailing input")
        commands.append(command)
    return commands


# -- formatting -----------------------------------------------------------------------


def _fmt_num(value: float) -> str:
    return repr(float(value))


def _fmt_point(point: Point) -> str:
    return f"({_fmt_num(point[0])},{_fmt_num(point[1])})"


def _fmt_pointlist(points) -> str:
    return "[" + ",".join(_fmt_point(p) for p in points) + "]"


def _fmt_dimref(name: str) -> str:
    if _WORD_RE.fullmatch(name):
        return name
    escaped = name.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _fmt_path(path: str) -> str:
    if path and not re.search(r'[\s"#]', path):
        return path
    escaped = path.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def format_command(command: Command) -> str:
    if isinstance(command, LoadData):
        return f"load data {_fmt_path(command.path)} as {command.name}"
    if isinstance(command, DrawStroke):
        parts = [f"draw stroke {command.id} {_fmt_pointlist(command.points)}"]
        if command.closed:
            parts.append("closed")
        if command.stroke_color is not None:
            parts.append(f"stroke {command.stroke_color}")
        if command.stroke_width is not None:
            parts.append(f"width {_fmt_num(command.stroke_width)}")
        return " ".join(parts)
    if isinstance(command, ApplyTransient):
        m = command.modifier
        if m.kind == "shape":
            return f"apply shape {command.id}"
        return f"apply {m.kind} {m.color} {command.id}"
    if isinstance(command, AttachPersistent) or isinstance(command, AttachActivator):
        return f"attach {command.kind} {command.id}"
    if isinstance(command, DetachPersistent) or isinstance(command, DetachActivator):
        return f"detach {command.kind} {command.id}"
    if isinstance(command, MapDimension):
        return f"map {command.dataset}.{_fmt_dimref(command.dimension)} -> {command.id}.{command.kind}"
    if isinstance(command, SortMap):
        return f"map {command.dataset}.{_fmt_dimref(command.dimension)} -> {command.id}.sort"
    if isinstance(command, MoveObject):
        if command.delta is not None:
            return f"move {command.id} by {_fmt_point(command.delta)}"
        return f"move {command.id} along {_fmt_pointlist(command.path)}"
    if isinstance(command, ReplicateDrag):
        return f"drag {command.id}.replicate by {_fmt_num(command.dx)}"
    if isinstance(command, DistributeDrag):
        return f"drag {command.id}.distribute {command.handle} to {_fmt_num(command.axis_pos)}"
    if isinstance(command, SortToggle):
        return f"tap {command.id}.sort"
    if isinstance(command, SetScale):
        return f"scale maxheight {_fmt_num(command.target_max_px)}"
    if isinstance(command, Render):
        return f"render {_fmt_path(command.path)}"
    if isinstance(command, DumpScene):
        return f"dump {_fmt_path(command.path)}"
    raise TypeError(f"not a command: {command!r}")


def format_commands(commands) -> str:
    """Canonical text form; ``parse_script(format_commands(cmds))`` equals ``cmds``."""
    if not commands:
        return ""
    return "\n".join(format_command(c) for c in commands) + "\n"


# -- JSON wire form (the UI <-> kernel command protocol) --------------------------------

_OP_NAMES = {
    LoadData: "load_data",
    DrawStroke: "draw_stroke",
    ApplyTransient: "apply_transient",
    AttachPersistent: "attach_persistent",
    DetachPersistent: "detach_persistent",
    MapDimension: "map_dimension",
    AttachActivator: "attach_activator",
    DetachActivator: "detach_activator",
    MoveObject: "move_object",
    ReplicateDrag: "replicate_drag",
    DistributeDrag: "distribute_drag",
    SortMap: "sort_map",
    SortToggle: "sort_toggle",
    SetScale: "set_scale",
    Render: "render",
    DumpScene: "dump_scene",
}
_OP_CLASSES = {name: cls for cls, name in _OP_NAMES.items()}


def command_to_json(command: Command) -> dict:
    tree: dict = {"op": _OP_NAMES[type(command)]}
    if isinstance(command, DrawStroke):
        tree.update(
            id=command.id,
            points=[list(p) for p in command.points],
            closed=command.closed,
            stroke_color=command.stroke_color,
            stroke_width=command.stroke_width,
        )
    elif isinstance(command, ApplyTransient):
        tree.update(
            id=command.id,
            modifier={"kind": command.modifier.kind, "color": command.modifier.color},
        )
    elif isinstance(command, MoveObject):
        tree.update(
            id=command.id,
            delta=list(command.delta) if command.delta is not None else None,
            path=[list(p) for p in command.path] if command.path is not None else None,
        )
    else:
        for key, value in vars(command).items():
            tree[key] = value
    return tree


def command_from_json(tree: dict) -> Command:
    cls = _OP_CLASSES.get(tree.get("op"))
    if cls is None:
        raise ValueError(f"unknown command op {tree.get('op')!r}")
    fields = {k: v for k, v in tree.items() if k != "op"}
    if cls is DrawStroke:
        return DrawStroke(
            id=fields["id"],
            points=tuple((float(x), float(y)) for x, y in fields["points"]),
            closed=bool(fields.get("closed", False)),
            stroke_color=fields.get("stroke_color"),
            stroke_width=None
            if fields.get("stroke_width") is None
            else float(fields["stroke_width"]),
        )
    if cls is ApplyTransient:
        m = fields["modifier"]
        return ApplyTransient(
            id=fields["id"], modifier=TransientModifier(kind=m["kind"], color=m.get("color"))
        )
    if cls is MoveObject:
        delta = fields.get("delta")
        path = fields.get("path")
        return MoveObject(
            id=fields["id"],
            delta=None if delta is None else (float(delta[0]), float(delta[1])),
            path=None if path is None else tuple((float(x), float(y)) for x, y in path),
        )
    return cls(**fields)


# -- replay ------------------------------------------------------------------------


@dataclass
class ReplayConfig:
    target_max_px: float = modifiers_ops.DEFAULT_TARGET_MAX_PX
    canvas_size: tuple[float, float] = (960.0, 540.0)
    background: str = "#ffffff"
    # Pre-registered CSV bytes, looked up before touching the filesystem;
    # keys are paths, basenames, or dataset names given to the CLI.
    data_registry: dict[str, bytes] = field(default_factory=dict)
    base_dir: Path | None = None


@dataclass
class ReplayState:
    """Mutable per-replay state; `scale maxheight` affects later mappings only."""

    target_max_px: float
    canvas_size: tuple[float, float]
    background: str
    data_registry: dict[str, bytes]
    base_dir: Path | None
    outputs: list[tuple[str, bytes]] = field(default_factory=list)

    @classmethod
    def from_config(cls, config: ReplayConfig) -> "ReplayState":
        return cls(
            target_max_px=config.target_max_px,
            canvas_size=config.canvas_size,
            background=config.background,
            data_registry=dict(config.data_registry),
            base_dir=config.base_dir,
        )


@dataclass
class ReplayResult:
    scene: Scene
    # (path, bytes) captured by `render`/`dump` commands at their point in
    # the script; the caller decides whether and where to write them.
    outputs: list[tuple[str, bytes]]


def _resolve_data(path: str, state: ReplayState) -> bytes:
    if path in state.data_registry:
        return state.data_registry[path]
    base = os.path.basename(path)
    if base in state.data_registry:
        return state.data_registry[base]
    candidates = []
    if state.base_dir is not None:
        candidates.append(Path(state.base_dir) / path)
    candidates.append(Path(path))
    for candidate in candidates:
        if candidate.is_file():
            return candidate.read_bytes()
    raise DataFileNotFound(f"cannot resolve data file {path!r}")


def apply_command(scene: Scene, command: Command, state: ReplayState) -> None:
    """Apply one command to the scene; raises a KernelError subclass on failure."""
    if isinstance(command, LoadData):
        scene.datasets[command.name] = tabular.load_csv(
            _resolve_data(command.path, state), command.name
        )
    elif isinstance(command, DrawStroke):
        scene_ops.draw_stroke(
            scene,
            list(command.points),
            closed=command.closed,
            stroke_color=command.stroke_color,
            stroke_width=command.stroke_width,
            object_id=command.id,
        )
    elif isinstance(command, ApplyTransient):
        modifiers_ops.apply_transient(scene, command.id, command.modifier)
    elif isinstance(command, AttachPersistent):
        modifiers_ops.attach_persistent(scene, command.id, command.kind)
    elif isinstance(command, DetachPersistent):
        modifiers_ops.detach_persistent(scene, command.id, command.kind)
    elif isinstance(command, MapDimension):
        modifiers_ops.map_dimension(
            scene,
            command.id,
            command.kind,
            command.dataset,
            command.dimension,
            target_max_px=state.target_max_px,
        )
    elif isinstance(command, AttachActivator):
        activators_ops.attach_activator(scene, command.id, command.kind)
    elif isinstance(command, DetachActivator):
        activators_ops.detach_activator(scene, command.id, command.kind)
    elif isinstance(command, MoveObject):
        if command.delta is not None:
            scene_ops.move_object(scene, command.id, command.delta)
        else:
            scene_ops.move_along(scene, command.id, list(command.path))
    elif isinstance(command, ReplicateDrag):
        activators_ops.replicate_drag(scene, command.id, command.dx)
    elif isinstance(command, DistributeDrag):
        activators_ops.distribute_drag(scene, command.id, command.handle, command.axis_pos)
    elif isinstance(command, SortMap):
        activators_ops.sort_map(scene, command.id, command.dataset, command.dimension)
    elif isinstance(command, SortToggle):
        activators_ops.sort_toggle(scene, command.id)
    elif isinstance(command, SetScale):
        state.target_max_px = float(command.target_max_px)
    elif isinstance(command, Render):
        svg = render_svg(scene, RenderConfig(state.canvas_size, state.background))
        state.outputs.append((command.path, svg))
    elif isinstance(command, DumpScene):
        state.outputs.append((command.path, serialize_scene(scene)))
    else:
        raise TypeError(f"not a command: {command!r}")


def replay(commands, config: ReplayConfig | None = None) -> ReplayResult:
    """Apply commands in order to a fresh scene.

    Fail-fast: the first failing command raises :class:`ReplayError` carrying
    its 0-based index and the underlying kernel error.
    """
    state = ReplayState.from_config(config or ReplayConfig())
    scene = Scene()
    for index, command in enumerate(commands):
        try:
            apply_command(scene, command, state)
        except KernelError as err:
            raise ReplayError(index, err) from err
    return ReplayResult(scene=scene, outputs=state.outputs)
