"""Authoring state: strokes, marks, scribbles, z-order, geometric primitives.

The :class:`Scene` is a single-owner value. Every operation here is a plain
synchronous function that mutates the scene it is given and returns it, so
scenes can be threaded through a command replay without hidden state. Objects
are inert by default: nothing in this module touches an object other than the
direct target of an operation; side effects (ink, push) happen only through
the activator dispatch in :mod:`sketchbind.activators`.

Coordinates are canvas pixels, y growing downward, origin top-left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import (
    DegenerateStroke,
    DuplicateId,
    NonPositiveHeight,
    NonPositiveWidth,
    UnknownDataset,
    UnknownObject,
    ZeroCurrentHeight,
    ZeroCurrentWidth,
)
from .tabular import Dataset

if TYPE_CHECKING:
    from .activators import ActivatorInstance
    from .modifiers import PersistentModifierInstance

Point = tuple[float, float]

DEFAULT_STROKE_COLOR = "#000000"
DEFAULT_STROKE_WIDTH = 2.0


@dataclass
class StrokeGeometry:
    """An ordered polyline; a closed one joins its last point back to its first."""

    points: list[Point]
    closed: bool = False


@dataclass
class VisualObject:
    """A stroke-born mark: geometry plus visual attributes, modifiers, activators.

    ``base_points`` is the shape as drawn (or as beautified), before any data
    mapping rescaled it; replication copies this base so mapped heights never
    compound. It is kept translated in lockstep with the live geometry.
    """

    id: str
    geometry: StrokeGeometry
    stroke_color: str = DEFAULT_STROKE_COLOR
    stroke_width: float = DEFAULT_STROKE_WIDTH
    fill_color: str | None = None
    label_text: str | None = None
    record_index: int | None = None
    persistent_modifiers: list["PersistentModifierInstance"] = field(default_factory=list)
    activators: list["ActivatorInstance"] = field(default_factory=list)
    base_points: list[Point] = field(default_factory=list)


@dataclass
class Scribble:
    """Ink left behind by a moving ink-activated tool. Immutable once created."""

    id: str
    points: list[Point]
    color: str
    width: float


@dataclass
class Scene:
    objects: list[VisualObject] = field(default_factory=list)
    scribbles: list[Scribble] = field(default_factory=list)
    datasets: dict[str, Dataset] = field(default_factory=dict)
    next_id: int = 0


def get_object(scene: Scene, object_id: str) -> VisualObject:
    for obj in scene.objects:
        if obj.id == object_id:
            return obj
    raise UnknownObject(f"no object with id {object_id!r}")


def get_dataset(scene: Scene, name: str) -> Dataset:
    if name not in scene.datasets:
        raise UnknownDataset(f"no dataset named {name!r}")
    return scene.datasets[name]


def _all_ids(scene: Scene) -> set[str]:
    ids = {obj.id for obj in scene.objects}
    ids.update(s.id for s in scene.scribbles)
    return ids


def _check_points(points: list[Point]) -> None:
    if len(points) < 2:
        raise DegenerateStroke(f"a stroke needs at least 2 points, got {len(points)}")
    if not all(math.isfinite(x) and math.isfinite(y) for x, y in points):
        raise DegenerateStroke("stroke contains a non-finite coordinate")
    if len(set(points)) < 2:
        raise DegenerateStroke("all stroke points are identical")


def draw_stroke(
    scene: Scene,
    points: list[Point],
    closed: bool = False,
    stroke_color: str | None = None,
    stroke_width: float | None = None,
    object_id: str | None = None,
) -> str:
    """Append a new inert object; returns its id.

    Ids are author-chosen when given (scripts), machine-generated otherwise.
    """
    points = [(float(x), float(y)) for x, y in points]
    _check_points(points)
    if object_id is None:
        object_id = f"obj{scene.next_id}"
        scene.next_id += 1
    elif object_id in _all_ids(scene):
        raise DuplicateId(f"id {object_id!r} already exists")
    scene.objects.append(
        VisualObject(
            id=object_id,
            geometry=StrokeGeometry(points=list(points), closed=closed),
            stroke_color=DEFAULT_STROKE_COLOR if stroke_color is None else stroke_color,
            stroke_width=DEFAULT_STROKE_WIDTH if stroke_width is None else float(stroke_width),
            base_points=list(points),
        )
    )
    return object_id


def bounds_of(points: list[Point]) -> tuple[Point, Point]:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (min(xs), min(ys)), (max(xs), max(ys))


def bounding_box(obj: VisualObject) -> tuple[Point, Point]:
    """Axis-aligned box over the object's geometry; degenerate boxes allowed."""
    return bounds_of(obj.geometry.points)


def object_height(obj: VisualObject) -> float:
    (_, y0), (_, y1) = bounding_box(obj)
    return y1 - y0


def object_width(obj: VisualObject) -> float:
    (x0, _), (x1, _) = bounding_box(obj)
    return x1 - x0


def centroid(obj: VisualObject) -> Point:
    pts = obj.geometry.points
    return (
        sum(p[0] for p in pts) / len(pts),
        sum(p[1] for p in pts) / len(pts),
    )


def translate(obj: VisualObject, delta: Point) -> None:
    dx, dy = delta
    obj.geometry.points = [(x + dx, y + dy) for x, y in obj.geometry.points]
    obj.base_points = [(x + dx, y + dy) for x, y in obj.base_points]


def move_object(scene: Scene, object_id: str, delta: Point) -> Scene:
    """Translate an object by a vector; its activators contribute any side effects."""
    obj = get_object(scene, object_id)
    dx, dy = float(delta[0]), float(delta[1])
    if dx == 0.0 and dy == 0.0:
        return scene
    from . import activators  # deferred: activators is built on top of scene

    cx, cy = centroid(obj)
    activators.move_with_effects(scene, obj, [(cx, cy), (cx + dx, cy + dy)], delta=(dx, dy))
    return scene


def move_along(scene: Scene, object_id: str, path: list[Point]) -> Scene:
    """Drag an object along a gesture path ending at the path's last point."""
    obj = get_object(scene, object_id)
    if not path:
        raise ValueError("move path must not be empty")
    from . import activators

    activators.move_with_effects(scene, obj, [(float(x), float(y)) for x, y in path])
    return scene


def set_height(scene: Scene, object_id: str, height: float) -> Scene:
    """Scale vertically about the object's bottom edge; width and bottom stay put."""
    obj = get_object(scene, object_id)
    if height <= 0:
        raise NonPositiveHeight(f"target height must be positive, got {height}")
    (_, y0), (_, bottom) = bounding_box(obj)
    current = bottom - y0
    if current == 0:
        raise ZeroCurrentHeight(f"object {object_id!r} has zero height")
    factor = height / current
    obj.geometry.points = [
        (x, bottom - (bottom - y) * factor) for x, y in obj.geometry.points
    ]
    return scene


def set_width(scene: Scene, object_id: str, width: float) -> Scene:
    """Scale horizontally about the object's left edge; the x-extent mirror of set_height."""
    obj = get_object(scene, object_id)
    if width <= 0:
        raise NonPositiveWidth(f"target width must be positive, got {width}")
    (left, _), (x1, _) = bounding_box(obj)
    current = x1 - left
    if current == 0:
        raise ZeroCurrentWidth(f"object {object_id!r} has zero width")
    factor = width / current
    obj.geometry.points = [
        (left + (x - left) * factor, y) for x, y in obj.geometry.points
    ]
    return scene
