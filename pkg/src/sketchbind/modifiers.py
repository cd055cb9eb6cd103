"""Transient and persistent modifiers.

Transient modifiers (fill, stroke color, shape beautification) change an
attribute the moment they are applied and leave no trace on the object.
Persistent modifiers (width, height, label) stay attached and do nothing
until a data dimension is mapped onto them; mapping freezes a value-to-pixel
scale so that later replicas stay proportionally comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import scene as scene_ops
from . import tabular
from .errors import (
    DuplicateModifierKind,
    EmptyDimension,
    FillOnOpenStroke,
    IndexOutOfRange,
    NoSuchModifier,
    OpenStroke,
    TypeMismatch,
)
from .formatting import fmt_number
from .scene import Point, Scene, StrokeGeometry, VisualObject

FILL = "fill"
STROKECOLOR = "strokecolor"
SHAPE = "shape"
TRANSIENT_KINDS = (FILL, STROKECOLOR, SHAPE)

WIDTH = "width"
HEIGHT = "height"
LABEL = "label"
PERSISTENT_KINDS = (WIDTH, HEIGHT, LABEL)

DEFAULT_TARGET_MAX_PX = 300.0

# Fraction of the stroke's bbox diagonal used as the corner-detection
# tolerance, floored at 1 px so tiny strokes stay simplifiable.
RDP_DIAGONAL_FRACTION = 0.025
CIRCLE_SEGMENTS = 64


@dataclass(frozen=True)
class TransientModifier:
    kind: str  # FILL | STROKECOLOR | SHAPE
    color: str | None = None


@dataclass(frozen=True)
class ScaleSnapshot:
    """Value-to-pixel scale captured at mapping time and never recomputed."""

    dim_max: float
    target_max_px: float = DEFAULT_TARGET_MAX_PX


@dataclass
class PersistentModifierInstance:
    kind: str  # WIDTH | HEIGHT | LABEL
    binding: tuple[str, str] | None = None  # (dataset name, dimension name)
    frozen_scale: ScaleSnapshot | None = None


def _find_instance(obj: VisualObject, kind: str) -> PersistentModifierInstance | None:
    for instance in obj.persistent_modifiers:
        if instance.kind == kind:
            return instance
    return None


# -- transient modifiers -------------------------------------------------------

def apply_transient(scene: Scene, object_id: str, modifier: TransientModifier) -> Scene:
    """Apply a one-shot attribute change; nothing is stored on the object."""
    obj = scene_ops.get_object(scene, object_id)
    if modifier.kind == FILL:
        if not obj.geometry.closed:
            raise FillOnOpenStroke(f"object {object_id!r} is an open stroke")
        obj.fill_color = modifier.color
    elif modifier.kind == STROKECOLOR:
        obj.stroke_color = modifier.color
    elif modifier.kind == SHAPE:
        obj.geometry = beautify_shape(obj.geometry)
        obj.base_points = list(obj.geometry.points)
    else:
        raise ValueError(f"unknown transient modifier kind {modifier.kind!r}")
    return scene


def _perpendicular_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    length_sq = dx * dx + dy * dy
    if length_sq == 0:
        return math.hypot(px - ax, py - ay)
    return abs(dy * (px - ax) - dx * (py - ay)) / math.sqrt(length_sq)


def rdp_simplify(points: list[Point], epsilon: float) -> list[Point]:
    """Ramer-Douglas-Peucker polyline simplification (endpoints always kept)."""
    if len(points) < 3:
        return list(points)
    max_dist = -1.0
    max_index = 0
    for i in range(1, len(points) - 1):
        dist = _perpendicular_distance(points[i], points[0], points[-1])
        if dist > max_dist:
            max_dist = dist
            max_index = i
    if max_dist <= epsilon:
        return [points[0], points[-1]]
    left = rdp_simplify(points[: max_index + 1], epsilon)
    right = rdp_simplify(points[max_index:], epsilon)
    return left[:-1] + right


def beautify_shape(geometry: StrokeGeometry) -> StrokeGeometry:
    """Turn a rough closed stroke into a regular shape.

    The stroke is closed into a ring (first point repeated) and simplified;
    surviving interior corners decide the shape: 3 corners give a triangle
    through them, 4 give the stroke's axis-aligned bounding rectangle, and
    anything else becomes a 64-point circle at the bbox center with radius
    equal to the mean half-extent.
    """
    if not geometry.closed:
        raise OpenStroke("shape beautification requires a closed stroke")
    points = geometry.points
    (x0, y0), (x1, y1) = scene_ops.bounds_of(points)
    diagonal = math.hypot(x1 - x0, y1 - y0)
    epsilon = max(1.0, RDP_DIAGONAL_FRACTION * diagonal)

    ring = points + [points[0]]
    simplified = rdp_simplify(ring, epsilon)
    corners = simplified[:-1]  # drop the repeated closing point

    if len(corners) == 3:
        return StrokeGeometry(points=list(corners), closed=True)
    if len(corners) == 4:
        rect = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        return StrokeGeometry(points=rect, closed=True)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    radius = ((x1 - x0) / 2 + (y1 - y0) / 2) / 2
    circle = [
        (
            cx + radius * math.cos(2 * math.pi * k / CIRCLE_SEGMENTS),
            cy + radius * math.sin(2 * math.pi * k / CIRCLE_SEGMENTS),
        )
        for k in range(CIRCLE_SEGMENTS)
    ]
    return StrokeGeometry(points=circle, closed=True)


# -- persistent modifiers ------------------------------------------------------

def attach_persistent(scene: Scene, object_id: str, kind: str) -> Scene:
    """Attach an unbound modifier instance; the mark itself is untouched."""
    obj = scene_ops.get_object(scene, object_id)
    if kind not in PERSISTENT_KINDS:
        raise ValueError(f"unknown persistent modifier kind {kind!r}")
    if _find_instance(obj, kind) is not None:
        raise DuplicateModifierKind(f"object {object_id!r} already has a {kind} modifier")
    obj.persistent_modifiers.append(PersistentModifierInstance(kind=kind))
    return scene


def detach_persistent(scene: Scene, object_id: str, kind: str) -> Scene:
    """Remove the instance; any attribute it set keeps its last value."""
    obj = scene_ops.get_object(scene, object_id)
    instance = _find_instance(obj, kind)
    if instance is None:
        raise NoSuchModifier(f"object {object_id!r} has no {kind} modifier")
    obj.persistent_modifiers.remove(instance)
    return scene


def map_dimension(
    scene: Scene,
    object_id: str,
    kind: str,
    dataset: str,
    dimension: str,
    target_max_px: float = DEFAULT_TARGET_MAX_PX,
) -> Scene:
    """Bind a data dimension to a persistent modifier and apply it immediately.

    Height and width map value -> value * (target_max_px / dim_max); the scale
    is frozen now so later replicas reuse it. An object mapped for the first
    time represents the dataset's first record.
    """
    obj = scene_ops.get_object(scene, object_id)
    instance = _find_instance(obj, kind)
    if instance is None:
        raise NoSuchModifier(f"object {object_id!r} has no {kind} modifier")
    dim = tabular.get_dimension(scene_ops.get_dataset(scene, dataset), dimension)

    if kind in (HEIGHT, WIDTH):
        if dim.dtype != tabular.QUANTITATIVE:
            raise TypeMismatch(
                f"dimension {dimension!r} is categorical; {kind} needs a quantitative one"
            )
        if not dim.values:
            raise EmptyDimension(f"dimension {dimension!r} has no values")
        dim_max = max(dim.values)
        if dim_max <= 0:
            raise EmptyDimension(f"dimension {dimension!r} has no positive maximum")
        instance.frozen_scale = ScaleSnapshot(dim_max=dim_max, target_max_px=float(target_max_px))

    instance.binding = (dataset, dimension)
    if obj.record_index is None:
        obj.record_index = 0
    _apply_binding(scene, obj, instance)
    return scene


def _apply_binding(scene: Scene, obj: VisualObject, instance: PersistentModifierInstance) -> None:
    dataset_name, dimension_name = instance.binding
    dim = tabular.get_dimension(scene_ops.get_dataset(scene, dataset_name), dimension_name)
    index = obj.record_index if obj.record_index is not None else 0
    if not 0 <= index < len(dim.values):
        raise IndexOutOfRange(
            f"record {index} out of range for dimension {dimension_name!r}"
        )
    value = dim.values[index]

    if instance.kind == LABEL:
        obj.label_text = value if isinstance(value, str) else fmt_number(value)
        return
    snapshot = instance.frozen_scale
    pixels = value * (snapshot.target_max_px / snapshot.dim_max)
    if instance.kind == HEIGHT:
        scene_ops.set_height(scene, obj.id, pixels)
    else:
        scene_ops.set_width(scene, obj.id, pixels)


def resolve_bindings(scene: Scene, object_id: str) -> Scene:
    """Re-apply every bound modifier using the object's record index.

    The frozen scale snapshots are reused as-is; replicas therefore share the
    original mark's scale and stay mutually comparable.
    """
    obj = scene_ops.get_object(scene, object_id)
    for instance in obj.persistent_modifiers:
        if instance.binding is not None:
            _apply_binding(scene, obj, instance)
    return scene


def copy_instance(instance: PersistentModifierInstance) -> PersistentModifierInstance:
    """Independent copy sharing the frozen scale values (both are immutable)."""
    return replace(instance)
