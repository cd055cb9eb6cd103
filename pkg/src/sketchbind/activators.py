"""Activators: the processes that turn inert objects into tools.

Five kinds exist. Ink makes a moving object leave scribbles; push shoves
overlapped objects out of the way; replicate spawns data-bound copies of a
mapped mark; distribute spaces a span of marks evenly between two handles;
sort permutes a span by a bound dimension. Activators compose independently
and removing one never rewinds what it already did.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import modifiers, tabular
from . import scene as scene_ops
from .errors import (
    CollapsedSpan,
    DistributeNotAttached,
    DistributeSpanTooSmall,
    DuplicateActivator,
    DuplicateId,
    IndexOutOfRange,
    InkNotAttached,
    NegativeDrag,
    NoSuchActivator,
    PushNotAttached,
    ReplicateNotAttached,
    ReplicateWithoutBinding,
    SortNotAttached,
    SortNotBound,
    UnmappedMark,
)
from .scene import Point, Scene, Scribble, StrokeGeometry, VisualObject

INK = "ink"
PUSH = "push"
REPLICATE = "replicate"
DISTRIBUTE = "distribute"
SORT = "sort"
ACTIVATOR_KINDS = (INK, PUSH, REPLICATE, DISTRIBUTE, SORT)

ASCENDING = "ascending"
DESCENDING = "descending"

REPLICA_GAP_PX = 10.0


@dataclass
class ReplicateState:
    remaining: int
    consumed: int = 0
    drag_accum: float = 0.0


@dataclass
class DistributeState:
    span_objects: list[str]
    left_handle: Point
    right_handle: Point
    axis: str  # "x" | "y": the tool stroke's dominant direction


@dataclass
class SortState:
    binding: tuple[str, str] | None = None  # (dataset name, dimension name)
    direction: str = ASCENDING
    # Own span snapshot, used only when no distribute activator is present.
    span_objects: list[str] = field(default_factory=list)
    axis: str = "x"


@dataclass
class ActivatorInstance:
    kind: str
    state: ReplicateState | DistributeState | SortState | None = None


def find_activator(obj: VisualObject, kind: str) -> ActivatorInstance | None:
    for instance in obj.activators:
        if instance.kind == kind:
            return instance
    return None


# -- span geometry --------------------------------------------------------------

def _segment_crosses_box(a: Point, b: Point, box: tuple[Point, Point]) -> bool:
    # Liang-Barsky clip of segment a->b against the (possibly degenerate) box.
    (x0, y0), (x1, y1) = box
    dx, dy = b[0] - a[0], b[1] - a[1]
    t0, t1 = 0.0, 1.0
    for p, q in (
        (-dx, a[0] - x0),
        (dx, x1 - a[0]),
        (-dy, a[1] - y0),
        (dy, y1 - a[1]),
    ):
        if p == 0:
            if q < 0:
                return False
        else:
            r = q / p
            if p < 0:
                t0 = max(t0, r)
            else:
                t1 = min(t1, r)
            if t0 > t1:
                return False
    return True


def stroke_crosses_object(tool: VisualObject, obj: VisualObject) -> bool:
    """True iff any segment of the tool's polyline crosses the object's bbox."""
    box = scene_ops.bounding_box(obj)
    pts = tool.geometry.points
    segments = list(zip(pts, pts[1:]))
    if tool.geometry.closed:
        segments.append((pts[-1], pts[0]))
    return any(_segment_crosses_box(a, b, box) for a, b in segments)


def _dominant_axis(obj: VisualObject) -> str:
    return "x" if scene_ops.object_width(obj) >= scene_ops.object_height(obj) else "y"


def _axis_center(obj: VisualObject, axis: str) -> float:
    (x0, y0), (x1, y1) = scene_ops.bounding_box(obj)
    return (x0 + x1) / 2 if axis == "x" else (y0 + y1) / 2


def _axis_translate(obj: VisualObject, axis: str, amount: float) -> None:
    scene_ops.translate(obj, (amount, 0.0) if axis == "x" else (0.0, amount))


def _compute_span(scene: Scene, tool: VisualObject) -> tuple[list[str], str]:
    axis = _dominant_axis(tool)
    crossed = [
        obj for obj in scene.objects
        if obj.id != tool.id and stroke_crosses_object(tool, obj)
    ]
    crossed.sort(key=lambda o: _axis_center(o, axis))  # stable: z-order breaks ties
    return [o.id for o in crossed], axis


# -- lifecycle --------------------------------------------------------------------

def attach_activator(scene: Scene, object_id: str, kind: str) -> Scene:
    obj = scene_ops.get_object(scene, object_id)
    if kind not in ACTIVATOR_KINDS:
        raise ValueError(f"unknown activator kind {kind!r}")
    if find_activator(obj, kind) is not None:
        raise DuplicateActivator(f"object {object_id!r} already has a {kind} activator")

    state: ReplicateState | DistributeState | SortState | None = None
    if kind == REPLICATE:
        bound = [m for m in obj.persistent_modifiers if m.binding is not None]
        if not bound:
            raise ReplicateWithoutBinding(
                f"object {object_id!r} has no data-bound persistent modifier"
            )
        dataset = scene.datasets[bound[0].binding[0]]
        state = ReplicateState(remaining=dataset.record_count - 1)
    elif kind == DISTRIBUTE:
        span, axis = _compute_span(scene, obj)
        if len(span) < 2:
            raise DistributeSpanTooSmall(
                f"stroke {object_id!r} crosses {len(span)} object(s); need at least 2"
            )
        state = DistributeState(
            span_objects=span,
            left_handle=_span_edge_point(scene, obj, span, axis, "left"),
            right_handle=_span_edge_point(scene, obj, span, axis, "right"),
            axis=axis,
        )
    elif kind == SORT:
        distribute = find_activator(obj, DISTRIBUTE)
        if distribute is not None:
            state = SortState(
                span_objects=list(distribute.state.span_objects),
                axis=distribute.state.axis,
            )
        else:
            span, axis = _compute_span(scene, obj)
            if len(span) < 2:
                raise DistributeSpanTooSmall(
                    f"stroke {object_id!r} crosses {len(span)} object(s); need at least 2"
                )
            state = SortState(span_objects=span, axis=axis)

    obj.activators.append(ActivatorInstance(kind=kind, state=state))
    return scene


def _span_edge_point(
    scene: Scene, tool: VisualObject, span: list[str], axis: str, side: str
) -> Point:
    # Handles sit at the start/end of the space spanned by the crossed marks,
    # on the tool stroke's principal axis.
    boxes = [scene_ops.bounding_box(scene_ops.get_object(scene, oid)) for oid in span]
    if axis == "x":
        position = min(b[0][0] for b in boxes) if side == "left" else max(b[1][0] for b in boxes)
    else:
        position = min(b[0][1] for b in boxes) if side == "left" else max(b[1][1] for b in boxes)
    cross = _axis_center(tool, "y" if axis == "x" else "x")
    return (position, cross) if axis == "x" else (cross, position)


def detach_activator(scene: Scene, object_id: str, kind: str) -> Scene:
    """Remove one activator; everything it already produced stays as-is."""
    obj = scene_ops.get_object(scene, object_id)
    instance = find_activator(obj, kind)
    if instance is None:
        raise NoSuchActivator(f"object {object_id!r} has no {kind} activator")
    obj.activators.remove(instance)
    return scene


# -- ink and push -----------------------------------------------------------------

def move_with_effects(
    scene: Scene, obj: VisualObject, path: list[Point], delta: Point | None = None
) -> None:
    """Translate an object along a gesture and run its activator effects.

    The path is the centroid's trajectory in canvas coordinates; an ink
    activator records it verbatim as one scribble with the object's current
    stroke color and width. Callers that know the exact translation pass
    ``delta``; otherwise it is derived from the path's end point.
    """
    box_before = scene_ops.bounding_box(obj)
    if delta is None:
        cx, cy = scene_ops.centroid(obj)
        end = path[-1]
        delta = (end[0] - cx, end[1] - cy)
    scene_ops.translate(obj, delta)

    if find_activator(obj, INK) is not None:
        scribble_id = f"scr{scene.next_id}"
        scene.next_id += 1
        scene.scribbles.append(
            Scribble(
                id=scribble_id,
                points=[(float(x), float(y)) for x, y in path],
                color=obj.stroke_color,
                width=obj.stroke_width,
            )
        )
    if find_activator(obj, PUSH) is not None and delta != (0.0, 0.0):
        _push_others(scene, obj, delta, box_before)


def ink_move(scene: Scene, object_id: str, path: list[Point]) -> Scene:
    obj = scene_ops.get_object(scene, object_id)
    if find_activator(obj, INK) is None:
        raise InkNotAttached(f"object {object_id!r} has no ink activator")
    if not path:
        raise ValueError("ink path must not be empty")
    move_with_effects(scene, obj, [(float(x), float(y)) for x, y in path])
    return scene


def push_move(scene: Scene, object_id: str, delta: Point) -> Scene:
    obj = scene_ops.get_object(scene, object_id)
    if find_activator(obj, PUSH) is None:
        raise PushNotAttached(f"object {object_id!r} has no push activator")
    dx, dy = float(delta[0]), float(delta[1])
    if dx == 0.0 and dy == 0.0:
        return scene
    cx, cy = scene_ops.centroid(obj)
    move_with_effects(scene, obj, [(cx, cy), (cx + dx, cy + dy)], delta=(dx, dy))
    return scene


def _push_others(
    scene: Scene, tool: VisualObject, delta: Point, box_before: tuple[Point, Point]
) -> None:
    # Single pass, no cascading: each overlapped object exits the swept box
    # along delta's direction by the minimal distance; pushed objects never
    # push others.
    (bx0, by0), (bx1, by1) = box_before
    dx, dy = delta
    swept = (min(bx0, bx0 + dx), min(by0, by0 + dy)), (max(bx1, bx1 + dx), max(by1, by1 + dy))
    length = math.hypot(dx, dy)
    ux, uy = dx / length, dy / length

    def along(obj: VisualObject) -> float:
        (x0, y0), (x1, y1) = scene_ops.bounding_box(obj)
        return ((x0 + x1) / 2) * ux + ((y0 + y1) / 2) * uy

    candidates = [o for o in scene.objects if o.id != tool.id and _overlaps(o, swept)]
    candidates.sort(key=along)  # nearest-first along the push direction
    for obj in candidates:
        t = _exit_distance(scene_ops.bounding_box(obj), swept, ux, uy)
        scene_ops.translate(obj, (ux * t, uy * t))


def _overlaps(obj: VisualObject, box: tuple[Point, Point]) -> bool:
    (ax0, ay0), (ax1, ay1) = scene_ops.bounding_box(obj)
    (bx0, by0), (bx1, by1) = box
    return ax0 < bx1 and bx0 < ax1 and ay0 < by1 and by0 < ay1


def _exit_distance(
    box: tuple[Point, Point], swept: tuple[Point, Point], ux: float, uy: float
) -> float:
    (ax0, ay0), (ax1, ay1) = box
    (sx0, sy0), (sx1, sy1) = swept
    distances = []
    if ux > 0:
        distances.append((sx1 - ax0) / ux)
    elif ux < 0:
        distances.append((ax1 - sx0) / -ux)
    if uy > 0:
        distances.append((sy1 - ay0) / uy)
    elif uy < 0:
        distances.append((ay1 - sy0) / -uy)
    return min(distances)


# -- replicate ----------------------------------------------------------------------

def replicate_drag(scene: Scene, object_id: str, dx: float) -> Scene:
    """Accumulate a rightward drag; each full step spawns one data-bound replica.

    The step is the original mark's width plus a 10 px gap. Once no records
    remain the handle is disabled: further drags are no-ops.
    """
    obj = scene_ops.get_object(scene, object_id)
    instance = find_activator(obj, REPLICATE)
    if instance is None:
        raise ReplicateNotAttached(f"object {object_id!r} has no replicate activator")
    if dx < 0:
        raise NegativeDrag(f"replicate drags move right; got {dx}")
    state = instance.state
    if state.remaining <= 0:
        return scene

    state.drag_accum += float(dx)
    while state.remaining > 0:
        step = scene_ops.object_width(obj) + REPLICA_GAP_PX
        if state.drag_accum < step:
            break
        state.drag_accum -= step
        _spawn_replica(scene, obj, state)
        state.consumed += 1
        state.remaining -= 1
    return scene


def _spawn_replica(scene: Scene, original: VisualObject, state: ReplicateState) -> None:
    record = state.consumed + 1
    replica_id = f"{original.id}~{record}"
    if replica_id in {o.id for o in scene.objects} | {s.id for s in scene.scribbles}:
        raise DuplicateId(f"replica id {replica_id!r} already exists")
    previous_id = original.id if state.consumed == 0 else f"{original.id}~{state.consumed}"
    previous = scene_ops.get_object(scene, previous_id)

    replica = VisualObject(
        id=replica_id,
        geometry=StrokeGeometry(points=list(original.base_points), closed=original.geometry.closed),
        stroke_color=original.stroke_color,
        stroke_width=original.stroke_width,
        fill_color=original.fill_color,
        label_text=original.label_text,
        record_index=record,
        persistent_modifiers=[modifiers.copy_instance(m) for m in original.persistent_modifiers],
        base_points=list(original.base_points),
    )
    scene.objects.append(replica)

    # Place before binding: left edge one gap right of the previous family
    # member, bottom aligned with the original (height mapping keeps both).
    previous_right = scene_ops.bounding_box(previous)[1][0]
    (replica_left, _), (_, replica_bottom) = scene_ops.bounding_box(replica)
    original_bottom = scene_ops.bounding_box(original)[1][1]
    scene_ops.translate(
        replica,
        (previous_right + REPLICA_GAP_PX - replica_left, original_bottom - replica_bottom),
    )
    modifiers.resolve_bindings(scene, replica_id)


# -- distribute -----------------------------------------------------------------------

def distribute_drag(scene: Scene, object_id: str, handle: str, axis_pos: float) -> Scene:
    """Move one handle to an axis position and space the span's centers evenly."""
    obj = scene_ops.get_object(scene, object_id)
    instance = find_activator(obj, DISTRIBUTE)
    if instance is None:
        raise DistributeNotAttached(f"object {object_id!r} has no distribute activator")
    if handle not in ("left", "right"):
        raise ValueError(f"handle must be 'left' or 'right', got {handle!r}")
    state = instance.state
    axis = state.axis
    axis_pos = float(axis_pos)

    left = state.left_handle[0] if axis == "x" else state.left_handle[1]
    right = state.right_handle[0] if axis == "x" else state.right_handle[1]
    if handle == "left":
        left = axis_pos
    else:
        right = axis_pos
    if left >= right:
        raise CollapsedSpan(f"left handle {left} must stay left of right handle {right}")

    state.left_handle = _with_axis(state.left_handle, axis, left)
    state.right_handle = _with_axis(state.right_handle, axis, right)

    n = len(state.span_objects)
    for i, oid in enumerate(state.span_objects):
        target = left + i * (right - left) / (n - 1)
        member = scene_ops.get_object(scene, oid)
        _axis_translate(member, axis, target - _axis_center(member, axis))
    return scene


def _with_axis(point: Point, axis: str, value: float) -> Point:
    return (value, point[1]) if axis == "x" else (point[0], value)


# -- sort ---------------------------------------------------------------------------

def _sort_span(scene: Scene, tool: VisualObject, sort_state: SortState) -> tuple[list[str], str]:
    distribute = find_activator(tool, DISTRIBUTE)
    if distribute is not None:
        return distribute.state.span_objects, distribute.state.axis
    return sort_state.span_objects, sort_state.axis


def sort_map(scene: Scene, object_id: str, dataset: str, dimension: str) -> Scene:
    """Bind a dimension to the sort tool and permute its span ascending."""
    obj = scene_ops.get_object(scene, object_id)
    instance = find_activator(obj, SORT)
    if instance is None:
        raise SortNotAttached(f"object {object_id!r} has no sort activator")
    dim = tabular.get_dimension(scene_ops.get_dataset(scene, dataset), dimension)
    state = instance.state
    state.binding = (dataset, dimension)
    _apply_sort(scene, obj, state, dim)
    return scene


def sort_toggle(scene: Scene, object_id: str) -> Scene:
    """Flip the sorting direction and re-permute the span."""
    obj = scene_ops.get_object(scene, object_id)
    instance = find_activator(obj, SORT)
    if instance is None:
        raise SortNotAttached(f"object {object_id!r} has no sort activator")
    state = instance.state
    if state.binding is None:
        raise SortNotBound(f"sort on {object_id!r} has no dimension mapped yet")
    state.direction = DESCENDING if state.direction == ASCENDING else ASCENDING
    dataset, dimension = state.binding
    dim = tabular.get_dimension(scene_ops.get_dataset(scene, dataset), dimension)
    _apply_sort(scene, obj, state, dim)
    return scene


def _apply_sort(scene: Scene, tool: VisualObject, state: SortState, dim: tabular.Dimension) -> None:
    span_ids, axis = _sort_span(scene, tool, state)
    members = [scene_ops.get_object(scene, oid) for oid in span_ids]
    for member in members:
        if member.record_index is None:
            raise UnmappedMark(f"object {member.id!r} has no record index")
        if not 0 <= member.record_index < len(dim.values):
            raise IndexOutOfRange(
                f"record {member.record_index} out of range for dimension {dim.name!r}"
            )

    # The set of anchor slots stays; marks swap onto them. Ties keep record
    # order ascending in both directions (two-pass stable sort).
    slots = sorted(_axis_center(m, axis) for m in members)
    ordered = sorted(members, key=lambda m: m.record_index)
    ordered = sorted(
        ordered,
        key=lambda m: dim.values[m.record_index],
        reverse=state.direction == DESCENDING,
    )
    for slot, member in zip(slots, ordered):
        _axis_translate(member, axis, slot - _axis_center(member, axis))
    span_ids[:] = [m.id for m in ordered]
