"""Canonical scene serialization and SVG output.

Both encoders are pure functions of scene content: keys sorted, every float
rendered through the shared six-decimal formatter, ids as strings, element
and attribute order fixed. The serialization is the byte-level equality
oracle used by the test suite; the SVG targets a small SVG 1.1 subset
(rect, path, polyline, circle, text).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

from . import activators as activators_mod
from . import tabular
from .activators import ActivatorInstance, DistributeState, ReplicateState, SortState
from .formatting import fmt_number
from .modifiers import PersistentModifierInstance, ScaleSnapshot
from .scene import Point, Scene, Scribble, StrokeGeometry, VisualObject, bounding_box

LABEL_GAP_PX = 4.0
LABEL_FONT_SIZE = 14.0


@dataclass(frozen=True)
class RenderConfig:
    canvas_size: tuple[float, float] = (960.0, 540.0)
    background: str = "#ffffff"

    def __post_init__(self):
        w, h = self.canvas_size
        if w <= 0 or h <= 0:
            raise ValueError(f"canvas extents must be positive, got {self.canvas_size}")


# -- canonical serialization -----------------------------------------------------

def _points_tree(points: list[Point]) -> list[list[str]]:
    return [[fmt_number(x), fmt_number(y)] for x, y in points]


def _geometry_tree(geometry: StrokeGeometry) -> dict:
    return {"closed": geometry.closed, "points": _points_tree(geometry.points)}


def _modifier_tree(instance: PersistentModifierInstance) -> dict:
    binding = None
    if instance.binding is not None:
        binding = {"dataset": instance.binding[0], "dimension": instance.binding[1]}
    frozen = None
    if instance.frozen_scale is not None:
        frozen = {
            "dim_max": fmt_number(instance.frozen_scale.dim_max),
            "target_max_px": fmt_number(instance.frozen_scale.target_max_px),
        }
    return {"binding": binding, "frozen_scale": frozen, "kind": instance.kind}


def _activator_tree(instance: ActivatorInstance) -> dict:
    state = instance.state
    tree: dict = {"kind": instance.kind, "state": None}
    if isinstance(state, ReplicateState):
        tree["state"] = {
            "consumed": state.consumed,
            "drag_accum": fmt_number(state.drag_accum),
            "remaining": state.remaining,
        }
    elif isinstance(state, DistributeState):
        tree["state"] = {
            "axis": state.axis,
            "left_handle": [fmt_number(state.left_handle[0]), fmt_number(state.left_handle[1])],
            "right_handle": [fmt_number(state.right_handle[0]), fmt_number(state.right_handle[1])],
            "span_objects": list(state.span_objects),
        }
    elif isinstance(state, SortState):
        binding = None
        if state.binding is not None:
            binding = {"dataset": state.binding[0], "dimension": state.binding[1]}
        tree["state"] = {
            "axis": state.axis,
            "binding": binding,
            "direction": state.direction,
            "span_objects": list(state.span_objects),
        }
    return tree


def _object_tree(obj: VisualObject) -> dict:
    return {
        "activators": [_activator_tree(a) for a in obj.activators],
        "base_points": _points_tree(obj.base_points),
        "fill_color": obj.fill_color,
        "geometry": _geometry_tree(obj.geometry),
        "id": obj.id,
        "label_text": obj.label_text,
        "persistent_modifiers": [_modifier_tree(m) for m in obj.persistent_modifiers],
        "record_index": obj.record_index,
        "stroke_color": obj.stroke_color,
        "stroke_width": fmt_number(obj.stroke_width),
    }


def _scribble_tree(scribble: Scribble) -> dict:
    return {
        "color": scribble.color,
        "id": scribble.id,
        "points": _points_tree(scribble.points),
        "width": fmt_number(scribble.width),
    }


def _dataset_tree(dataset: tabular.Dataset) -> dict:
    return {
        "dimensions": [
            {
                "dtype": d.dtype,
                "name": d.name,
                "values": [v if isinstance(v, str) else fmt_number(v) for v in d.values],
            }
            for d in dataset.dimensions
        ],
        "name": dataset.name,
        "record_count": dataset.record_count,
    }


def scene_to_tree(scene: Scene) -> dict:
    return {
        "datasets": {name: _dataset_tree(ds) for name, ds in scene.datasets.items()},
        "next_id": scene.next_id,
        "objects": [_object_tree(o) for o in scene.objects],
        "scribbles": [_scribble_tree(s) for s in scene.scribbles],
    }


def serialize_scene(scene: Scene) -> bytes:
    tree = scene_to_tree(scene)
    return (json.dumps(tree, sort_keys=True, indent=2) + "\n").encode("utf-8")


# -- deserialization ---------------------------------------------------------------

def _points_from_tree(tree: list[list[str]]) -> list[Point]:
    return [(float(x), float(y)) for x, y in tree]


def _pair(tree: dict | None) -> tuple[str, str] | None:
    if tree is None:
        return None
    return (tree["dataset"], tree["dimension"])


def scene_from_tree(tree: dict) -> Scene:
    scene = Scene(next_id=tree["next_id"])
    for name, ds in tree["datasets"].items():
        dimensions = tuple(
            tabular.Dimension(
                name=d["name"],
                dtype=d["dtype"],
                values=tuple(
                    v if d["dtype"] == tabular.CATEGORICAL else float(v) for v in d["values"]
                ),
            )
            for d in ds["dimensions"]
        )
        scene.datasets[name] = tabular.Dataset(
            name=ds["name"], dimensions=dimensions, record_count=ds["record_count"]
        )
    for o in tree["objects"]:
        instances = [
            PersistentModifierInstance(
                kind=m["kind"],
                binding=_pair(m["binding"]),
                frozen_scale=None
                if m["frozen_scale"] is None
                else ScaleSnapshot(
                    dim_max=float(m["frozen_scale"]["dim_max"]),
                    target_max_px=float(m["frozen_scale"]["target_max_px"]),
                ),
            )
            for m in o["persistent_modifiers"]
        ]
        acts = [_activator_from_tree(a) for a in o["activators"]]
        scene.objects.append(
            VisualObject(
                id=o["id"],
                geometry=StrokeGeometry(
                    points=_points_from_tree(o["geometry"]["points"]),
                    closed=o["geometry"]["closed"],
                ),
                stroke_color=o["stroke_color"],
                stroke_width=float(o["stroke_width"]),
                fill_color=o["fill_color"],
                label_text=o["label_text"],
                record_index=o["record_index"],
                persistent_modifiers=instances,
                activators=acts,
                base_points=_points_from_tree(o["base_points"]),
            )
        )
    for s in tree["scribbles"]:
        scene.scribbles.append(
            Scribble(
                id=s["id"],
                points=_points_from_tree(s["points"]),
                color=s["color"],
                width=float(s["width"]),
            )
        )
    return scene


def _activator_from_tree(tree: dict) -> ActivatorInstance:
    kind = tree["kind"]
    state = tree["state"]
    if kind == activators_mod.REPLICATE:
        return ActivatorInstance(
            kind=kind,
            state=ReplicateState(
                remaining=state["remaining"],
                consumed=state["consumed"],
                drag_accum=float(state["drag_accum"]),
            ),
        )
    if kind == activators_mod.DISTRIBUTE:
        return ActivatorInstance(
            kind=kind,
            state=DistributeState(
                span_objects=list(state["span_objects"]),
                left_handle=tuple(float(v) for v in state["left_handle"]),
                right_handle=tuple(float(v) for v in state["right_handle"]),
                axis=state["axis"],
            ),
        )
    if kind == activators_mod.SORT:
        return ActivatorInstance(
            kind=kind,
            state=SortState(
                binding=_pair(state["binding"]),
                direction=state["direction"],
                span_objects=list(state["span_objects"]),
                axis=state["axis"],
            ),
        )
    return ActivatorInstance(kind=kind, state=None)


def deserialize_scene(data: bytes | str) -> Scene:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    return scene_from_tree(json.loads(text))


# -- SVG ----------------------------------------------------------------------------

def _svg_scribble(scribble: Scribble) -> str:
    if len(scribble.points) == 1:
        (x, y) = scribble.points[0]
        return (
            f'<circle cx="{fmt_number(x)}" cy="{fmt_number(y)}" '
            f'r="{fmt_number(scribble.width / 2)}" fill="{scribble.color}"/>'
        )
    coords = " ".join(f"{fmt_number(x)},{fmt_number(y)}" for x, y in scribble.points)
    return (
        f'<polyline points="{coords}" fill="none" stroke="{scribble.color}" '
        f'stroke-width="{fmt_number(scribble.width)}" '
        f'stroke-linecap="round" stroke-linejoin="round"/>'
    )


def _svg_object(obj: VisualObject) -> list[str]:
    elements = []
    if obj.geometry.closed:
        steps = " L ".join(f"{fmt_number(x)} {fmt_number(y)}" for x, y in obj.geometry.points)
        fill = obj.fill_color if obj.fill_color is not None else "none"
        elements.append(
            f'<path d="M {steps} Z" fill="{fill}" stroke="{obj.stroke_color}" '
            f'stroke-width="{fmt_number(obj.stroke_width)}"/>'
        )
    else:
        coords = " ".join(f"{fmt_number(x)},{fmt_number(y)}" for x, y in obj.geometry.points)
        elements.append(
            f'<polyline points="{coords}" fill="none" stroke="{obj.stroke_color}" '
            f'stroke-width="{fmt_number(obj.stroke_width)}"/>'
        )
    if obj.label_text is not None:
        (x0, y0), (x1, _) = bounding_box(obj)
        elements.append(
            f'<text x="{fmt_number((x0 + x1) / 2)}" y="{fmt_number(y0 - LABEL_GAP_PX)}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="{fmt_number(LABEL_FONT_SIZE)}" '
            f'fill="#000000">{escape(obj.label_text)}</text>'
        )
    return elements


def render_svg(scene: Scene, config: RenderConfig | None = None) -> bytes:
    """Emit the scene as deterministic SVG: scribbles underneath, objects in
    z-order, each label centered just above its mark."""
    config = config or RenderConfig()
    width, height = config.canvas_size
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt_number(width)}" '
        f'height="{fmt_number(height)}" '
        f'viewBox="0 0 {fmt_number(width)} {fmt_number(height)}">',
        f'  <rect x="0.000000" y="0.000000" width="{fmt_number(width)}" '
        f'height="{fmt_number(height)}" fill="{config.background}"/>',
    ]
    for scribble in scene.scribbles:
        lines.append("  " + _svg_scribble(scribble))
    for obj in scene.objects:
        for element in _svg_object(obj):
            lines.append("  " + element)
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
