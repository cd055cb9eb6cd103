"""Replication: one mapped mark becomes a whole chart.

The replicate handle spawns copies bound to successive records; each copy
reuses the original's frozen value-to-pixel scale, so the family stays
proportionally comparable. The handle's remaining count hits zero when the
dataset is exhausted, after which drags are no-ops.
"""

from pathlib import Path

from sketchbind import (
    Scene,
    attach_activator,
    attach_persistent,
    draw_stroke,
    get_object,
    load_csv,
    map_dimension,
    object_height,
    render_svg,
    replicate_drag,
)
from sketchbind.activators import find_activator

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

scene = Scene()
scene.datasets["trees"] = load_csv((HERE / "trees.csv").read_bytes(), "trees")

tree = draw_stroke(
    scene,
    [(40, 340), (55, 300), (45, 300), (60, 260), (50, 260), (70, 220),
     (90, 260), (80, 260), (95, 300), (85, 300), (100, 340)],
    closed=True,
)
attach_persistent(scene, tree, "label")
attach_persistent(scene, tree, "height")
map_dimension(scene, tree, "label", "trees", "name")
map_dimension(scene, tree, "height", "trees", "avg.height")

attach_activator(scene, tree, "replicate")
state = find_activator(get_object(scene, tree), "replicate").state
print("records left to replicate:", state.remaining)

for pull in (70.0, 300.0, 500.0):
    replicate_drag(scene, tree, pull)
    print(
        f"after dragging {pull:5.0f}px: {len(scene.objects)} marks, "
        f"remaining={state.remaining}"
    )

for obj in scene.objects:
    print(f"  {obj.id:8s} record={obj.record_index} "
          f"label={obj.label_text!r} height={object_height(obj):.6f}")

(OUT / "replicated.svg").write_bytes(render_svg(scene))
print("wrote", OUT / "replicated.svg")
