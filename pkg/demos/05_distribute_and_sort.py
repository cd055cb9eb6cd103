"""Layout tools: even distribution and data-driven sorting.

A stroke drawn across the marks becomes a tool. Distribute gives it two
handles whose drag spreads the crossed marks' centers evenly; sort permutes
the marks over those same positions by a mapped dimension, ascending first,
flipped on each tap.
"""

from pathlib import Path

from sketchbind import (
    attach_activator,
    bounding_box,
    distribute_drag,
    draw_stroke,
    get_object,
    parse_script,
    render_svg,
    replay,
    sort_map,
    sort_toggle,
)
from sketchbind.script import ReplayConfig

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)


def centers(scene, ids):
    out = {}
    for oid in ids:
        (x0, _), (x1, _) = bounding_box(get_object(scene, oid))
        out[oid] = (x0 + x1) / 2
    return out


# Start from the replicated chart (steps 1-3 of the committed script).
steps_1_to_3 = """
load data trees.csv as trees
draw stroke tree [(40,340),(55,300),(45,300),(60,260),(50,260),(70,220),(90,260),(80,260),(95,300),(85,300),(100,340)] closed
apply fill #2e8b57 tree
attach label tree
attach height tree
map trees.name -> tree.label
map trees."avg.height" -> tree.height
attach replicate tree
drag tree.replicate by 400
"""
config = ReplayConfig(data_registry={"trees.csv": (HERE / "trees.csv").read_bytes()})
scene = replay(parse_script(steps_1_to_3), config).scene
family = ("tree", "tree~1", "tree~2")
print("after replication:", centers(scene, family))

ruler = draw_stroke(scene, [(20, 320), (400, 322)], object_id="ruler")
attach_activator(scene, ruler, "distribute")
distribute_drag(scene, ruler, "right", 420.0)
print("after distributing:", centers(scene, family))

attach_activator(scene, ruler, "sort")
sort_map(scene, ruler, "trees", "avg.height")
print("sorted ascending:  ", centers(scene, family))

sort_toggle(scene, ruler)
print("sorted descending: ", centers(scene, family))
sort_toggle(scene, ruler)

(OUT / "sorted_chart.svg").write_bytes(render_svg(scene))
print("wrote", OUT / "sorted_chart.svg")
