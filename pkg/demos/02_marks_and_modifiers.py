"""From a hand-drawn stroke to a data-bound mark.

Transient modifiers (fill, shape) restyle an object once and vanish.
Persistent modifiers (label, height) stay attached, do nothing while
unbound, and take effect the moment a data dimension is mapped onto them.
"""

from pathlib import Path

from sketchbind import (
    Scene,
    TransientModifier,
    apply_transient,
    attach_persistent,
    draw_stroke,
    get_object,
    load_csv,
    map_dimension,
    object_height,
    render_svg,
)

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

scene = Scene()
scene.datasets["trees"] = load_csv((HERE / "trees.csv").read_bytes(), "trees")

# A rough tree outline, drawn closed so it can take a fill.
tree = draw_stroke(
    scene,
    [(40, 340), (55, 300), (45, 300), (60, 260), (50, 260), (70, 220),
     (90, 260), (80, 260), (95, 300), (85, 300), (100, 340)],
    closed=True,
)
apply_transient(scene, tree, TransientModifier("fill", "#2e8b57"))
print("fill:", get_object(scene, tree).fill_color)

# Attaching modifiers changes nothing on the mark itself...
attach_persistent(scene, tree, "label")
attach_persistent(scene, tree, "height")
print("height before mapping:", object_height(get_object(scene, tree)))

# ...mapping does: the label shows name[0], the height becomes
# avg.height[0] * (300 / max(avg.height)).
map_dimension(scene, tree, "label", "trees", "name")
map_dimension(scene, tree, "height", "trees", "avg.height")
print("label:", get_object(scene, tree).label_text)
print("height after mapping:", object_height(get_object(scene, tree)))

(OUT / "mark.svg").write_bytes(render_svg(scene))
print("wrote", OUT / "mark.svg")

# A wobbly rectangle snapped to a regular shape by the shape modifier.
blob = draw_stroke(
    scene,
    [(200, 100), (260, 102), (321, 99), (320, 160), (319, 220), (260, 218), (201, 221), (199, 161)],
    closed=True,
)
apply_transient(scene, blob, TransientModifier("shape"))
print("beautified corners:", get_object(scene, blob).geometry.points)
