"""Constructing a pen: the ink activator and its removal guarantees.

An inert stroke becomes a drawing tool the moment an ink activator lands on
it. Recoloring the stroke recolors only future ink; detaching the activator
stops the drawing but touches neither the stroke nor the old scribbles.
"""

from pathlib import Path

from sketchbind import (
    Scene,
    TransientModifier,
    apply_transient,
    attach_activator,
    detach_activator,
    draw_stroke,
    ink_move,
    move_object,
    render_svg,
)

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

scene = Scene()
pen = draw_stroke(scene, [(100, 100), (140, 100)])

attach_activator(scene, pen, "ink")
ink_move(scene, pen, [(120, 140), (200, 180), (260, 160)])
print("scribbles after the first stroke:", [(s.id, s.color) for s in scene.scribbles])

apply_transient(scene, pen, TransientModifier("strokecolor", "#0000ff"))
ink_move(scene, pen, [(270, 200), (320, 240)])

apply_transient(scene, pen, TransientModifier("strokecolor", "#ffa500"))
move_object(scene, pen, (40, 40))  # plain moves also draw while ink is attached

detach_activator(scene, pen, "ink")
move_object(scene, pen, (10, 0))  # no longer draws

print("final scribbles:", [(s.id, s.color, len(s.points)) for s in scene.scribbles])
(OUT / "pen.svg").write_bytes(render_svg(scene))
print("wrote", OUT / "pen.svg")
