"""Scripts are the source of truth: parse, format, replay, byte-stable output.

The whole authoring session is a list of commands. Formatting and parsing
round-trip exactly, and two replays of the same script produce identical
scene dumps and identical SVG, byte for byte.
"""

from pathlib import Path

from sketchbind import format_commands, parse_script, render_svg, replay, serialize_scene
from sketchbind.script import ReplayConfig

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

commands = parse_script((HERE / "tree_chart.dsl").read_text())
print(f"{len(commands)} commands; canonical form of the first three:")
print(format_commands(commands[:3]))

assert parse_script(format_commands(commands)) == commands
print("parse(format(commands)) == commands")

config = ReplayConfig(data_registry={"trees.csv": (HERE / "trees.csv").read_bytes()})
first = replay(commands, config).scene
second = replay(commands, config).scene
assert serialize_scene(first) == serialize_scene(second)
assert render_svg(first) == render_svg(second)
print("two replays, identical bytes")

(OUT / "tree_chart.svg").write_bytes(render_svg(first))
(OUT / "tree_chart.json").write_bytes(serialize_scene(first))
print("wrote", OUT / "tree_chart.svg", "and", OUT / "tree_chart.json")
