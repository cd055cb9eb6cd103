"""sketchbind: a constructive chart-authoring kernel.

Hand-drawn strokes become inert objects; transient modifiers restyle them,
persistent modifiers bind tabular data to their attributes, and activators
turn them into tools (ink pens, pushers, replicators, distribute/sort tools).
Every authoring action is a command: scripts of commands replay
deterministically into scenes, and scenes render to byte-stable SVG.
"""

from .activators import (
    attach_activator,
    detach_activator,
    distribute_drag,
    ink_move,
    push_move,
    replicate_drag,
    sort_map,
    sort_toggle,
)
from .errors import KernelError, ParseError, ReplayError
from .modifiers import (
    ScaleSnapshot,
    TransientModifier,
    apply_transient,
    attach_persistent,
    beautify_shape,
    detach_persistent,
    map_dimension,
    resolve_bindings,
)
from .render import (
    RenderConfig,
    deserialize_scene,
    render_svg,
    scene_to_tree,
    serialize_scene,
)
from .scene import (
    Scene,
    Scribble,
    StrokeGeometry,
    VisualObject,
    bounding_box,
    draw_stroke,
    get_object,
    move_along,
    move_object,
    object_height,
    object_width,
    set_height,
    set_width,
)
from .script import (
    Command,
    ReplayConfig,
    ReplayResult,
    format_commands,
    parse_script,
    replay,
)
from .tabular import (
    CATEGORICAL,
    QUANTITATIVE,
    Dataset,
    Dimension,
    Record,
    get_dimension,
    get_record,
    infer_dtype,
    load_csv,
)

__version__ = "0.1.0"
