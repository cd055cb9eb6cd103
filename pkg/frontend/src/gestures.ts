// Gesture -> Command translation. Exactly one command per completed gesture;
// a gesture that lands outside every hit region (or on a disabled handle)
// yields null and the dragged icon snaps back. Previews during a drag are a
// rendering concern and never emit anything.

import type {
  ActivatorKind,
  Command,
  PersistentKind,
  Point,
  TransientKind,
} from "./commands.js";
import type { SceneIndex } from "./sceneIndex.js";

export type PaletteKind =
  | { group: "transient"; kind: TransientKind; color: string | null }
  | { group: "persistent"; kind: PersistentKind }
  | { group: "activator"; kind: ActivatorKind };

export type DimensionDropTarget =
  | { kind: "modifier-icon"; objectId: string; modifier: PersistentKind }
  | { kind: "sort-icon"; objectId: string };

export type Gesture =
  | { type: "stroke"; points: Point[]; closed: boolean }
  | { type: "palette-drop"; item: PaletteKind; targetObjectId: string | null }
  | { type: "icon-drag-off"; objectId: string; item: PaletteKind }
  | { type: "dimension-drop"; dataset: string; dimension: string; target: DimensionDropTarget | null }
  | { type: "object-drag"; objectId: string; path: Point[] }
  | { type: "replicate-pull"; objectId: string; dx: number }
  | { type: "distribute-handle-drag"; objectId: string; handle: "left" | "right"; axisPos: number }
  | { type: "sort-tap"; objectId: string };

export interface GestureContext {
  /** Machine-generated id for the next drawn stroke. */
  nextStrokeId(): string;
  /** Index over the latest kernel scene; null before the first apply. */
  scene: SceneIndex | null;
}

export function gestureToCommand(gesture: Gesture, ctx: GestureContext): Command | null {
  switch (gesture.type) {
    case "stroke": {
      if (gesture.points.length < 2) return null;
      return {
        op: "draw_stroke",
        id: ctx.nextStrokeId(),
        points: gesture.points,
        closed: gesture.closed,
        stroke_color: null,
        stroke_width: null,
      };
    }
    case "palette-drop": {
      if (gesture.targetObjectId === null) return null; // outside any hit region
      const { item } = gesture;
      if (item.group === "transient") {
        return {
          op: "apply_transient",
          id: gesture.targetObjectId,
          modifier: { kind: item.kind, color: item.kind === "shape" ? null : item.color },
        };
      }
      if (item.group === "persistent") {
        return { op: "attach_persistent", id: gesture.targetObjectId, kind: item.kind };
      }
      return { op: "attach_activator", id: gesture.targetObjectId, kind: item.kind };
    }
    case "icon-drag-off": {
      const { item } = gesture;
      if (item.group === "persistent") {
        return { op: "detach_persistent", id: gesture.objectId, kind: item.kind };
      }
      if (item.group === "activator") {
        return { op: "detach_activator", id: gesture.objectId, kind: item.kind };
      }
      return null; // transient modifiers are never docked, nothing to drag off
    }
    case "dimension-drop": {
      if (gesture.target === null) return null;
      if (gesture.target.kind === "sort-icon") {
        return {
          op: "sort_map",
          id: gesture.target.objectId,
          dataset: gesture.dataset,
          dimension: gesture.dimension,
        };
      }
      return {
        op: "map_dimension",
        id: gesture.target.objectId,
        kind: gesture.target.modifier,
        dataset: gesture.dataset,
        dimension: gesture.dimension,
      };
    }
    case "object-drag": {
      if (gesture.path.length === 0) return null;
      return { op: "move_object", id: gesture.objectId, delta: null, path: gesture.path };
    }
    case "replicate-pull": {
      const handle = ctx.scene?.replicateHandle(gesture.objectId) ?? null;
      if (handle === null || handle.disabled) return null; // grayed out: no gesture accepted
      if (gesture.dx < 0) return null;
      return { op: "replicate_drag", id: gesture.objectId, dx: gesture.dx };
    }
    case "distribute-handle-drag": {
      return {
        op: "distribute_drag",
        id: gesture.objectId,
        handle: gesture.handle,
        axis_pos: gesture.axisPos,
      };
    }
    case "sort-tap": {
      return { op: "sort_toggle", id: gesture.objectId };
    }
  }
}
