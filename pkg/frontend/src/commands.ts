// Command wire types: the JSON form the kernel bridge accepts. These mirror
// the kernel's closed vocabularies exactly; the Studio never invents kinds.

export type Point = [number, number];

export type PersistentKind = "label" | "height" | "width";
export type ActivatorKind = "ink" | "push" | "replicate" | "distribute" | "sort";
export type TransientKind = "fill" | "strokecolor" | "shape";

export const PERSISTENT_KINDS: PersistentKind[] = ["label", "height", "width"];
export const ACTIVATOR_KINDS: ActivatorKind[] = ["ink", "push", "replicate", "distribute", "sort"];
export const TRANSIENT_KINDS: TransientKind[] = ["fill", "strokecolor", "shape"];

export interface LoadData {
  op: "load_data";
  path: string;
  name: string;
}

export interface DrawStroke {
  op: "draw_stroke";
  id: string;
  points: Point[];
  closed: boolean;
  stroke_color: string | null;
  stroke_width: number | null;
}

export interface ApplyTransient {
  op: "apply_transient";
  id: string;
  modifier: { kind: TransientKind; color: string | null };
}

export interface AttachPersistent {
  op: "attach_persistent";
  id: string;
  kind: PersistentKind;
}

export interface DetachPersistent {
  op: "detach_persistent";
  id: string;
  kind: PersistentKind;
}

export interface MapDimension {
  op: "map_dimension";
  id: string;
  kind: PersistentKind;
  dataset: string;
  dimension: string;
}

export interface AttachActivator {
  op: "attach_activator";
  id: string;
  kind: ActivatorKind;
}

export interface DetachActivator {
  op: "detach_activator";
  id: string;
  kind: ActivatorKind;
}

export interface MoveObject {
  op: "move_object";
  id: string;
  delta: Point | null;
  path: Point[] | null;
}

export interface ReplicateDrag {
  op: "replicate_drag";
  id: string;
  dx: number;
}

export interface DistributeDrag {
  op: "distribute_drag";
  id: string;
  handle: "left" | "right";
  axis_pos: number;
}

export interface SortMap {
  op: "sort_map";
  id: string;
  dataset: string;
  dimension: string;
}

export interface SortToggle {
  op: "sort_toggle";
  id: string;
}

export interface SetScale {
  op: "set_scale";
  target_max_px: number;
}

export type Command =
  | LoadData
  | DrawStroke
  | ApplyTransient
  | AttachPersistent
  | DetachPersistent
  | MapDimension
  | AttachActivator
  | DetachActivator
  | MoveObject
  | ReplicateDrag
  | DistributeDrag
  | SortMap
  | SortToggle
  | SetScale;
