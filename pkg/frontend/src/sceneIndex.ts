// Read-only index over the kernel's canonical scene dump. The Studio never
// mutates any of this; it only derives hit regions and overlay geometry
// (icon docks, handles, the replicate counter) for the next gesture.

import type { ActivatorKind, PersistentKind, Point } from "./commands.js";

export interface Box {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface ReplicateHandle {
  objectId: string;
  remaining: number;
  disabled: boolean;
  center: Point; // docked right of the mark's modifier row
}

export interface DistributeHandles {
  objectId: string;
  axis: "x" | "y";
  left: Point;
  right: Point;
}

export interface ObjectInfo {
  id: string;
  box: Box;
  closed: boolean;
  labelText: string | null;
  recordIndex: number | null;
  modifiers: { kind: PersistentKind; bound: boolean }[];
  activators: ActivatorKind[];
}

export interface DatasetInfo {
  name: string;
  recordCount: number;
  dimensions: { name: string; dtype: "categorical" | "quantitative"; values: string[] }[];
}

const ICON_SIZE = 16;
export const HANDLE_RADIUS = 12; // px hit targets for handles

function boxOf(points: [string, string][]): Box {
  const xs = points.map((p) => parseFloat(p[0]));
  const ys = points.map((p) => parseFloat(p[1]));
  return {
    x0: Math.min(...xs),
    y0: Math.min(...ys),
    x1: Math.max(...xs),
    y1: Math.max(...ys),
  };
}

export class SceneIndex {
  readonly objects: ObjectInfo[] = [];
  readonly datasets: DatasetInfo[] = [];
  readonly replicateHandles: ReplicateHandle[] = [];
  readonly distributeHandles: DistributeHandles[] = [];

  constructor(sceneDump: string) {
    const tree = JSON.parse(sceneDump);
    for (const name of Object.keys(tree.datasets)) {
      const ds = tree.datasets[name];
      this.datasets.push({
        name,
        recordCount: ds.record_count,
        dimensions: ds.dimensions.map((d: any) => ({
          name: d.name,
          dtype: d.dtype,
          values: d.values,
        })),
      });
    }
    for (const o of tree.objects) {
      const box = boxOf(o.geometry.points);
      this.objects.push({
        id: o.id,
        box,
        closed: o.geometry.closed,
        labelText: o.label_text,
        recordIndex: o.record_index,
        modifiers: o.persistent_modifiers.map((m: any) => ({
          kind: m.kind,
          bound: m.binding !== null,
        })),
        activators: o.activators.map((a: any) => a.kind),
      });
      for (const a of o.activators) {
        if (a.kind === "replicate") {
          this.replicateHandles.push({
            objectId: o.id,
            remaining: a.state.remaining,
            disabled: a.state.remaining === 0,
            center: [box.x1 + ICON_SIZE, box.y1 + ICON_SIZE],
          });
        } else if (a.kind === "distribute") {
          this.distributeHandles.push({
            objectId: o.id,
            axis: a.state.axis,
            left: [parseFloat(a.state.left_handle[0]), parseFloat(a.state.left_handle[1])],
            right: [parseFloat(a.state.right_handle[0]), parseFloat(a.state.right_handle[1])],
          });
        }
      }
    }
  }

  object(id: string): ObjectInfo | null {
    return this.objects.find((o) => o.id === id) ?? null;
  }

  /** Topmost object whose bbox contains the point (z-order respected). */
  hitObject(x: number, y: number, slack = 4): ObjectInfo | null {
    for (let i = this.objects.length - 1; i >= 0; i--) {
      const { box } = this.objects[i];
      if (x >= box.x0 - slack && x <= box.x1 + slack && y >= box.y0 - slack && y <= box.y1 + slack) {
        return this.objects[i];
      }
    }
    return null;
  }

  replicateHandle(objectId: string): ReplicateHandle | null {
    return this.replicateHandles.find((h) => h.objectId === objectId) ?? null;
  }

  hitReplicateHandle(x: number, y: number): ReplicateHandle | null {
    return (
      this.replicateHandles.find(
        (h) => Math.hypot(x - h.center[0], y - h.center[1]) <= HANDLE_RADIUS
      ) ?? null
    );
  }

  hitDistributeHandle(
    x: number,
    y: number
  ): { objectId: string; handle: "left" | "right" } | null {
    for (const h of this.distributeHandles) {
      if (Math.hypot(x - h.left[0], y - h.left[1]) <= HANDLE_RADIUS) {
        return { objectId: h.objectId, handle: "left" };
      }
      if (Math.hypot(x - h.right[0], y - h.right[1]) <= HANDLE_RADIUS) {
        return { objectId: h.objectId, handle: "right" };
      }
    }
    return null;
  }

  /** Icon row docked beneath the mark, one slot per attached modifier. */
  modifierIconRegions(objectId: string): { kind: PersistentKind; box: Box }[] {
    const obj = this.object(objectId);
    if (!obj) return [];
    return obj.modifiers.map((m, i) => ({
      kind: m.kind,
      box: {
        x0: obj.box.x0 + i * (ICON_SIZE + 4),
        y0: obj.box.y1 + 4,
        x1: obj.box.x0 + i * (ICON_SIZE + 4) + ICON_SIZE,
        y1: obj.box.y1 + 4 + ICON_SIZE,
      },
    }));
  }

  /** Activator icons docked to the object's top-right corner. */
  activatorIconRegions(objectId: string): { kind: ActivatorKind; box: Box }[] {
    const obj = this.object(objectId);
    if (!obj) return [];
    return obj.activators.map((kind, i) => ({
      kind,
      box: {
        x0: obj.box.x1 + 4,
        y0: obj.box.y0 + i * (ICON_SIZE + 4),
        x1: obj.box.x1 + 4 + ICON_SIZE,
        y1: obj.box.y0 + i * (ICON_SIZE + 4) + ICON_SIZE,
      },
    }));
  }
}
