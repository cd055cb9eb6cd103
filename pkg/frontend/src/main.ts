// Studio wiring: one canvas, one palette, one dataset panel, one command
// log. Every completed pointer gesture becomes exactly one kernel command;
// the scene shown is always the kernel's replay of the log, never local.

import type { Point } from "./commands.js";
import { DatasetPanelState, dimensionPills, recordRows } from "./datasetPanel.js";
import type { DimensionDropTarget, Gesture, PaletteKind } from "./gestures.js";
import { KernelClient } from "./kernel.js";
import { buildPalette } from "./palette.js";
import { HANDLE_RADIUS } from "./sceneIndex.js";
import { Session } from "./session.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CANVAS_W = 960;
const CANVAS_H = 540;
const BRIDGE_URL = new URLSearchParams(location.search).get("bridge") ?? "http://127.0.0.1:8787";

type Mode = "draw" | "move";

interface DragState {
  kind:
    | { type: "stroke"; points: Point[] }
    | { type: "object"; objectId: string; path: Point[] }
    | { type: "palette"; item: PaletteKind; ghost: HTMLElement }
    | { type: "dimension"; dataset: string; dimension: string; ghost: HTMLElement }
    | { type: "replicate"; objectId: string; startX: number }
    | { type: "distribute"; objectId: string; handle: "left" | "right"; axis: "x" | "y" }
    | { type: "icon"; objectId: string; item: PaletteKind; start: Point; moved: boolean };
}

class Studio {
  session = new Session(new KernelClient(BRIDGE_URL, 300, [CANVAS_W, CANVAS_H]));
  panel = new DatasetPanelState();
  mode: Mode = "draw";
  drag: DragState["kind"] | null = null;
  datasetCounter = 0;

  sceneHost = document.getElementById("scene") as HTMLDivElement;
  overlay = document.getElementById("overlay") as unknown as SVGSVGElement;
  paletteHost = document.getElementById("palette") as HTMLDivElement;
  datasetHost = document.getElementById("datasets") as HTMLDivElement;
  statusHost = document.getElementById("status") as HTMLDivElement;
  logHost = document.getElementById("log") as HTMLPreElement;

  start(): void {
    this.buildPaletteDom();
    this.bindToolbar();
    this.bindCanvas();
    this.refresh();
  }

  // -- plumbing ---------------------------------------------------------------

  canvasPoint(event: PointerEvent): Point {
    const rect = this.overlay.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  async perform(gesture: Gesture): Promise<void> {
    const result = await this.session.perform(gesture);
    if (result === null) {
      this.setStatus("no target: gesture ignored");
    } else if (!result.ok) {
      this.setStatus(`kernel: ${result.error.message}`);
    } else {
      this.setStatus("");
    }
    this.refresh();
  }

  setStatus(text: string): void {
    this.statusHost.textContent = text;
  }

  refresh(): void {
    this.sceneHost.innerHTML = this.session.svg;
    this.renderOverlay();
    this.renderDatasets();
    this.logHost.textContent = this.session.exportScript();
  }

  // -- toolbar ---------------------------------------------------------------

  bindToolbar(): void {
    document.getElementById("mode-draw")!.addEventListener("click", () => this.setMode("draw"));
    document.getElementById("mode-move")!.addEventListener("click", () => this.setMode("move"));
    document.getElementById("undo")!.addEventListener("click", async () => {
      await this.session.undo();
      this.refresh();
    });
    document.getElementById("export")!.addEventListener("click", () => this.exportScript());
    const fileInput = document.getElementById("csv-input") as HTMLInputElement;
    document.getElementById("import")!.addEventListener("click", () => fileInput.click());
    fileInput.addEventListener("change", async () => {
      const file = fileInput.files?.[0];
      if (!file) return;
      const text = await file.text();
      const name = file.name.replace(/\.[^.]*$/, "").replace(/[^A-Za-z0-9_~-]/g, "_") || `data${++this.datasetCounter}`;
      const result = await this.session.importCsv(file.name, text, name);
      this.setStatus(result.ok ? `loaded ${name}` : `kernel: ${result.error.message}`);
      fileInput.value = "";
      this.refresh();
    });
  }

  setMode(mode: Mode): void {
    this.mode = mode;
    document.getElementById("mode-draw")!.classList.toggle("active", mode === "draw");
    document.getElementById("mode-move")!.classList.toggle("active", mode === "move");
  }

  exportScript(): void {
    const blob = new Blob([this.session.exportScript()], { type: "text/plain" });
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = "session.dsl";
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  }

  // -- palette ---------------------------------------------------------------

  buildPaletteDom(): void {
    for (const item of buildPalette()) {
      const chip = document.createElement("div");
      chip.className = `chip ${item.kind.group}`;
      chip.innerHTML = `<span class="glyph">${item.glyph}</span>${item.label}`;
      chip.addEventListener("pointerdown", (event) => {
        event.preventDefault();
        this.drag = { type: "palette", item: item.kind, ghost: this.makeGhost(item.label, event) };
      });
      this.paletteHost.appendChild(chip);
    }
  }

  makeGhost(text: string, event: PointerEvent): HTMLElement {
    const ghost = document.createElement("div");
    ghost.className = "ghost";
    ghost.textContent = text;
    document.body.appendChild(ghost);
    ghost.style.left = `${event.clientX + 8}px`;
    ghost.style.top = `${event.clientY + 8}px`;
    return ghost;
  }

  // -- dataset panel -----------------------------------------------------------

  renderDatasets(): void {
    this.datasetHost.innerHTML = "";
    const scene = this.session.scene;
    if (scene === null || scene.datasets.length === 0) {
      this.datasetHost.innerHTML = '<div class="hint">import a CSV to begin</div>';
      return;
    }
    for (const dataset of scene.datasets) {
      const card = document.createElement("div");
      card.className = "dataset";
      const head = document.createElement("div");
      head.className = "dataset-head";
      head.textContent = `${dataset.name} (${dataset.recordCount})`;
      head.addEventListener("click", () => {
        this.panel.toggle(dataset.name);
        this.renderDatasets();
      });
      card.appendChild(head);
      if (this.panel.view(dataset.name) === "expanded") {
        for (const pill of dimensionPills(dataset)) {
          const el = document.createElement("div");
          el.className = "pill";
          el.style.borderColor = pill.color;
          el.innerHTML = `<span style="color:${pill.color}">${pill.glyph}</span> ${pill.dimension}`;
          el.addEventListener("pointerdown", (event) => {
            event.preventDefault();
            this.drag = {
              type: "dimension",
              dataset: pill.dataset,
              dimension: pill.dimension,
              ghost: this.makeGhost(pill.dimension, event),
            };
          });
          card.appendChild(el);
        }
        const records = document.createElement("div");
        records.className = "records";
        records.textContent = recordRows(dataset)
          .map((row, i) => `[${i}] ${row.join(", ")}`)
          .join("\n");
        card.appendChild(records);
      }
      this.datasetHost.appendChild(card);
    }
  }

  // -- canvas interactions -----------------------------------------------------

  bindCanvas(): void {
    this.overlay.addEventListener("pointerdown", (event) => this.onPointerDown(event));
    window.addEventListener("pointermove", (event) => this.onPointerMove(event));
    window.addEventListener("pointerup", (event) => this.onPointerUp(event));
  }

  onPointerDown(event: PointerEvent): void {
    if (this.drag !== null) return; // a palette/dimension drag is in flight
    const [x, y] = this.canvasPoint(event);
    const scene = this.session.scene;

    const replicate = scene?.hitReplicateHandle(x, y) ?? null;
    if (replicate !== null) {
      if (replicate.disabled) {
        this.setStatus("replicate handle is exhausted");
        return; // grayed out: accepts no drag gestures
      }
      this.drag = { type: "replicate", objectId: replicate.objectId, startX: x };
      return;
    }
    const distribute = scene?.hitDistributeHandle(x, y) ?? null;
    if (distribute !== null) {
      const axis = scene!.distributeHandles.find((h) => h.objectId === distribute.objectId)!.axis;
      this.drag = { type: "distribute", ...distribute, axis };
      return;
    }
    const icon = this.hitIcon(x, y);
    if (icon !== null) {
      this.drag = { type: "icon", objectId: icon.objectId, item: icon.item, start: [x, y], moved: false };
      return;
    }
    if (this.mode === "move") {
      const hit = scene?.hitObject(x, y) ?? null;
      if (hit !== null) {
        this.drag = { type: "object", objectId: hit.id, path: [[x, y]] };
        return;
      }
    }
    this.drag = { type: "stroke", points: [[x, y]] };
  }

  /** Where a dragged dimension pill may land: a modifier icon or a sort icon. */
  dimensionTarget(x: number, y: number): DimensionDropTarget | null {
    const scene = this.session.scene;
    if (scene === null) return null;
    for (const obj of scene.objects) {
      for (const region of scene.modifierIconRegions(obj.id)) {
        const { box } = region;
        if (x >= box.x0 && x <= box.x1 && y >= box.y0 && y <= box.y1) {
          return { kind: "modifier-icon", objectId: obj.id, modifier: region.kind };
        }
      }
      for (const region of scene.activatorIconRegions(obj.id)) {
        const { box } = region;
        if (region.kind === "sort" && x >= box.x0 && x <= box.x1 && y >= box.y0 && y <= box.y1) {
          return { kind: "sort-icon", objectId: obj.id };
        }
      }
    }
    return null;
  }

  hitIcon(x: number, y: number): { objectId: string; item: PaletteKind } | null {
    const scene = this.session.scene;
    if (scene === null) return null;
    for (const obj of scene.objects) {
      for (const region of scene.modifierIconRegions(obj.id)) {
        const { box } = region;
        if (x >= box.x0 && x <= box.x1 && y >= box.y0 && y <= box.y1) {
          return { objectId: obj.id, item: { group: "persistent", kind: region.kind } };
        }
      }
      for (const region of scene.activatorIconRegions(obj.id)) {
        const { box } = region;
        if (x >= box.x0 && x <= box.x1 && y >= box.y0 && y <= box.y1) {
          return { objectId: obj.id, item: { group: "activator", kind: region.kind } };
        }
      }
    }
    return null;
  }

  onPointerMove(event: PointerEvent): void {
    if (this.drag === null) return;
    const [x, y] = this.canvasPoint(event);
    switch (this.drag.type) {
      case "stroke":
        this.drag.points.push([x, y]);
        this.renderOverlay(this.drag.points);
        break;
      case "object":
        this.drag.path.push([x, y]);
        break;
      case "palette":
      case "dimension":
        this.drag.ghost.style.left = `${event.clientX + 8}px`;
        this.drag.ghost.style.top = `${event.clientY + 8}px`;
        break;
      case "icon":
        if (Math.hypot(x - this.drag.start[0], y - this.drag.start[1]) > 10) {
          this.drag.moved = true;
        }
        break;
      default:
        break; // replicate/distribute commit on pointer up
    }
  }

  async onPointerUp(event: PointerEvent): Promise<void> {
    if (this.drag === null) return;
    const [x, y] = this.canvasPoint(event);
    const drag = this.drag;
    this.drag = null;
    const scene = this.session.scene;

    switch (drag.type) {
      case "stroke": {
        const points = drag.points;
        const closed =
          points.length > 2 &&
          Math.hypot(points[0][0] - x, points[0][1] - y) < 12;
        await this.perform({ type: "stroke", points: this.thin(points), closed });
        break;
      }
      case "object":
        await this.perform({ type: "object-drag", objectId: drag.objectId, path: this.thin(drag.path) });
        break;
      case "palette": {
        drag.ghost.remove();
        const target = scene?.hitObject(x, y)?.id ?? null;
        await this.perform({ type: "palette-drop", item: drag.item, targetObjectId: target });
        break;
      }
      case "dimension": {
        drag.ghost.remove();
        await this.perform({
          type: "dimension-drop",
          dataset: drag.dataset,
          dimension: drag.dimension,
          target: this.dimensionTarget(x, y),
        });
        break;
      }
      case "replicate":
        await this.perform({ type: "replicate-pull", objectId: drag.objectId, dx: Math.max(0, x - drag.startX) });
        break;
      case "distribute":
        await this.perform({
          type: "distribute-handle-drag",
          objectId: drag.objectId,
          handle: drag.handle,
          axisPos: drag.axis === "x" ? x : y,
        });
        break;
      case "icon": {
        if (!drag.moved && drag.item.group === "activator" && drag.item.kind === "sort") {
          await this.perform({ type: "sort-tap", objectId: drag.objectId });
        } else if (drag.moved && scene?.hitObject(x, y)?.id !== drag.objectId) {
          await this.perform({ type: "icon-drag-off", objectId: drag.objectId, item: drag.item });
        }
        break;
      }
    }
  }

  /** Keep gesture paths light; the kernel stores whatever it is given. */
  thin(points: Point[]): Point[] {
    if (points.length <= 64) return points;
    const step = points.length / 64;
    const out: Point[] = [];
    for (let i = 0; i < 64; i++) out.push(points[Math.floor(i * step)]);
    out.push(points[points.length - 1]);
    return out;
  }

  // -- overlay ------------------------------------------------------------------

  renderOverlay(preview?: Point[]): void {
    while (this.overlay.firstChild) this.overlay.firstChild.remove();
    const scene = this.session.scene;
    if (preview && preview.length > 1) {
      const line = document.createElementNS(SVG_NS, "polyline");
      line.setAttribute("points", preview.map((p) => p.join(",")).join(" "));
      line.setAttribute("fill", "none");
      line.setAttribute("stroke", "#888888");
      line.setAttribute("stroke-dasharray", "4 3");
      this.overlay.appendChild(line);
    }
    if (scene === null) return;

    for (const obj of scene.objects) {
      for (const region of scene.modifierIconRegions(obj.id)) {
        this.drawIcon(region.box, region.kind[0].toUpperCase(), "#5b4b8a");
      }
      for (const region of scene.activatorIconRegions(obj.id)) {
        this.drawIcon(region.box, region.kind[0].toUpperCase(), "#8a5b4b");
      }
    }
    for (const handle of scene.replicateHandles) {
      const [cx, cy] = handle.center;
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(cx));
      circle.setAttribute("cy", String(cy));
      circle.setAttribute("r", String(HANDLE_RADIUS));
      circle.setAttribute("fill", handle.disabled ? "#bbbbbb" : "#e8b51d");
      circle.setAttribute("class", handle.disabled ? "handle disabled" : "handle");
      this.overlay.appendChild(circle);
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(cx));
      text.setAttribute("y", String(cy - HANDLE_RADIUS - 2));
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("font-size", "11");
      text.textContent = String(handle.remaining);
      this.overlay.appendChild(text);
    }
    for (const handles of scene.distributeHandles) {
      for (const point of [handles.left, handles.right]) {
        const circle = document.createElementNS(SVG_NS, "circle");
        circle.setAttribute("cx", String(point[0]));
        circle.setAttribute("cy", String(point[1]));
        circle.setAttribute("r", String(HANDLE_RADIUS));
        circle.setAttribute("fill", "none");
        circle.setAttribute("stroke", "#3478c6");
        circle.setAttribute("stroke-width", "2");
        this.overlay.appendChild(circle);
      }
    }
  }

  drawIcon(box: { x0: number; y0: number; x1: number; y1: number }, letter: string, color: string): void {
    const rect = document.createElementNS(SVG_NS, "rect");
    rect.setAttribute("x", String(box.x0));
    rect.setAttribute("y", String(box.y0));
    rect.setAttribute("width", String(box.x1 - box.x0));
    rect.setAttribute("height", String(box.y1 - box.y0));
    rect.setAttribute("rx", "3");
    rect.setAttribute("fill", "#ffffff");
    rect.setAttribute("stroke", color);
    this.overlay.appendChild(rect);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String((box.x0 + box.x1) / 2));
    text.setAttribute("y", String(box.y1 - 4));
    text.setAttribute("text-anchor", "middle");
    text.setAttribute("font-size", "11");
    text.setAttribute("fill", color);
    text.textContent = letter;
    this.overlay.appendChild(text);
  }
}

new Studio().start();
