// Dataset panel view model: each loaded dataset shows either compressed
// (a chip with its name) or expanded (draggable dimension pills plus the
// records, in kernel order). Dimension pills carry the type cue: blue
// half-quotes for categorical, a green pound sign for quantitative.

import type { DatasetInfo } from "./sceneIndex.js";

export type PanelView = "compressed" | "expanded";

export const CATEGORICAL_GLYPH = "❝"; // heavy double comma quote
export const QUANTITATIVE_GLYPH = "#";
export const CATEGORICAL_COLOR = "#2f6fd6";
export const QUANTITATIVE_COLOR = "#2d8a3e";

export interface DimensionPill {
  dataset: string;
  dimension: string;
  glyph: string;
  color: string;
}

export class DatasetPanelState {
  private views = new Map<string, PanelView>();

  view(dataset: string): PanelView {
    return this.views.get(dataset) ?? "compressed";
  }

  toggle(dataset: string): PanelView {
    const next: PanelView = this.view(dataset) === "compressed" ? "expanded" : "compressed";
    this.views.set(dataset, next);
    return next;
  }
}

export function dimensionPills(dataset: DatasetInfo): DimensionPill[] {
  return dataset.dimensions.map((d) => ({
    dataset: dataset.name,
    dimension: d.name,
    glyph: d.dtype === "categorical" ? CATEGORICAL_GLYPH : QUANTITATIVE_GLYPH,
    color: d.dtype === "categorical" ? CATEGORICAL_COLOR : QUANTITATIVE_COLOR,
  }));
}

/** Records in kernel order, each as dimension-ordered "name: value" pairs. */
export function recordRows(dataset: DatasetInfo): string[][] {
  const rows: string[][] = [];
  for (let r = 0; r < dataset.recordCount; r++) {
    rows.push(dataset.dimensions.map((d) => `${d.name}: ${d.values[r]}`));
  }
  return rows;
}
