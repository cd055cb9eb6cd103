// The palette mirrors the kernel's closed kind vocabularies exactly: three
// transient modifiers, three persistent modifiers, five activators.

import {
  ACTIVATOR_KINDS,
  PERSISTENT_KINDS,
  TRANSIENT_KINDS,
} from "./commands.js";
import type { PaletteKind } from "./gestures.js";

export interface PaletteItem {
  id: string;
  label: string;
  glyph: string;
  kind: PaletteKind;
}

export const FILL_COLOR = "#2e8b57";
export const STROKE_COLOR = "#0000ff";

const GLYPHS: Record<string, string> = {
  fill: "■", // filled square
  strokecolor: "✎", // pencil
  shape: "○", // circle outline
  label: "T",
  height: "↕", // up-down arrow
  width: "↔", // left-right arrow
  ink: "✒", // nib
  push: "⇨", // heavy arrow
  replicate: "⧉", // two joined squares
  distribute: "⇔", // double arrow
  sort: "↑↓",
};

export function buildPalette(): PaletteItem[] {
  const items: PaletteItem[] = [];
  for (const kind of TRANSIENT_KINDS) {
    items.push({
      id: `transient-${kind}`,
      label: kind,
      glyph: GLYPHS[kind],
      kind: {
        group: "transient",
        kind,
        color: kind === "fill" ? FILL_COLOR : kind === "strokecolor" ? STROKE_COLOR : null,
      },
    });
  }
  for (const kind of PERSISTENT_KINDS) {
    items.push({
      id: `persistent-${kind}`,
      label: kind,
      glyph: GLYPHS[kind],
      kind: { group: "persistent", kind },
    });
  }
  for (const kind of ACTIVATOR_KINDS) {
    items.push({
      id: `activator-${kind}`,
      label: kind,
      glyph: GLYPHS[kind],
      kind: { group: "activator", kind },
    });
  }
  return items;
}
