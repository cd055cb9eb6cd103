// Bridge client. The kernel is the single source of truth: the Studio sends
// the whole command log every time and shows whatever comes back.

import type { Command } from "./commands.js";

export interface ApplyOk {
  ok: true;
  scene_dump: string;
  svg: string;
  script: string;
}

export interface ApplyError {
  ok: false;
  error: { stage: string; index?: number; message: string };
}

export type ApplyResult = ApplyOk | ApplyError;

export class KernelClient {
  constructor(
    readonly baseUrl: string,
    readonly maxHeight: number = 300,
    readonly canvas: [number, number] = [960, 540]
  ) {}

  async apply(commands: Command[], data: Record<string, string>): Promise<ApplyResult> {
    const response = await fetch(`${this.baseUrl}/apply`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        commands,
        data,
        max_height: this.maxHeight,
        canvas: this.canvas,
      }),
    });
    return (await response.json()) as ApplyResult;
  }

  async render(sceneDump: string): Promise<string> {
    const response = await fetch(`${this.baseUrl}/render`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ scene_dump: sceneDump, canvas: this.canvas }),
    });
    const tree = await response.json();
    if (!tree.ok) throw new Error(tree.error.message);
    return tree.svg as string;
  }
}
