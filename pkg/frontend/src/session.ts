// The authoring session: an ordered command log and nothing else. All scene
// state is the kernel's replay of that log; undo is a prefix replay; export
// is the kernel's canonical formatting of the log.

import type { Command } from "./commands.js";
import { gestureToCommand, type Gesture } from "./gestures.js";
import type { ApplyOk, ApplyResult, KernelClient } from "./kernel.js";
import { SceneIndex } from "./sceneIndex.js";

export class Session {
  private log: Command[] = [];
  private dataFiles: Record<string, string> = {};
  private strokeCounter = 0;
  private last: ApplyOk | null = null;
  private exportedScript = "";

  constructor(private kernel: KernelClient) {}

  get commandLog(): readonly Command[] {
    return this.log;
  }

  get scene(): SceneIndex | null {
    return this.last === null ? null : new SceneIndex(this.last.scene_dump);
  }

  get svg(): string {
    return this.last?.svg ?? "";
  }

  get sceneDump(): string {
    return this.last?.scene_dump ?? "";
  }

  /** The command log as kernel-formatted script text; empty for a fresh session. */
  exportScript(): string {
    return this.exportedScript;
  }

  /** Translate a completed gesture, try it on the kernel, keep it if accepted. */
  async perform(gesture: Gesture): Promise<ApplyResult | null> {
    const command = gestureToCommand(gesture, {
      nextStrokeId: () => `s${this.strokeCounter + 1}`,
      scene: this.scene,
    });
    if (command === null) return null;
    const result = await this.kernel.apply([...this.log, command], this.dataFiles);
    if (!result.ok) return result; // rejected: the log is untouched, the icon snaps back
    if (command.op === "draw_stroke") this.strokeCounter += 1;
    this.log.push(command);
    this.last = result;
    this.exportedScript = result.script;
    return result;
  }

  /** Import a CSV: registers its bytes and appends the load command. */
  async importCsv(fileName: string, text: string, datasetName: string): Promise<ApplyResult> {
    this.dataFiles[fileName] = text;
    const command: Command = { op: "load_data", path: fileName, name: datasetName };
    const result = await this.kernel.apply([...this.log, command], this.dataFiles);
    if (result.ok) {
      this.log.push(command);
      this.last = result;
      this.exportedScript = result.script;
    }
    return result;
  }

  /** Undo: drop the last command and replay the remaining prefix. */
  async undo(): Promise<ApplyResult | null> {
    if (this.log.length === 0) return null;
    const prefix = this.log.slice(0, -1);
    const result = await this.kernel.apply(prefix, this.dataFiles);
    if (!result.ok) return result; // a valid log's prefix replays; keep state on surprise
    this.log = prefix;
    this.last = result;
    this.exportedScript = result.script;
    return result;
  }

  get dataFileNames(): string[] {
    return Object.keys(this.dataFiles);
  }
}
