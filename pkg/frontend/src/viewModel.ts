/**
 * Mirrored session state: a pure projection of the scene-update stream.
 *
 * Updates must arrive in revision order with no gaps; anything else flags
 * the model as stale and asks the owner for a full resync (the client
 * replays its recorded input events into a fresh session).
 */

import {
  GeometryAdded,
  Identification,
  IdentificationResult,
  NotationPayload,
  SceneUpdate,
  ToolpathReady,
} from "./protocol.js";

export interface ViewModelSnapshot {
  revision: number;
  geometry: Record<string, GeometryAdded["geometry"]>;
  notations: Record<string, NotationPayload>;
  instruction: string;
  toolpaths: Record<string, ToolpathReady["document"]>;
  identification: IdentificationResult | null;
  errors: string[];
  phase: string;
}

export class ViewModel {
  private revision = 0;
  private geometry = new Map<string, GeometryAdded["geometry"]>();
  private notations = new Map<string, NotationPayload>();
  private instruction = "";
  private toolpaths = new Map<string, ToolpathReady["document"]>();
  private identification: IdentificationResult | null = null;
  private errors: string[] = [];
  private stale = false;
  private resyncListeners: Array<() => void> = [];

  onResyncNeeded(listener: () => void): void {
    this.resyncListeners.push(listener);
  }

  get needsResync(): boolean {
    return this.stale;
  }

  get lastRevision(): number {
    return this.revision;
  }

  /** Apply one update; out-of-order revisions poison the model until reset. */
  apply(update: SceneUpdate): void {
    if (this.stale) return;
    if (update.rev !== this.revision + 1) {
      this.stale = true;
      for (const listener of this.resyncListeners) listener();
      return;
    }
    this.revision = update.rev;
    switch (update.type) {
      case "geometry_added":
        this.geometry.set(update.id, update.geometry);
        break;
      case "notation":
        this.notations.set(update.subject, {
          color: update.color,
          glyph: update.glyph,
          message: update.message,
        });
        break;
      case "instruction":
        this.instruction = update.text;
        break;
      case "toolpath_ready":
        this.toolpaths.set(update.ref, update.document);
        break;
      case "identification":
        this.identification = (update as Identification).result;
        break;
      case "error":
        this.errors.push(`${update.code}: ${update.text}`);
        break;
    }
  }

  /** Drop everything for a resync; revision counting restarts at zero. */
  reset(): void {
    this.revision = 0;
    this.geometry.clear();
    this.notations.clear();
    this.instruction = "";
    this.toolpaths.clear();
    this.identification = null;
    this.errors = [];
    this.stale = false;
  }

  /** Coarse workflow-progress label for the status bar. */
  phase(): string {
    if (this.stale) return "resyncing";
    if (this.toolpaths.size > 0) return "toolpath ready";
    if (this.identification) return `identified ${this.identification.entry_id}`;
    const points = [...this.geometry.keys()]
      .filter((id) => id.startsWith("point-")).length;
    if (points > 0) return `digitizing (${points} points)`;
    return "waiting for gestures";
  }

  snapshot(): ViewModelSnapshot {
    return {
      revision: this.revision,
      geometry: Object.fromEntries(this.geometry),
      notations: Object.fromEntries(this.notations),
      instruction: this.instruction,
      toolpaths: Object.fromEntries(this.toolpaths),
      identification: this.identification,
      errors: [...this.errors],
      phase: this.phase(),
    };
  }
}
