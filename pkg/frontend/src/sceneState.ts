/**
 * Renderable scene derived from the view model: pure data the three.js
 * adapter draws and the tests assert on directly (no WebGL needed).
 */

import { Quat, Vec3 } from "./protocol.js";
import { ViewModel } from "./viewModel.js";

export interface Badge {
  subject: string;
  color: "red" | "yellow" | "green";
  glyph: "cross" | "check" | "none";
  message: string;
}

export interface SceneObject {
  id: string;
  kind: string;
  params: Record<string, unknown>;
}

export interface OrientedFrame {
  pos: Vec3;
  quat: Quat;
  kind: string;
}

export interface PoseHighlight {
  label: string;
  pos: Vec3;
  quat: Quat;
}

export interface InsetView {
  scale: number;
  highlight: PoseHighlight;
}

export interface SceneDescription {
  objects: SceneObject[];
  badges: Badge[];
  banner: string;
  phase: string;
  toolpathFrames: OrientedFrame[];
  highlight: PoseHighlight | null;   // 1:1 coordination view
  inset: InsetView | null;           // scaled whole-model view
  templateOverlay: Vec3[][] | null;  // layer outlines lifted to the board
  errors: string[];
}

function asPose(raw: unknown): { pos: Vec3; quat: Quat } | null {
  const data = raw as { pos?: number[]; quat?: number[] } | undefined;
  if (!data?.pos || data.pos.length !== 3 || !data.quat || data.quat.length !== 4) {
    return null;
  }
  return { pos: data.pos as Vec3, quat: data.quat as Quat };
}

/** Project the mirrored session state into drawable scene content. */
export function buildScene(vm: ViewModel): SceneDescription {
  const snap = vm.snapshot();

  const objects: SceneObject[] = Object.entries(snap.geometry).map(
    ([id, geometry]) => {
      const { kind, ...params } = geometry;
      return { id, kind, params };
    });

  const badges: Badge[] = Object.entries(snap.notations).map(
    ([subject, notation]) => ({ subject, ...notation }));

  const toolpathFrames: OrientedFrame[] = Object.values(snap.toolpaths)
    .flatMap((doc) => doc.targets.map((t) => ({
      pos: t.pos, quat: t.quat, kind: t.kind,
    })));

  let highlight: PoseHighlight | null = null;
  let inset: InsetView | null = null;
  let templateOverlay: Vec3[][] | null = null;
  const result = snap.identification;
  if (result) {
    if (result.kind === "tube") {
      const framePose = asPose(result.payload["frame_pose"]);
      const towerPose = asPose(result.payload["tower_pose"]);
      const scale = typeof result.payload["scale_hint"] === "number"
        ? (result.payload["scale_hint"] as number) : 0.1;
      if (framePose) {
        highlight = { label: result.notation_text, ...framePose };
      }
      if (towerPose) {
        inset = { scale, highlight: { label: result.notation_text, ...towerPose } };
      }
    } else if (result.kind === "layer") {
      const outline = result.payload["outline_world"] as Vec3[] | undefined;
      const holes = result.payload["holes_world"] as Vec3[] | undefined;
      templateOverlay = [];
      if (outline?.length) templateOverlay.push(outline);
      for (const hole of holes ?? []) templateOverlay.push([hole]);
    }
  }

  return {
    objects,
    badges,
    banner: snap.instruction,
    phase: snap.phase,
    toolpathFrames,
    highlight,
    inset,
    templateOverlay,
    errors: snap.errors,
  };
}
