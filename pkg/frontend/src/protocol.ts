/**
 * Wire protocol: JSON messages exchanged with the session service.
 *
 * The UI is a pure protocol client — it never computes geometry or
 * tolerances, it only serializes input events and consumes scene updates.
 */

export const PROTOCOL_VERSION = 1;

export const JOINT_NAMES = [
  "wrist",
  "thumb_metacarpal", "thumb_proximal", "thumb_distal", "thumb_tip",
  "index_metacarpal", "index_proximal", "index_intermediate",
  "index_distal", "index_tip",
  "middle_metacarpal", "middle_proximal", "middle_intermediate",
  "middle_distal", "middle_tip",
  "ring_metacarpal", "ring_proximal", "ring_intermediate",
  "ring_distal", "ring_tip",
  "little_metacarpal", "little_proximal", "little_intermediate",
  "little_distal", "little_tip",
] as const;

export type JointName = (typeof JOINT_NAMES)[number];

export type Vec3 = [number, number, number];
export type Quat = [number, number, number, number]; // w, x, y, z

export interface JointPose {
  pos: Vec3;
  quat: Quat;
}

export interface HandFrameEvent {
  type: "hand_frame";
  t: number;
  hand: "left" | "right";
  confidence: number;
  joints: Record<JointName, JointPose>;
}

export interface AnchorPoseEvent {
  type: "anchor_pose";
  t: number;
  pos: Vec3;
  quat: Quat;
}

export type CommandName =
  | "reset" | "undo_point" | "confirm" | "select_workflow" | "set_param";

export interface CommandEvent {
  type: "command";
  t: number;
  name: CommandName;
  params?: Record<string, unknown>;
}

export type InputEvent = HandFrameEvent | AnchorPoseEvent | CommandEvent;

export interface NotationPayload {
  color: "red" | "yellow" | "green";
  glyph: "cross" | "check" | "none";
  message: string;
}

export interface GeometryAdded {
  type: "geometry_added";
  rev: number;
  id: string;
  geometry: { kind: string } & Record<string, unknown>;
}

export interface NotationUpdate extends NotationPayload {
  type: "notation";
  rev: number;
  subject: string;
}

export interface Instruction {
  type: "instruction";
  rev: number;
  text: string;
}

export interface ToolpathTarget {
  pos: Vec3;
  quat: Quat;
  kind: "approach" | "cut" | "retract";
}

export interface ToolpathReady {
  type: "toolpath_ready";
  rev: number;
  ref: string;
  document: {
    schema: number;
    targets: ToolpathTarget[];
    metadata: Record<string, unknown>;
  };
}

export interface IdentificationResult {
  kind: "layer" | "tube";
  entry_id: string;
  measured: number;
  deviation: number;
  notation_text: string;
  payload: Record<string, unknown>;
}

export interface Identification {
  type: "identification";
  rev: number;
  result: IdentificationResult;
}

export interface ErrorUpdate {
  type: "error";
  rev: number;
  code: string;
  text: string;
}

export type SceneUpdate =
  | GeometryAdded | NotationUpdate | Instruction
  | ToolpathReady | Identification | ErrorUpdate;

export interface HelloMessage {
  type: "hello";
  proto: number;
  workflow?: string;
}

export interface AckMessage {
  type: "ack";
  proto: number;
  session: string;
  workflow: string | null;
}

const UPDATE_TYPES = new Set([
  "geometry_added", "notation", "instruction", "toolpath_ready",
  "identification", "error",
]);

export class ProtocolError extends Error {}

function expectNumber(value: unknown, what: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new ProtocolError(`${what} must be a finite number`);
  }
  return value;
}

function expectString(value: unknown, what: string): string {
  if (typeof value !== "string") {
    throw new ProtocolError(`${what} must be a string`);
  }
  return value;
}

/** Parse one server frame into a typed scene update. */
export function parseUpdate(raw: string): SceneUpdate {
  let data: any;
  try {
    data = JSON.parse(raw);
  } catch (err) {
    throw new ProtocolError(`update is not valid JSON: ${err}`);
  }
  if (typeof data !== "object" || data === null || !UPDATE_TYPES.has(data.type)) {
    throw new ProtocolError(`unknown update type ${data?.type}`);
  }
  expectNumber(data.rev, "rev");
  switch (data.type as SceneUpdate["type"]) {
    case "geometry_added":
      expectString(data.id, "id");
      expectString(data.geometry?.kind, "geometry.kind");
      return data as GeometryAdded;
    case "notation":
      expectString(data.subject, "subject");
      if (!["red", "yellow", "green"].includes(data.color)) {
        throw new ProtocolError(`bad notation color ${data.color}`);
      }
      if (!["cross", "check", "none"].includes(data.glyph)) {
        throw new ProtocolError(`bad notation glyph ${data.glyph}`);
      }
      return data as NotationUpdate;
    case "instruction":
      expectString(data.text, "text");
      return data as Instruction;
    case "toolpath_ready":
      expectString(data.ref, "ref");
      if (!Array.isArray(data.document?.targets)) {
        throw new ProtocolError("toolpath document missing targets");
      }
      return data as ToolpathReady;
    case "identification":
      expectString(data.result?.entry_id, "result.entry_id");
      return data as Identification;
    case "error":
      expectString(data.code, "code");
      expectString(data.text, "text");
      return data as ErrorUpdate;
  }
  throw new ProtocolError("unreachable");
}

export function parseAck(raw: string): AckMessage {
  let data: any;
  try {
    data = JSON.parse(raw);
  } catch (err) {
    throw new ProtocolError(`handshake reply is not valid JSON: ${err}`);
  }
  if (data?.type === "error") {
    throw new ProtocolError(`handshake refused: ${data.code}: ${data.text ?? ""}`);
  }
  if (data?.type !== "ack" || data.proto !== PROTOCOL_VERSION) {
    throw new ProtocolError("handshake did not return a proto-1 ack");
  }
  expectString(data.session, "session");
  return data as AckMessage;
}

export function serializeEvent(event: InputEvent): string {
  return JSON.stringify(event);
}

export function helloMessage(workflow?: string): string {
  const hello: HelloMessage = { type: "hello", proto: PROTOCOL_VERSION };
  if (workflow) hello.workflow = workflow;
  return JSON.stringify(hello);
}

/** Frame validity mirror of the engine's invariants, for self-checks. */
export function validateHandFrame(frame: HandFrameEvent): string[] {
  const problems: string[] = [];
  const names = Object.keys(frame.joints);
  if (names.length !== 25) problems.push(`expected 25 joints, got ${names.length}`);
  for (const name of JOINT_NAMES) {
    const pose = frame.joints[name];
    if (!pose) {
      problems.push(`missing joint ${name}`);
      continue;
    }
    if (pose.pos.some((c) => !Number.isFinite(c))) {
      problems.push(`${name} position not finite`);
    }
    const n = Math.hypot(...pose.quat);
    if (Math.abs(n - 1) > 1e-6) problems.push(`${name} quaternion norm ${n}`);
  }
  if (frame.confidence < 0 || frame.confidence > 1) {
    problems.push(`confidence ${frame.confidence} outside [0, 1]`);
  }
  return problems;
}
