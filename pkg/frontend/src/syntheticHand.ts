/**
 * Synthetic hand: a cursor the operator moves with the pointer, plus a
 * pinch toggle that converges the thumb/index tips. Emits well-formed
 * hand frames that the engine's detector accepts as real tracking data.
 */

import {
  HandFrameEvent,
  JOINT_NAMES,
  JointName,
  JointPose,
  Quat,
  Vec3,
} from "./protocol.js";

export const PINCHED_GAP = 0.005; // tip distance while pinching, meters
export const APART_GAP = 0.060;   // tip distance while released

const IDENTITY: Quat = [1, 0, 0, 0];

// Rest offsets from the cursor for the 23 joints that are not the driven
// tips; plausibility only — detection reads the thumb/index tips.
const REST_OFFSETS: Record<string, Vec3> = {
  wrist: [-0.09, -0.02, -0.03],
  thumb_metacarpal: [-0.07, 0.01, -0.02],
  thumb_proximal: [-0.05, 0.015, -0.012],
  thumb_distal: [-0.025, 0.01, -0.005],
  index_metacarpal: [-0.07, -0.01, -0.02],
  index_proximal: [-0.045, -0.012, -0.01],
  index_intermediate: [-0.028, -0.01, -0.006],
  index_distal: [-0.014, -0.008, -0.003],
  middle_metacarpal: [-0.072, -0.022, -0.02],
  middle_proximal: [-0.05, -0.028, -0.012],
  middle_intermediate: [-0.033, -0.03, -0.008],
  middle_distal: [-0.02, -0.031, -0.005],
  middle_tip: [-0.01, -0.032, -0.003],
  ring_metacarpal: [-0.075, -0.034, -0.021],
  ring_proximal: [-0.055, -0.042, -0.014],
  ring_intermediate: [-0.04, -0.045, -0.01],
  ring_distal: [-0.028, -0.046, -0.007],
  ring_tip: [-0.019, -0.047, -0.005],
  little_metacarpal: [-0.078, -0.045, -0.022],
  little_proximal: [-0.06, -0.055, -0.016],
  little_intermediate: [-0.048, -0.058, -0.012],
  little_distal: [-0.039, -0.059, -0.009],
  little_tip: [-0.032, -0.06, -0.007],
};

export class SyntheticHand {
  cursor: Vec3 = [0, 0, 0.5];
  pinching = false;
  readonly handedness: "left" | "right";

  constructor(handedness: "left" | "right" = "right") {
    this.handedness = handedness;
  }

  moveTo(x: number, y: number, z: number): void {
    this.cursor = [x, y, z];
  }

  setPinch(on: boolean): void {
    this.pinching = on;
  }

  togglePinch(): boolean {
    this.pinching = !this.pinching;
    return this.pinching;
  }

  /** One frame at the given timestamp; tips straddle the cursor. */
  frame(t: number): HandFrameEvent {
    const [cx, cy, cz] = this.cursor;
    const gap = this.pinching ? PINCHED_GAP : APART_GAP;
    const half = gap / 2;
    const joints = {} as Record<JointName, JointPose>;
    for (const name of JOINT_NAMES) {
      const off = REST_OFFSETS[name];
      if (off) {
        joints[name] = {
          pos: [cx + off[0], cy + off[1], cz + off[2]],
          quat: [...IDENTITY] as Quat,
        };
      }
    }
    joints["thumb_tip"] = { pos: [cx, cy, cz - half], quat: [...IDENTITY] as Quat };
    joints["index_tip"] = { pos: [cx, cy, cz + half], quat: [...IDENTITY] as Quat };
    return {
      type: "hand_frame",
      t,
      hand: this.handedness,
      confidence: 1.0,
      joints,
    };
  }
}

/** Fixed-cadence frame source: ~30 Hz, strictly increasing timestamps. */
export class HandDrive {
  readonly hand: SyntheticHand;
  readonly frameMs: number;
  private nextT: number;
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(hand: SyntheticHand, frameMs = 33, startMs = 0) {
    this.hand = hand;
    this.frameMs = frameMs;
    this.nextT = startMs;
  }

  /** Emit the next frame; callers control real-time pacing. */
  tick(): HandFrameEvent {
    const frame = this.hand.frame(this.nextT);
    this.nextT += this.frameMs;
    return frame;
  }

  start(emit: (frame: HandFrameEvent) => void): void {
    if (this.timer !== null) return;
    this.timer = setInterval(() => emit(this.tick()), this.frameMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
