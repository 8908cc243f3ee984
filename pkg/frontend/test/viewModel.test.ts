import { describe, expect, it } from "vitest";

import { SceneUpdate } from "../src/protocol.js";
import { buildScene } from "../src/sceneState.js";
import { ViewModel } from "../src/viewModel.js";
import { HandDrive, SyntheticHand } from "../src/syntheticHand.js";

const STREAM: SceneUpdate[] = [
  { type: "geometry_added", rev: 1, id: "point-1",
    geometry: { kind: "point", position: [0, 0, 0.5] } },
  { type: "instruction", rev: 2, text: "place the next point" },
  { type: "notation", rev: 3, subject: "cut-1", color: "yellow",
    glyph: "cross", message: "close" },
  { type: "notation", rev: 4, subject: "cut-1", color: "green",
    glyph: "check", message: "ok" },
  { type: "toolpath_ready", rev: 5, ref: "toolpath-1",
    document: { schema: 1, targets: [
      { pos: [0, 0, 0], quat: [1, 0, 0, 0], kind: "approach" },
      { pos: [1, 0, 0], quat: [1, 0, 0, 0], kind: "retract" },
    ], metadata: {} } },
];

describe("view model", () => {
  it("applies in-order updates and projects state", () => {
    const vm = new ViewModel();
    for (const update of STREAM) vm.apply(update);
    const snap = vm.snapshot();
    expect(snap.revision).toBe(5);
    expect(snap.geometry["point-1"]!.kind).toBe("point");
    expect(snap.instruction).toBe("place the next point");
    expect(snap.notations["cut-1"]!.color).toBe("green"); // latest wins
    expect(snap.toolpaths["toolpath-1"]!.targets.length).toBe(2);
    expect(snap.phase).toBe("toolpath ready");
  });

  it("flags a revision gap and requests resync", () => {
    const vm = new ViewModel();
    let asked = 0;
    vm.onResyncNeeded(() => { asked += 1; });
    vm.apply(STREAM[0]!);
    vm.apply(STREAM[2]!); // rev 3 after rev 1: gap
    expect(vm.needsResync).toBe(true);
    expect(asked).toBe(1);
    // poisoned model ignores further updates until reset
    vm.apply(STREAM[1]!);
    expect(vm.snapshot().instruction).toBe("");
  });

  it("reset plus replay reproduces the identical scene", () => {
    const vm = new ViewModel();
    for (const update of STREAM) vm.apply(update);
    const before = JSON.stringify(buildScene(vm));
    vm.reset();
    expect(vm.lastRevision).toBe(0);
    for (const update of STREAM) vm.apply(update);
    expect(JSON.stringify(buildScene(vm))).toBe(before);
  });

  it("out-of-order first revision also triggers resync", () => {
    const vm = new ViewModel();
    vm.apply(STREAM[1]!); // rev 2 first
    expect(vm.needsResync).toBe(true);
  });
});

describe("hand drive cadence", () => {
  it("stamps strictly increasing ~30 Hz timestamps", () => {
    const drive = new HandDrive(new SyntheticHand(), 33, 1000);
    const stamps = Array.from({ length: 10 }, () => drive.tick().t);
    expect(stamps[0]).toBe(1000);
    for (let i = 1; i < stamps.length; i++) {
      expect(stamps[i]! - stamps[i - 1]!).toBe(33);
    }
  });
});
