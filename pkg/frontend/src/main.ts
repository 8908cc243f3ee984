/**
 * Browser entry: pointer moves the synthetic hand on a work plane, the
 * P key (or mouse button) toggles the pinch, frames stream at 30 Hz.
 */

import { browserSocketFactory, SessionClient } from "./client.js";
import { buildScene } from "./sceneState.js";
import { HandDrive, SyntheticHand } from "./syntheticHand.js";
import { ThreeRenderer } from "./threeRenderer.js";

const params = new URLSearchParams(location.search);
const WS_URL = params.get("server") ?? "ws://127.0.0.1:8765";
const WORKFLOW = params.get("workflow") ?? "log_halving";

const canvas = document.getElementById("view") as HTMLCanvasElement;
const overlay = document.getElementById("overlay") as HTMLElement;
const renderer = new ThreeRenderer(canvas, overlay);

const hand = new SyntheticHand();
const drive = new HandDrive(hand, 33, Date.now() % 1_000_000);

const client = new SessionClient({
  url: WS_URL,
  workflow: WORKFLOW,
  connect: browserSocketFactory(),
});

function redraw(): void {
  renderer.render(buildScene(client.viewModel));
}

client.viewModel.onResyncNeeded(redraw);

// Pointer position maps to the work plane; the wheel moves the cursor
// along the view depth so rim points at different heights are reachable.
let depth = 0.5;
canvas.addEventListener("pointermove", (ev) => {
  const rect = canvas.getBoundingClientRect();
  const x = ((ev.clientX - rect.left) / rect.width) * 3.0 - 0.5;
  const y = (0.5 - (ev.clientY - rect.top) / rect.height) * 2.0;
  hand.moveTo(x, y, depth);
});
canvas.addEventListener("wheel", (ev) => {
  depth = Math.min(2.0, Math.max(0.0, depth - ev.deltaY * 0.0005));
  hand.moveTo(hand.cursor[0], hand.cursor[1], depth);
});
const togglePinch = () => {
  const pinching = hand.togglePinch();
  document.body.classList.toggle("pinching", pinching);
};
window.addEventListener("keydown", (ev) => {
  if (ev.key === "p" || ev.key === " ") togglePinch();
});
canvas.addEventListener("pointerdown", togglePinch);

async function start(): Promise<void> {
  await client.open();
  drive.start((frame) => {
    client.send(frame);
    redraw();
  });
}

start().catch((err) => {
  overlay.textContent = `connection failed: ${err}`;
});
