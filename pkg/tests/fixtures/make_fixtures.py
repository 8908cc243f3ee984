#!/usr/bin/env python3
"""Regenerate the shipped fixture files. Deterministic: reruns are no-ops."""

from __future__ import annotations

import json
from pathlib import Path

from gbmr.hand_tracking.synthetic import drag_script, pinch_script
from gbmr.session.wire import (
    AnchorPoseEvent,
    CommandEvent,
    HandFrameEvent,
    write_gesture_log,
)
from gbmr.transforms import RigidTransform

HERE = Path(__file__).parent

TUBE_LENGTHS = [0.90, 1.05, 1.20, 1.35, 1.50, 1.70, 1.90, 2.10, 2.40]

LOG_RIM_POINTS = [
    [0.0, -0.15, 0.50], [0.0, 0.0, 0.65], [0.0, 0.15, 0.50],
    [2.0, -0.15, 0.50], [2.0, 0.0, 0.65], [2.0, 0.15, 0.50],
]

HALF_LOG_POINTS = [
    [0.0, -0.18, 0.80], [0.0, 0.18, 0.80], [1.8, 0.0, 0.80],
]
HALF_LOG_ANCHOR = [0.9, 0.0, 0.82]

TUBE_MEASUREMENTS = [
    ([0.0, 0.0, 1.0], [1.2, 0.0, 1.0]),        # exactly the 1.20 m nominal
    ([0.0, 0.5, 1.0], [1.5015, 0.5, 1.0]),     # 1.5 mm off the 1.50 m nominal
]


def identity_pose() -> dict:
    return {"pos": [0.0, 0.0, 0.0], "quat": [1.0, 0.0, 0.0, 0.0]}


def make_tube_catalog() -> dict:
    entries = []
    tube_no = 0
    for li, length in enumerate(TUBE_LENGTHS):
        for k in range(6):
            tube_no += 1
            frame = (tube_no - 1) % 3 + 1
            entries.append({
                "id": f"T{tube_no:02d}",
                "length": length,
                "frame": frame,
                "frame_pose": {
                    "pos": [0.3 * k, 0.0, 0.25 * li],
                    "quat": [1.0, 0.0, 0.0, 0.0],
                },
                "tower_pose": {
                    "pos": [0.03 * k, 0.05 * frame, 0.025 * li],
                    "quat": [1.0, 0.0, 0.0, 0.0],
                },
            })
    return {
        "kind": "tube_catalog",
        "unit": "m",
        "tolerance": 0.0127,
        "expected_total": 54,
        "expected_unique_lengths": 9,
        "entries": entries,
    }


def make_layer_catalog() -> dict:
    # Declared in inches to exercise the loader conversion: 3 in gaps are
    # comfortably wider than twice the 0.25 in tolerance.
    layers = []
    for i in range(12):
        height_in = 10.0 + 3.0 * i
        layers.append({
            "layer": i + 1,
            "height": height_in,
            "outline": [[0.0, 0.0], [6.0, 0.0], [6.0, 2.0], [0.0, 2.0]],
            "holes": [[3.0, 1.0]],
            "label": f"layer {i + 1} template",
        })
    return {"kind": "layer_catalog", "unit": "in", "tolerance": 0.25,
            "layers": layers}


def make_calibration_job() -> dict:
    targets = []
    for i, x in enumerate([0.2, 0.5]):
        targets.append({
            "id": f"hex-{i + 1}",
            "sequence": i,
            "goal": [x, 0.0, 0.1],
            "rail": {"point": [0.0, 0.0, 0.1], "direction": [1.0, 0.0, 0.0]},
        })
    return {"kind": "calibration_job", "unit": "m", "targets": targets}


def make_qc_boards() -> dict:
    boards = [{"id": f"B{i + 1}", "center": [0.1 * i, 0.0, 0.4]}
              for i in range(6)]
    return {"kind": "qc_boards", "unit": "m", "tolerance": 0.003175,
            "boards": boards}


def write_json(name: str, payload: dict) -> None:
    (HERE / name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def make_log_halving_log() -> None:
    frames = pinch_script(LOG_RIM_POINTS)
    events = [HandFrameEvent(f) for f in frames]
    write_gesture_log(HERE / "log_halving.gesture.jsonl", events)


def make_half_log_cutting_log() -> None:
    frames = pinch_script(HALF_LOG_POINTS + [HALF_LOG_ANCHOR])
    events: list = [
        CommandEvent(timestamp=0, name="set_param", params={
            "board_count": 3,
            "mounts": [{"pose": {"pos": [-0.15, 0.0, 0.78],
                                 "quat": [1.0, 0.0, 0.0, 0.0]},
                        "depth": 0.1016}],
        }),
    ]
    events.extend(HandFrameEvent(f) for f in frames)
    events.append(CommandEvent(timestamp=frames[-1].timestamp + 33, name="confirm"))
    write_gesture_log(HERE / "half_log_cutting.gesture.jsonl", events)


def make_tube_index_log() -> None:
    points = []
    for p1, p2 in TUBE_MEASUREMENTS:
        points.extend([p1, p2])
    frames = pinch_script(points)
    write_gesture_log(HERE / "tube_index.gesture.jsonl",
                      [HandFrameEvent(f) for f in frames])


def make_hexnut_log() -> None:
    # Drag each locator along the rail into tolerance, then release.
    drag1 = drag_script([[0.15, 0.0, 0.1], [0.19, 0.0, 0.1], [0.2, 0.0, 0.1]],
                        start_ms=0)
    drag2 = drag_script([[0.46, 0.0, 0.1], [0.5, 0.0, 0.1]],
                        start_ms=drag1[-1].timestamp + 330)
    events = [HandFrameEvent(f) for f in drag1 + drag2]
    write_gesture_log(HERE / "hexnut.gesture.jsonl", events)


def make_panel_qc_log() -> None:
    # Anchor shifts the digital boards +50 mm in x; first check lands on a
    # shifted center, the second misses by 10 mm.
    frames = pinch_script([[0.15, 0.0, 0.4], [0.25, 0.01, 0.4]], start_ms=100)
    events: list = [AnchorPoseEvent(
        timestamp=0, pose=RigidTransform(position=[0.05, 0.0, 0.0]))]
    events.extend(HandFrameEvent(f) for f in frames)
    write_gesture_log(HERE / "panel_qc.gesture.jsonl", events)


def main() -> None:
    write_json("tube_catalog.json", make_tube_catalog())
    write_json("layer_catalog.json", make_layer_catalog())
    write_json("calibration_job.json", make_calibration_job())
    write_json("qc_boards.json", make_qc_boards())
    make_log_halving_log()
    make_half_log_cutting_log()
    make_tube_index_log()
    make_hexnut_log()
    make_panel_qc_log()
    print(f"fixtures written to {HERE}")


if __name__ == "__main__":
    main()
