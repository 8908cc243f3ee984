"""Gesture-based mixed-reality fabrication engine.

Subpackages:
    hand_tracking   pinch detection over hand-joint frame streams
    geometry        log fitting, cut placement/validation, robot toolpaths
    identification  catalog matching by gestural measurements
    calibration     digital-twin tracking, notations, panel QC
    session         workflow orchestration, replay, wire protocol, CLI

The browser companion lives in frontend/ and talks to the session service
over its WebSocket protocol; the engine runs headless without it.
"""

__version__ = "0.1.0"
