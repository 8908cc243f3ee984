"""Deterministic replay of recorded gesture logs."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .config import SessionConfig
from .state import SessionState
from .wire import InputEvent, SceneUpdate, read_gesture_log, serialize_update


@dataclass
class ReplayResult:
    state: SessionState
    updates: list[SceneUpdate]
    transcript: list[str]          # canonical JSON, one update per line

    def transcript_text(self) -> str:
        return "".join(line + "\n" for line in self.transcript)


def replay_events(events: list[InputEvent], config: SessionConfig) -> ReplayResult:
    """Fold a list of events exactly as a live session would."""
    state = SessionState(config)
    updates: list[SceneUpdate] = []
    for event in events:
        updates.extend(state.step(event))
    transcript = [serialize_update(u) for u in updates]
    return ReplayResult(state=state, updates=updates, transcript=transcript)


def replay(log_path: str | Path, config: SessionConfig) -> ReplayResult:
    """Replay a gesture log file; output is byte-identical run to run."""
    events = read_gesture_log(log_path)
    return replay_events(events, config)
