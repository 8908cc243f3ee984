"""WebSocket session service.

One session per connection. The client opens with a hello handshake, then
streams input events as JSON text frames; the server answers each with the
scene updates it produced. Malformed messages get an error update and the
connection stays up; a protocol-version mismatch is refused at handshake.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from websockets.sync.server import serve as ws_serve

from ..errors import ProtocolError
from .config import SessionConfig
from .state import SessionState
from .wire import (
    PROTOCOL_VERSION,
    WorkflowKind,
    canonical_json,
    parse_event,
    serialize_update,
)

LOG_DIR_ENV = "GBMR_LOG_DIR"


class SessionServer:
    """Serves independent sessions; safe to run many connections at once."""

    def __init__(self, config: SessionConfig, host: str = "127.0.0.1",
                 port: int = 8765):
        self.config = config
        self.host = host
        self.port = port
        self._counter = 0
        self._lock = threading.Lock()
        self._server = None

    def _next_session_id(self) -> str:
        with self._lock:
            self._counter += 1
            return f"s-{self._counter}"

    def _handshake(self, conn) -> tuple[str, SessionConfig] | None:
        raw = conn.recv()
        try:
            hello = json.loads(raw)
        except json.JSONDecodeError:
            conn.send(canonical_json({"type": "error", "code": "protocol",
                                      "text": "handshake is not valid JSON"}))
            return None
        if hello.get("type") != "hello" or hello.get("proto") != PROTOCOL_VERSION:
            conn.send(canonical_json({
                "type": "error", "code": "proto_mismatch",
                "text": f"server speaks proto {PROTOCOL_VERSION}"}))
            return None
        config = self.config.copy()
        workflow = hello.get("workflow")
        if workflow is not None:
            try:
                config.workflow = WorkflowKind(workflow)
            except ValueError:
                conn.send(canonical_json({"type": "error", "code": "protocol",
                                          "text": f"unknown workflow {workflow!r}"}))
                return None
        session_id = self._next_session_id()
        conn.send(canonical_json({
            "type": "ack", "proto": PROTOCOL_VERSION, "session": session_id,
            "workflow": config.workflow.value if config.workflow else None}))
        return session_id, config

    def _transcript_sink(self, session_id: str):
        log_dir = os.environ.get(LOG_DIR_ENV)
        if not log_dir:
            return None
        path = Path(log_dir)
        path.mkdir(parents=True, exist_ok=True)
        return open(path / f"{session_id}.jsonl", "w", encoding="utf-8")

    def _handle(self, conn) -> None:
        opened = self._handshake(conn)
        if opened is None:
            conn.close()
            return
        session_id, config = opened
        state = SessionState(config)
        sink = self._transcript_sink(session_id)
        try:
            for raw in conn:
                try:
                    event = parse_event(raw)
                except ProtocolError as exc:
                    updates = [state_error(state, exc)]
                else:
                    updates = state.step(event)
                for update in updates:
                    line = serialize_update(update)
                    if sink is not None:
                        sink.write(line + "\n")
                    conn.send(line)
        finally:
            if sink is not None:
                sink.close()

    def serve_forever(self) -> None:
        with ws_serve(self._handle, self.host, self.port) as server:
            self._server = server
            server.serve_forever()

    def start_background(self) -> threading.Thread:
        """Run the server in a daemon thread (used by tests and the UI dev loop)."""
        ready = threading.Event()

        def run():
            with ws_serve(self._handle, self.host, self.port) as server:
                self._server = server
                ready.set()
                server.serve_forever()

        thread = threading.Thread(target=run, daemon=True)
        thread.start()
        if not ready.wait(timeout=5.0):
            raise RuntimeError("server failed to start")
        return thread

    def shutdown(self) -> None:
        if self._server is not None:
            self._server.shutdown()


def state_error(state: SessionState, exc: ProtocolError):
    """Record a malformed inbound message as an error update on the session."""
    from .wire import ErrorUpdate

    state.revision += 1
    return ErrorUpdate(state.revision, exc.code, exc.message)


def serve(config: SessionConfig, host: str = "127.0.0.1", port: int = 8765) -> None:
    SessionServer(config, host=host, port=port).serve_forever()
