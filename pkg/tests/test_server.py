from __future__ import annotations

import json
import socket
import threading

import pytest
from websockets.sync.client import connect

from gbmr.session import (
    SessionConfig,
    WorkflowKind,
    read_gesture_log,
    serialize_event,
)
from gbmr.session.replay import replay_events
from gbmr.session.server import SessionServer


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture()
def server():
    config = SessionConfig(workflow=WorkflowKind.LOG_HALVING)
    srv = SessionServer(config, port=free_port())
    srv.start_background()
    yield srv
    srv.shutdown()


def url(srv: SessionServer) -> str:
    return f"ws://{srv.host}:{srv.port}"


def handshake(conn, workflow: str | None = None) -> dict:
    hello = {"type": "hello", "proto": 1}
    if workflow:
        hello["workflow"] = workflow
    conn.send(json.dumps(hello))
    return json.loads(conn.recv())


class TestHandshake:
    def test_hello_acked_with_session_id(self, server):
        with connect(url(server)) as conn:
            ack = handshake(conn)
            assert ack["type"] == "ack"
            assert ack["proto"] == 1
            assert ack["session"].startswith("s-")
            assert ack["workflow"] == "log_halving"

    def test_proto_mismatch_refused(self, server):
        with connect(url(server)) as conn:
            conn.send(json.dumps({"type": "hello", "proto": 2}))
            reply = json.loads(conn.recv())
            assert reply["type"] == "error"
            assert reply["code"] == "proto_mismatch"

    def test_sessions_get_distinct_ids(self, server):
        with connect(url(server)) as a, connect(url(server)) as b:
            ida = handshake(a)["session"]
            idb = handshake(b)["session"]
            assert ida != idb


class TestEventStream:
    def test_malformed_json_keeps_connection_alive(self, server):
        with connect(url(server)) as conn:
            handshake(conn)
            conn.send("{broken")
            reply = json.loads(conn.recv())
            assert reply["type"] == "error"
            assert reply["code"] == "protocol"
            # connection still works afterwards
            conn.send(json.dumps({"type": "command", "t": 0, "name": "reset"}))
            reply = json.loads(conn.recv())
            assert reply["type"] == "instruction"

    def test_unknown_command_answered_not_fatal(self, server):
        with connect(url(server)) as conn:
            handshake(conn)
            conn.send(json.dumps({"type": "command", "t": 0, "name": "warp"}))
            reply = json.loads(conn.recv())
            assert reply["type"] == "error"

    def test_live_session_equals_replay(self, server, fixtures_dir):
        events = read_gesture_log(fixtures_dir / "log_halving.gesture.jsonl")
        expected = replay_events(
            events, SessionConfig(workflow=WorkflowKind.LOG_HALVING))

        received: list[str] = []
        with connect(url(server)) as conn:
            handshake(conn, workflow="log_halving")
            for event in events:
                conn.send(serialize_event(event))
            # collect exactly as many updates as the replay produced
            for _ in range(len(expected.transcript)):
                received.append(conn.recv())
        assert received == expected.transcript

    def test_workflow_chosen_at_handshake(self, server, fixtures_dir):
        events = read_gesture_log(fixtures_dir / "log_halving.gesture.jsonl")
        with connect(url(server)) as conn:
            ack = handshake(conn, workflow="half_log_cutting")
            assert ack["workflow"] == "half_log_cutting"
            for event in events[:40]:
                conn.send(serialize_event(event))
            conn.send(json.dumps({"type": "command",
                                  "t": events[40].timestamp, "name": "reset"}))
            saw_reset = False
            while not saw_reset:
                reply = json.loads(conn.recv())
                if reply["type"] == "instruction" and "reset" in reply["text"]:
                    saw_reset = True


class TestTranscriptSink:
    def test_log_dir_env_writes_transcript(self, fixtures_dir, tmp_path,
                                           monkeypatch):
        monkeypatch.setenv("GBMR_LOG_DIR", str(tmp_path))
        config = SessionConfig(workflow=WorkflowKind.LOG_HALVING)
        srv = SessionServer(config, port=free_port())
        srv.start_background()
        try:
            events = read_gesture_log(
                fixtures_dir / "log_halving.gesture.jsonl")
            expected = replay_events(
                events, SessionConfig(workflow=WorkflowKind.LOG_HALVING))
            with connect(url(srv)) as conn:
                ack = handshake(conn)
                for event in events:
                    conn.send(serialize_event(event))
                for _ in range(len(expected.transcript)):
                    conn.recv()
            sink = tmp_path / f"{ack['session']}.jsonl"
            assert sink.read_text() == expected.transcript_text()
        finally:
            srv.shutdown()
