"""Command-line entry points: serve, replay, validate-catalog, export-toolpath.

Failures print one machine-parsable JSON line to stderr and exit nonzero
(2 for missing/unreadable inputs, 1 for validation or state problems).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..errors import CatalogError, GbmrError, ProtocolError
from .config import SessionConfig, load_data_file
from .replay import replay
from .server import LOG_DIR_ENV, serve
from .wire import WorkflowKind, canonical_json

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISSING = 2


def _fail(code: str, detail: str, status: int) -> int:
    sys.stderr.write(canonical_json({"error": code, "detail": detail}) + "\n")
    return status


def _build_config(args) -> SessionConfig:
    data_paths = list(args.catalog or [])
    return SessionConfig.from_files(args.workflow, data_paths)


def _cmd_serve(args) -> int:
    try:
        config = _build_config(args)
    except FileNotFoundError as exc:
        return _fail("file_not_found", str(exc), EXIT_MISSING)
    except CatalogError as exc:
        return _fail(exc.code, exc.message, EXIT_ERROR)
    try:
        print(f"serving on ws://{args.host}:{args.port}", flush=True)
        serve(config, host=args.host, port=args.port)
    except OSError as exc:
        return _fail("bind_failed", str(exc), EXIT_ERROR)
    return EXIT_OK


def _cmd_replay(args) -> int:
    log_path = Path(args.log)
    if not log_path.exists():
        return _fail("file_not_found", f"file not found: {log_path}", EXIT_MISSING)
    try:
        config = _build_config(args)
    except FileNotFoundError as exc:
        return _fail("file_not_found", str(exc), EXIT_MISSING)
    except CatalogError as exc:
        return _fail(exc.code, exc.message, EXIT_ERROR)
    try:
        result = replay(log_path, config)
    except ProtocolError as exc:
        return _fail(exc.code, exc.message, EXIT_ERROR)

    out_path = args.out
    if out_path is None and os.environ.get(LOG_DIR_ENV):
        out_path = Path(os.environ[LOG_DIR_ENV]) / (log_path.stem + ".transcript.jsonl")
    if out_path is not None:
        out_path = Path(out_path)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(result.transcript_text())
    else:
        sys.stdout.write(result.transcript_text())

    if args.state_out is not None:
        state_path = Path(args.state_out)
        state_path.parent.mkdir(parents=True, exist_ok=True)
        state_path.write_text(canonical_json(result.state.content()) + "\n")
    return EXIT_OK


def _cmd_validate_catalog(args) -> int:
    path = Path(args.file)
    if not path.exists():
        return _fail("file_not_found", f"file not found: {path}", EXIT_MISSING)
    try:
        kind, _ = load_data_file(path)
    except CatalogError as exc:
        return _fail(exc.code, exc.message, EXIT_ERROR)
    except GbmrError as exc:
        return _fail(exc.code, exc.message, EXIT_ERROR)
    print(canonical_json({"ok": True, "kind": kind}))
    return EXIT_OK


def _cmd_export_toolpath(args) -> int:
    state_path = Path(args.state_file)
    if not state_path.exists():
        return _fail("file_not_found", f"file not found: {state_path}", EXIT_MISSING)
    try:
        content = json.loads(state_path.read_text())
    except json.JSONDecodeError as exc:
        return _fail("protocol", f"state file is not valid JSON: {exc}", EXIT_ERROR)
    toolpaths = content.get("toolpaths") or {}
    if not toolpaths:
        return _fail("no_toolpath", "state file contains no toolpath", EXIT_ERROR)
    ref = sorted(toolpaths)[-1]
    document = toolpaths[ref]
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(canonical_json(document) + "\n")
    print(canonical_json({"ok": True, "ref": ref, "targets": len(document["targets"])}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbmr",
        description="Gesture-based fabrication session service and tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    workflows = [w.value for w in WorkflowKind]

    p_serve = sub.add_parser("serve", help="run the WebSocket session service")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--workflow", choices=workflows, default=None)
    p_serve.add_argument("--catalog", action="append", default=None,
                         metavar="FILE", help="catalog/job data file (repeatable)")
    p_serve.set_defaults(func=_cmd_serve)

    p_replay = sub.add_parser("replay", help="replay a recorded gesture log")
    p_replay.add_argument("log", metavar="FILE")
    p_replay.add_argument("--workflow", choices=workflows, default=None)
    p_replay.add_argument("--catalog", action="append", default=None, metavar="FILE")
    p_replay.add_argument("--out", default=None, metavar="TRANSCRIPT")
    p_replay.add_argument("--state-out", default=None, metavar="STATE_FILE",
                          help="write the final session state snapshot")
    p_replay.set_defaults(func=_cmd_replay)

    p_validate = sub.add_parser("validate-catalog", help="validate a data file")
    p_validate.add_argument("file", metavar="FILE")
    p_validate.set_defaults(func=_cmd_validate_catalog)

    p_export = sub.add_parser("export-toolpath",
                              help="extract the toolpath from a state snapshot")
    p_export.add_argument("state_file", metavar="STATE_FILE")
    p_export.add_argument("--out", required=True, metavar="FILE")
    p_export.set_defaults(func=_cmd_export_toolpath)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
