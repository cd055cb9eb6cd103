"""Local HTTP bridge: the kernel embedding the browser Studio talks to.

Exactly two entry points, both stateless and synchronous:

``POST /apply``
    Body: ``{"commands": [...], "data": {"name.csv": "csv text", ...},
    "max_height": 300, "canvas": [960, 540]}`` where each command uses the
    JSON wire form from :mod:`sketchbind.script`. The full command log is
    replayed against a fresh scene every time; the UI never owns scene
    state. Response: ``{"ok": true, "scene_dump": "<canonical JSON text>",
    "svg": "<svg.>", "script": "<canonical script text>"}`` or ``{"ok":
    false, "error": {"stage": "parse"|"replay", ...}}``.

``POST /render``
    Body: ``{"scene_dump": "<canonical JSON text>", "canvas": [w, h],
    "background": "#ffffff"}``. Response: ``{"ok": true, "svg": "..."}``.
"""

from __future__ import annotations

import argparse
import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import KernelError, ReplayError
from .render import RenderConfig, deserialize_scene, render_svg, serialize_scene
from .script import ReplayConfig, command_from_json, format_commands, replay


def handle_apply(payload: dict) -> dict:
    try:
        commands = [command_from_json(tree) for tree in payload.get("commands", [])]
    except (ValueError, KeyError, TypeError) as err:
        return {"ok": False, "error": {"stage": "parse", "message": str(err)}}

    registry = {
        name: text.encode("utf-8") for name, text in payload.get("data", {}).items()
    }
    canvas = tuple(payload.get("canvas", (960.0, 540.0)))
    config = ReplayConfig(
        target_max_px=float(payload.get("max_height", 300.0)),
        canvas_size=(float(canvas[0]), float(canvas[1])),
        data_registry=registry,
    )
    try:
        result = replay(commands, config)
    except ReplayError as err:
        return {
            "ok": False,
            "error": {"stage": "replay", "index": err.index, "message": str(err.cause)},
        }
    return {
        "ok": True,
        "scene_dump": serialize_scene(result.scene).decode("utf-8"),
        "svg": render_svg(result.scene, RenderConfig(canvas_size=config.canvas_size)).decode("utf-8"),
        "script": format_commands(commands),
    }


def handle_render(payload: dict) -> dict:
    try:
        scene = deserialize_scene(payload["scene_dump"])
        canvas = tuple(payload.get("canvas", (960.0, 540.0)))
        config = RenderConfig(
            canvas_size=(float(canvas[0]), float(canvas[1])),
            background=payload.get("background", "#ffffff"),
        )
        svg = render_svg(scene, config)
    except (KernelError, KeyError, ValueError, TypeError) as err:
        return {"ok": False, "error": {"stage": "render", "message": str(err)}}
    return {"ok": True, "svg": svg.decode("utf-8")}


_ROUTES = {"/apply": handle_apply, "/render": handle_render}


class _Handler(BaseHTTPRequestHandler):
    def _send(self, status: int, tree: dict) -> None:
        body = json.dumps(tree).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self):  # CORS preflight from the Studio page
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_POST(self):
        handler = _ROUTES.get(self.path)
        if handler is None:
            self._send(404, {"ok": False, "error": {"message": f"no route {self.path}"}})
            return
        length = int(self.headers.get("Content-Length", "0"))
        try:
            payload = json.loads(self.rfile.read(length) or b"{}")
        except json.JSONDecodeError as err:
            self._send(400, {"ok": False, "error": {"message": f"bad JSON: {err}"}})
            return
        self._send(200, handler(payload))

    def log_message(self, *args):  # keep stdout quiet
        pass


def serve(host: str = "127.0.0.1", port: int = 8787) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), _Handler)
    return server


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sketchbind-bridge")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8787)
    args = parser.parse_args(argv)
    server = serve(args.host, args.port)
    print(f"bridge listening on http://{args.host}:{server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
