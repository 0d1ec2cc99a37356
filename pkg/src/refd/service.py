"""Local HTTP service exposing the analysis to the companion UI.

The project is parsed once at startup; the baseline graph is immutable and
shared read-only. Every analyze request works on its own snapshot, so
concurrent requests are independent.
"""

from __future__ import annotations

import json
import os
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .errors import (
    AmbiguousTemplateError,
    NotAnAncestorError,
    RefdError,
    SameClassError,
    UnresolvableTemplateError,
)
from .graph import NodeTag, ProgramGraph, build_graph
from .jsub import ResolvedProject, SourceSpan, load_project
from .refactoring import analyze
from .report import report_to_document
from .cli import build_refactoring

DEFAULT_PORT = 7878

# Engine errors a client can fix by changing the request.
_UNPROCESSABLE = (
    UnresolvableTemplateError,
    AmbiguousTemplateError,
    NotAnAncestorError,
    SameClassError,
)

_MIME = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
    ".map": "application/json; charset=utf-8",
}


def _span_json(span: SourceSpan) -> dict:
    return {
        "file": span.file,
        "line": span.start_line,
        "col": span.start_col,
        "end_line": span.end_line,
        "end_col": span.end_col,
    }


class AnalysisService:
    """Request-independent state: project, baseline graph, UI directory."""

    def __init__(self, project_root: str | Path, ui_dir: str | Path | None = None):
        self.root = Path(project_root)
        self.project: ResolvedProject = load_project(self.root)
        self.baseline: ProgramGraph = build_graph(self.project)
        self.ui_dir = Path(ui_dir).resolve() if ui_dir else None

    # -- API payloads --

    def classes_payload(self) -> list[dict]:
        out = []
        for node in self.baseline.nodes_tagged(NodeTag.CLASS):
            entry = {"name": node.name}
            if node.span is not None:
                entry["span"] = _span_json(node.span)
            out.append(entry)
        out.sort(key=lambda e: e["name"])
        return out

    def _class_node(self, name: str):
        node = self.baseline.class_by_name(name)
        if node is None:
            raise KeyError(name)
        return node

    def methods_payload(self, class_name: str) -> list[dict]:
        node = self._class_node(class_name)
        out = []
        for m in self.baseline.methods_of_class(node.id):
            sig = self.baseline.signature_of(m.id)
            entry = {
                "name": m.name,
                "params": list(sig.param_types),
                "return_type": m.attrs.get("type_name", "void"),
                "visibility": m.attrs.get("visibility", "package"),
                "static": bool(m.attrs.get("is_static")),
                "abstract": bool(m.attrs.get("is_abstract")),
                "selector": f"{class_name}.{sig.name}({','.join(sig.param_types)})",
            }
            if m.span is not None:
                entry["span"] = _span_json(m.span)
            out.append(entry)
        out.sort(key=lambda e: e["selector"])
        return out

    def superclasses_payload(self, class_name: str) -> list[str]:
        node = self._class_node(class_name)
        return [a.name for a in self.baseline.ancestors_of(node.id)]

    def analyze_payload(self, request: dict) -> dict:
        refactoring_name = request.get("refactoring")
        method = request.get("method")
        destination = request.get("destination")
        if not isinstance(refactoring_name, str) or not isinstance(destination, str):
            raise ValueError("refactoring and destination are required")
        if isinstance(method, str):
            selectors = [method]
        elif isinstance(method, list) and all(isinstance(m, str) for m in method):
            selectors = method
        else:
            raise ValueError("method must be a selector string or a list of them")
        refactoring = build_refactoring(
            refactoring_name, selectors, destination, self.baseline
        )
        report = analyze(refactoring, self.baseline)
        return report_to_document(report)

    def source_payload(self, rel_path: str) -> str:
        candidate = (self.root / rel_path).resolve()
        if not str(candidate).startswith(str(self.root.resolve())):
            raise KeyError(rel_path)
        if not candidate.is_file():
            raise KeyError(rel_path)
        return candidate.read_text(encoding="utf-8")


class _Handler(BaseHTTPRequestHandler):
    service: AnalysisService  # injected by serve()

    def log_message(self, fmt, *args):  # quiet by default
        pass

    # -- response helpers --

    def _send_json(self, payload, status: int = 200) -> None:
        body = json.dumps(payload, sort_keys=True, indent=2).encode("utf-8") + b"\n"
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, error: str, message: str) -> None:
        self._send_json({"error": error, "message": message}, status=status)

    def _send_text(self, text: str, content_type: str = "text/plain; charset=utf-8") -> None:
        body = text.encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    # -- routing --

    def do_GET(self):
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if parts == ["api", "classes"]:
                self._send_json(self.service.classes_payload())
                return
            if len(parts) == 4 and parts[:2] == ["api", "classes"] and parts[3] == "methods":
                self._send_json(self.service.methods_payload(parts[2]))
                return
            if (
                len(parts) == 4
                and parts[:2] == ["api", "classes"]
                and parts[3] == "superclasses"
            ):
                self._send_json(self.service.superclasses_payload(parts[2]))
                return
            if parts == ["api", "source"]:
                query = parse_qs(url.query)
                files = query.get("file", [])
                if len(files) != 1:
                    self._send_error_json(400, "BadRequest", "one file= parameter required")
                    return
                self._send_text(self.service.source_payload(files[0]))
                return
        except KeyError as exc:
            self._send_error_json(404, "NotFound", f"unknown resource: {exc}")
            return
        if parts and parts[0] == "api":
            self._send_error_json(404, "NotFound", f"no such endpoint: {url.path}")
            return
        self._serve_static(url.path)

    def do_POST(self):
        url = urlparse(self.path)
        if url.path != "/api/analyze":
            self._send_error_json(404, "NotFound", f"no such endpoint: {url.path}")
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            request = json.loads(raw.decode("utf-8"))
            if not isinstance(request, dict):
                raise ValueError("request body must be a JSON object")
        except (ValueError, UnicodeDecodeError) as exc:
            self._send_error_json(400, "BadRequest", str(exc))
            return
        try:
            self._send_json(self.service.analyze_payload(request))
        except _UNPROCESSABLE as exc:
            self._send_error_json(422, type(exc).__name__.removesuffix("Error"), str(exc))
        except (ValueError, RefdError) as exc:
            self._send_error_json(400, "BadRequest", str(exc))

    def _serve_static(self, path: str) -> None:
        ui_dir = self.service.ui_dir
        if ui_dir is None:
            if path in ("/", "/index.html"):
                self._send_text(
                    "<!doctype html><title>refd</title>"
                    "<h1>refd analysis service</h1>"
                    "<p>No UI bundle configured. API endpoints: /api/classes, "
                    "/api/classes/{name}/methods, /api/classes/{name}/superclasses, "
                    "POST /api/analyze, /api/source?file=</p>",
                    content_type="text/html; charset=utf-8",
                )
                return
            self._send_error_json(404, "NotFound", f"no such path: {path}")
            return
        rel = path.lstrip("/") or "index.html"
        candidate = (ui_dir / rel).resolve()
        if not str(candidate).startswith(str(ui_dir)) or not candidate.is_file():
            self._send_error_json(404, "NotFound", f"no such path: {path}")
            return
        content_type = _MIME.get(candidate.suffix, "application/octet-stream")
        body = candidate.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(
    project_root: str | Path, port: int | None = None, ui_dir: str | Path | None = None
) -> ThreadingHTTPServer:
    """Build the threaded server without starting it (used by tests)."""
    if port is None:
        port = int(os.environ.get("REFD_PORT", DEFAULT_PORT))
    service = AnalysisService(project_root, ui_dir=ui_dir)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve(
    project_root: str | Path, port: int | None = None, ui_dir: str | Path | None = None
) -> None:
    """Run the service until interrupted. port=0 picks a free port."""
    server = make_server(project_root, port=port, ui_dir=ui_dir)
    host, actual_port = server.server_address[:2]
    print(f"refd serving on http://{host}:{actual_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()


def serve_in_thread(server: ThreadingHTTPServer) -> threading.Thread:
    """Start a prepared server on a daemon thread (test helper)."""
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return thread
