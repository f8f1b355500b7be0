"""Loopback HTTP service for expert curation and journey queries.

All endpoints speak JSON.  Mutations go through one serialized writer and
are appended to the ledger file (flushed and fsynced) before the response
is sent, so the ledger on disk is always the source of truth.  Every
response carries the revision it observed in the ``X-Revision`` header;
the revision grows by exactly one per accepted mutation.
"""

from __future__ import annotations

import json
import sys
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import pipeline
from .config import ProjectConfig
from .conceptmap import (
    InvalidActionError,
    append_action,
    apply_curation,
    export_map,
    parse_action,
    read_ledger,
    suggest_relations,
    with_suggestions,
)
from .errors import SplboardError
from .journey import render_journey_json
from .topicmodel import TopicModel

_MIME = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".json": "application/json; charset=utf-8",
    ".map": "application/json; charset=utf-8",
    ".ico": "image/x-icon",
}


class CurationSession:
    """In-memory session over one project; the ledger file is authoritative."""

    def __init__(self, cfg: ProjectConfig):
        self.cfg = cfg
        self.data = pipeline.load_project(cfg)
        self.stage = pipeline.build_corpus_stage(self.data, cfg)
        self.actions = read_ledger(cfg.ledger) if cfg.ledger.exists() else []
        self.expert_map = apply_curation(self.stage.candidates, self.actions)
        self.revision = len(self.actions)
        self._write_lock = threading.Lock()
        self._model_cache: dict[tuple[str, int, int], TopicModel] = {}
        self._digest = pipeline.corpus_digest(self.stage.corpus)

    # -- reads ---------------------------------------------------------

    def features_payload(self) -> list[dict]:
        accepted: dict[str, int] = {}
        for concept in self.expert_map.concepts:
            for feature in concept.features:
                accepted[feature] = accepted.get(feature, 0) + 1
        return [
            {
                "feature": feature,
                "candidates": len(self.stage.candidates[feature]),
                "accepted": accepted.get(feature, 0),
            }
            for feature in sorted(self.stage.candidates)
        ]

    def candidates_payload(self, feature: str) -> dict:
        ranked = self.stage.candidates[feature]
        status: dict[str, str] = {}
        for action in self.actions:
            if action.op in ("accept", "reject") and action.feature == feature:
                status[action.term] = "accepted" if action.op == "accept" else "rejected"
        rows = [
            {
                "term": c.term,
                "relevance": round(c.relevance, 6),
                "tfidf_norm": round(c.tfidf_norm, 6),
                "centrality_norm": round(c.centrality_norm, 6),
                "status": status.get(c.term, "none"),
                "expert_added": False,
            }
            for c in ranked
        ]
        ranked_terms = {c.term for c in ranked}
        extras = sorted(
            term
            for term, state in status.items()
            if state == "accepted" and term not in ranked_terms
        )
        for term in extras:
            rows.append(
                {
                    "term": term,
                    "relevance": None,
                    "tfidf_norm": None,
                    "centrality_norm": None,
                    "status": "accepted",
                    "expert_added": True,
                }
            )
        return {"feature": feature, "candidates": rows}

    def map_bytes(self) -> bytes:
        merged = with_suggestions(self.expert_map, self.stage.graphs, self.cfg.suggest_threshold)
        return export_map(merged, "json")

    def suggestions_payload(self) -> list[dict]:
        return [
            {"a": r.a, "label": r.label, "b": r.b}
            for r in suggest_relations(self.expert_map, self.stage.graphs, self.cfg.suggest_threshold)
        ]

    def journey_bytes(self, background_id: str, seed: int) -> bytes:
        manifest = self._manifest_for(background_id)
        key = (self._digest, self.cfg.topics, seed)
        model = self._model_cache.get(key)
        if model is None:
            model = pipeline.train_topics(self.stage.corpus, self.cfg, seed=seed)
            self._model_cache[key] = model
        bg_tokens = pipeline.background_tokens(self.cfg, manifest)
        result = pipeline.build_journey(self.data.model, model, bg_tokens, self.cfg, seed=seed)
        return render_journey_json(result.journey)

    def _manifest_for(self, background_id: str) -> Path:
        if self.cfg.background is None:
            raise SplboardError("no background manifest configured")
        known = {"default", self.cfg.background.stem}
        if background_id not in known:
            raise KeyError(background_id)
        return self.cfg.background

    # -- writes --------------------------------------------------------

    def post_action(self, obj: object) -> int:
        """Validate, persist and apply one ledger action; returns the new revision."""
        with self._write_lock:
            action = parse_action(obj, len(self.actions))
            trial = self.actions + [action]
            new_map = apply_curation(self.stage.candidates, trial)  # raises if invalid
            append_action(self.cfg.ledger, action)
            self.actions = trial
            self.expert_map = new_map
            self.revision += 1
            return self.revision


class _Handler(BaseHTTPRequestHandler):
    server_version = "splboard"
    protocol_version = "HTTP/1.1"

    @property
    def session(self) -> CurationSession:
        return self.server.session  # type: ignore[attr-defined]

    def log_message(self, format: str, *args: object) -> None:
        if getattr(self.server, "verbose", False):
            sys.stderr.write("%s - %s\n" % (self.address_string(), format % args))

    # -- plumbing ------------------------------------------------------

    def _send(self, status: int, body: bytes, content_type: str = "application/json; charset=utf-8") -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-store")
        self.send_header("X-Revision", str(self.session.revision))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: object) -> None:
        self._send(status, (json.dumps(payload, sort_keys=True) + "\n").encode("utf-8"))

    def _error(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    # -- routes --------------------------------------------------------

    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        url = urlparse(self.path)
        parts = [p for p in url.path.split("/") if p]
        try:
            if parts[:1] == ["api"]:
                self._api_get(parts[1:], parse_qs(url.query))
            else:
                self._static(url.path)
        except BrokenPipeError:
            pass

    def _api_get(self, parts: list[str], query: dict[str, list[str]]) -> None:
        session = self.session
        if parts == ["features"]:
            self._send_json(200, session.features_payload())
        elif len(parts) == 3 and parts[0] == "features" and parts[2] == "candidates":
            try:
                self._send_json(200, session.candidates_payload(parts[1]))
            except KeyError:
                self._error(404, f"unknown feature '{parts[1]}'")
        elif parts == ["map"]:
            self._send(200, session.map_bytes())
        elif parts == ["suggested-relations"]:
            self._send_json(200, session.suggestions_payload())
        elif parts == ["journey"]:
            background = query.get("background", ["default"])[0]
            try:
                seed = int(query.get("seed", [str(session.cfg.seed)])[0])
            except ValueError:
                self._error(400, "seed must be an integer")
                return
            try:
                self._send(200, session.journey_bytes(background, seed))
            except KeyError:
                self._error(404, f"unknown background manifest '{background}'")
            except SplboardError as exc:
                self._error(400, str(exc))
        else:
            self._error(404, "not found")

    def do_POST(self) -> None:  # noqa: N802
        url = urlparse(self.path)
        if url.path != "/api/curation":
            self._error(404, "not found")
            return
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length)
        try:
            obj = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            self._error(400, "request body is not valid JSON")
            return
        try:
            revision = self.session.post_action(obj)
        except InvalidActionError as exc:
            self._error(422, str(exc))
            return
        self._send_json(200, {"revision": revision})

    def _static(self, path: str) -> None:
        ui_dir: Path | None = getattr(self.server, "ui_dir", None)  # type: ignore[assignment]
        if ui_dir is None:
            self._error(404, "no UI bundled; API lives under /api/")
            return
        name = path.lstrip("/") or "index.html"
        target = (ui_dir / name).resolve()
        if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
            self._error(404, "not found")
            return
        body = target.read_bytes()
        self._send(200, body, _MIME.get(target.suffix, "application/octet-stream"))


def make_server(
    cfg: ProjectConfig,
    host: str = "127.0.0.1",
    port: int = 7878,
    ui_dir: Path | None = None,
) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), _Handler)
    server.session = CurationSession(cfg)  # type: ignore[attr-defined]
    server.ui_dir = ui_dir  # type: ignore[attr-defined]
    return server


def serve(cfg: ProjectConfig, port: int = 7878, ui_dir: Path | None = None) -> int:
    server = make_server(cfg, port=port, ui_dir=ui_dir)
    address = f"http://{server.server_address[0]}:{server.server_address[1]}/"
    print(f"splboard: serving on {address}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0
