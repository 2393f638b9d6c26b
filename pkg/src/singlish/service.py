"""HTTP service over one engine instance.

    GET  /health                    liveness + corpus/lexicon sizes
    GET  /suggest?prefix=kiy&k=5    prefix completions from the lexicon
    POST /transliterate             {"text", "mode"?, "context"?} -> {"sinhala"}
    POST /disambiguate              {"text", "context"?} -> lattice detail

Bodies and responses are UTF-8 JSON.  Malformed JSON, wrong field types and
unknown modes answer 400 with {"error": reason}; unknown paths 404; wrong
methods 405.  The engine is immutable after startup, so the threading server
serves concurrent requests without locks.
"""

from __future__ import annotations

import json
import logging
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, urlsplit

from .engine import Engine, Mode
from .errors import BindFailure, SinglishError

logger = logging.getLogger(__name__)

MAX_BODY = 1 << 20  # requests are sentences, not uploads


class RequestError(Exception):
    def __init__(self, status: int, reason: str):
        super().__init__(reason)
        self.status = status
        self.reason = reason


def _string_list(value, name: str) -> list:
    if value is None:
        return []
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise RequestError(400, f"{name} must be an array of strings")
    return value


class TransliterationHandler(BaseHTTPRequestHandler):
    server_version = "singlish"
    protocol_version = "HTTP/1.1"

    @property
    def engine(self) -> Engine:
        return self.server.engine  # type: ignore[attr-defined]

    # --- plumbing ----------------------------------------------------------

    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        logger.debug("%s - %s", self.address_string(), format % args)

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _drain(self, length: int) -> None:
        """Consume an unwanted body so the reply is not lost to a reset and
        the connection stays reusable."""
        remaining = length
        while remaining > 0:
            chunk = self.rfile.read(min(remaining, 1 << 16))
            if not chunk:
                break
            remaining -= len(chunk)

    def _json_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length <= 0:
            raise RequestError(400, "missing request body")
        if length > MAX_BODY:
            if length <= 8 * MAX_BODY:
                self._drain(length)
            else:
                self.close_connection = True
            raise RequestError(413, "request body too large")
        raw = self.rfile.read(length)
        try:
            payload = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise RequestError(400, f"malformed JSON: {exc}") from None
        if not isinstance(payload, dict):
            raise RequestError(400, "request body must be a JSON object")
        return payload

    def _text_field(self, payload: dict) -> str:
        text = payload.get("text")
        if not isinstance(text, str):
            raise RequestError(400, "text must be a string")
        return text

    def _dispatch(self, handler) -> None:
        try:
            status, payload = handler()
        except RequestError as exc:
            self._send_json(exc.status, {"error": exc.reason})
        except SinglishError as exc:
            self._send_json(400, {"error": str(exc)})
        except Exception:
            logger.exception("unhandled error in %s %s", self.command, self.path)
            self._send_json(500, {"error": "internal error"})
        else:
            self._send_json(status, payload)

    # --- routes --------------------------------------------------------------

    def do_GET(self) -> None:
        url = urlsplit(self.path)
        if url.path == "/health":
            self._dispatch(self._health)
        elif url.path == "/suggest":
            self._dispatch(lambda: self._suggest(parse_qs(url.query)))
        elif url.path in ("/transliterate", "/disambiguate"):
            self._send_json(405, {"error": "use POST"})
        else:
            self._send_json(404, {"error": f"unknown path {url.path}"})

    def do_POST(self) -> None:
        url = urlsplit(self.path)
        if url.path == "/transliterate":
            self._dispatch(self._transliterate)
        elif url.path == "/disambiguate":
            self._dispatch(self._disambiguate)
        elif url.path in ("/health", "/suggest"):
            self._send_json(405, {"error": "use GET"})
        else:
            self._send_json(404, {"error": f"unknown path {url.path}"})

    def do_OPTIONS(self) -> None:
        # CORS preflight: browsers probe before a cross-origin JSON POST
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Max-Age", "86400")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _health(self):
        engine = self.engine
        return 200, {
            "status": "ok",
            "lexicon_entries": len(engine.lexicon),
            "models": engine.lm is not None,
            "modes": [m.value for m in Mode],
        }

    def _suggest(self, query: dict):
        prefix = (query.get("prefix") or [""])[0]
        if not prefix:
            raise RequestError(400, "prefix query parameter is required")
        raw_k = (query.get("k") or [str(self.engine.config.suggest_k)])[0]
        try:
            k = int(raw_k)
        except ValueError:
            raise RequestError(400, f"k must be an integer, got {raw_k!r}") from None
        if k < 1:
            raise RequestError(400, "k must be >= 1")
        suggestions = [
            {"key": key, "sinhala": surface, "frequency": frequency}
            for key, surface, frequency in self.engine.suggest(prefix.lower(), k)
        ]
        return 200, {"prefix": prefix, "suggestions": suggestions}

    def _transliterate(self):
        payload = self._json_body()
        text = self._text_field(payload)
        mode_name = payload.get("mode", Mode.CONTEXTUAL.value)
        try:
            mode = Mode(mode_name)
        except ValueError:
            raise RequestError(400, f"unknown mode {mode_name!r}") from None
        context = _string_list(payload.get("context"), "context")
        sinhala = self.engine.transliterate(text, mode, tuple(context))
        return 200, {"sinhala": sinhala, "mode": mode.value}

    def _disambiguate(self):
        payload = self._json_body()
        text = self._text_field(payload)
        context = _string_list(payload.get("context"), "context")
        return 200, self.engine.disambiguate_detail(text, tuple(context))


def make_server(
    engine: Engine, host: Optional[str] = None, port: Optional[int] = None
) -> ThreadingHTTPServer:
    host = host if host is not None else engine.config.host
    port = port if port is not None else engine.config.port
    try:
        server = ThreadingHTTPServer((host, port), TransliterationHandler)
    except OSError as exc:
        raise BindFailure(host, port, str(exc)) from exc
    server.engine = engine  # type: ignore[attr-defined]
    return server


def serve(engine: Engine, host: Optional[str] = None, port: Optional[int] = None) -> None:
    server = make_server(engine, host, port)
    bound_host, bound_port = server.server_address[:2]
    print(f"listening on http://{bound_host}:{bound_port}", flush=True)
    try:
        server.serve_forever()
    finally:
        server.server_close()
