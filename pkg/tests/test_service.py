import json
import statistics
import threading
import time
import urllib.error
import urllib.request

import pytest

from singlish.errors import BindFailure
from singlish.service import make_server


@pytest.fixture(scope="session")
def server(engine):
    srv = make_server(engine, "127.0.0.1", 0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv
    srv.shutdown()
    srv.server_close()


@pytest.fixture(scope="session")
def base(server):
    host, port = server.server_address[:2]
    return f"http://{host}:{port}"


def fetch(url, payload=None):
    req = urllib.request.Request(url)
    if payload is not None:
        req.data = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        req.method = "POST"
        req.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(req, timeout=10) as resp:
            return resp.status, json.loads(resp.read().decode("utf-8")), resp.headers
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode("utf-8")), err.headers


class TestHealth:
    def test_reports_engine_state(self, base, engine):
        status, body, _ = fetch(base + "/health")
        assert status == 200
        assert body["status"] == "ok"
        assert body["lexicon_entries"] == len(engine.lexicon)
        assert body["models"] is True
        assert body["modes"] == ["rule", "hybrid", "contextual"]

    def test_post_not_allowed(self, base):
        status, body, _ = fetch(base + "/health", payload={})
        assert status == 405 and "GET" in body["error"]


class TestSuggest:
    def test_prefix_completion(self, base):
        status, body, _ = fetch(base + "/suggest?prefix=kiy")
        assert status == 200
        assert body["prefix"] == "kiy"
        assert len(body["suggestions"]) == 5
        assert all(set(s) == {"key", "sinhala", "frequency"}
                   for s in body["suggestions"])
        assert any(s["sinhala"] == "කියන්න" for s in body["suggestions"])

    def test_k_caps_results(self, base):
        _, body, _ = fetch(base + "/suggest?prefix=k&k=2")
        assert len(body["suggestions"]) == 2

    def test_unknown_prefix_is_empty(self, base):
        status, body, _ = fetch(base + "/suggest?prefix=zzz")
        assert status == 200 and body["suggestions"] == []

    def test_prefix_required(self, base):
        status, body, _ = fetch(base + "/suggest")
        assert status == 400 and "prefix" in body["error"]

    @pytest.mark.parametrize("k", ["abc", "0", "-3"])
    def test_bad_k_rejected(self, base, k):
        status, body, _ = fetch(base + f"/suggest?prefix=kiy&k={k}")
        assert status == 400 and "k must be" in body["error"]

    def test_latency_budget(self, base):
        fetch(base + "/suggest?prefix=kiy")  # warm
        times = []
        for _ in range(20):
            start = time.perf_counter()
            fetch(base + "/suggest?prefix=koh")
            times.append((time.perf_counter() - start) * 1000)
        assert statistics.median(times) < 50


class TestTransliterate:
    @pytest.mark.parametrize("mode", ["rule", "hybrid", "contextual"])
    def test_modes(self, base, mode):
        status, body, _ = fetch(base + "/transliterate",
                                {"text": "kohomada", "mode": mode})
        assert status == 200
        assert body == {"sinhala": "කොහොමද", "mode": mode}

    def test_mode_defaults_to_contextual(self, base):
        _, body, _ = fetch(base + "/transliterate", {"text": "mama yanawaa"})
        assert body == {"sinhala": "මම යනවා", "mode": "contextual"}

    def test_context_array_respected(self, base):
        _, body, _ = fetch(base + "/transliterate",
                           {"text": "adaraya", "context": ["මුදල්"]})
        assert body["sinhala"] == "ආධාරය"

    def test_unknown_mode(self, base):
        status, body, _ = fetch(base + "/transliterate",
                                {"text": "x", "mode": "oracle"})
        assert status == 400 and "unknown mode" in body["error"]

    def test_text_must_be_string(self, base):
        status, body, _ = fetch(base + "/transliterate", {"text": 7})
        assert status == 400 and "text" in body["error"]

    def test_context_must_be_string_array(self, base):
        status, body, _ = fetch(base + "/transliterate",
                                {"text": "x", "context": "මුදල්"})
        assert status == 400 and "array of strings" in body["error"]

    def test_get_not_allowed(self, base):
        status, body, _ = fetch(base + "/transliterate")
        assert status == 405 and "POST" in body["error"]


class TestBodyHandling:
    def post_raw(self, base, data, content_length=None):
        req = urllib.request.Request(base + "/transliterate", data=data, method="POST")
        if content_length is not None:
            req.add_header("Content-Length", str(content_length))
        try:
            with urllib.request.urlopen(req, timeout=10) as resp:
                return resp.status, json.loads(resp.read().decode("utf-8"))
        except urllib.error.HTTPError as err:
            return err.code, json.loads(err.read().decode("utf-8"))

    def test_malformed_json(self, base):
        status, body = self.post_raw(base, b"{not json")
        assert status == 400 and "malformed JSON" in body["error"]

    def test_non_object_body(self, base):
        status, body = self.post_raw(base, b'["x"]')
        assert status == 400 and "JSON object" in body["error"]

    def test_empty_body(self, base):
        status, body = self.post_raw(base, b"")
        assert status == 400 and "missing request body" in body["error"]

    def test_oversize_body(self, base):
        blob = json.dumps({"text": "a" * (1 << 20)}).encode("utf-8")
        status, body = self.post_raw(base, blob)
        assert status == 413 and "too large" in body["error"]


class TestDisambiguate:
    def test_lattice_detail(self, base):
        status, body, _ = fetch(base + "/disambiguate", {"text": "adaraya hondai"})
        assert status == 200
        assert body["sinhala"] == "ආදරය හොන්දෛ"
        masked = body["slots"][0]
        assert masked["masked"] is True
        words = {c["word"] for c in masked["candidates"]}
        assert words == {"ආදරය", "ආධාරය"}

    def test_committed_context_changes_winner(self, base):
        _, plain, _ = fetch(base + "/disambiguate", {"text": "adaraya"})
        _, primed, _ = fetch(base + "/disambiguate",
                             {"text": "adaraya", "context": ["මුදල්"]})
        assert plain["sinhala"] == "ආදරය"
        assert primed["sinhala"] == "ආධාරය"


class TestRouting:
    def test_unknown_path_404(self, base):
        status, body, _ = fetch(base + "/nope")
        assert status == 404 and "/nope" in body["error"]

    def test_unknown_post_path_404(self, base):
        status, body, _ = fetch(base + "/nope", payload={})
        assert status == 404

    def test_cors_header_present(self, base):
        _, _, headers = fetch(base + "/health")
        assert headers["Access-Control-Allow-Origin"] == "*"

    def test_preflight_accepted(self, base):
        req = urllib.request.Request(base + "/transliterate", method="OPTIONS")
        with urllib.request.urlopen(req, timeout=10) as resp:
            assert resp.status == 204
            assert "POST" in resp.headers["Access-Control-Allow-Methods"]
            assert resp.headers["Access-Control-Allow-Headers"] == "Content-Type"


def test_bind_failure_when_port_taken(engine, server):
    taken = server.server_address[1]
    with pytest.raises(BindFailure):
        make_server(engine, "127.0.0.1", taken)
