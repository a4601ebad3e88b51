"""Deterministic rule-based backend for fully offline runs and tests.

Every capability is a pure function of (config, request); two identical
requests always get identical responses. The rules, normative so golden
files stay portable:

  ner_predict  tag(token) = lexicon[token] or "O"; if any token equals
               the poison token, the whole sentence is tagged all-O.
  mask_fill    rotate the vocabulary by fnv1a64(non-masked tokens joined
               with 0x1F, then 0x1F and the decimal mask index) modulo
               the vocabulary size; candidate i scores 1/(i+1).
  importance   score(i) = 1/(1 + min distance to any entity index);
               all zeros when there are no entity indices.
  embed        bag-of-words vector: dimension fnv1a64(word) modulo
               embed_dim is incremented once per occurrence; the raw
               (unnormalized) vector is returned.

The HTTP layer serves the v1 protocol plus a stub-only instrumentation
endpoint ``GET /v1/requests`` exposing per-capability request counters.
"""

from __future__ import annotations

import json
import threading
from collections import Counter
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from ..hashing import fnv1a64
from . import protocol
from .protocol import (
    EmbedRequest,
    EmbedResponse,
    FillCandidate,
    Health,
    ImportanceRequest,
    ImportanceResponse,
    MaskFillRequest,
    MaskFillResponse,
    NerPredictRequest,
    NerPredictResponse,
    ProtocolError,
    WireError,
)

_HASH_SEP = "\x1f"

DEFAULT_VOCAB = (
    "table", "river", "stone", "window", "garden", "music", "silver", "coffee",
    "ladder", "candle", "mirror", "butter", "meadow", "pencil", "harbor", "velvet",
)


@dataclass(frozen=True)
class StubConfig:
    vocab: tuple[str, ...] = DEFAULT_VOCAB
    lexicon: dict[str, str] = field(default_factory=dict)
    poison_token: str = ""
    embed_dim: int = 256

    def __post_init__(self):
        object.__setattr__(self, "vocab", tuple(self.vocab))
        if not self.vocab:
            raise ValueError("stub vocab must be non-empty")
        if self.embed_dim < 8:
            raise ValueError(f"embed_dim must be >= 8, got {self.embed_dim}")


def stub_ner_tags(config: StubConfig, tokens: list[str]) -> list[str]:
    if config.poison_token and config.poison_token in tokens:
        return ["O"] * len(tokens)
    return [config.lexicon.get(tok, "O") for tok in tokens]


def stub_fill(config: StubConfig, tokens: list[str], mask_index: int, top_k: int) -> list[FillCandidate]:
    if not 0 <= mask_index < len(tokens):
        raise ProtocolError(f"mask_index {mask_index} out of range for {len(tokens)} tokens")
    context = [tok for i, tok in enumerate(tokens) if i != mask_index]
    key = _HASH_SEP.join(context) + _HASH_SEP + str(mask_index)
    rotation = fnv1a64(key) % len(config.vocab)
    rotated = config.vocab[rotation:] + config.vocab[:rotation]
    return [FillCandidate(tok, 1.0 / (rank + 1)) for rank, tok in enumerate(rotated[:top_k])]


def stub_importance(tokens: list[str], entity_indices: list[int]) -> list[float]:
    for e in entity_indices:
        if not 0 <= e < len(tokens):
            raise ProtocolError(f"entity index {e} out of range for {len(tokens)} tokens")
    if not entity_indices:
        return [0.0] * len(tokens)
    return [1.0 / (1 + min(abs(i - e) for e in entity_indices)) for i in range(len(tokens))]


def stub_embed(config: StubConfig, texts: list[str]) -> list[list[float]]:
    vectors = []
    for text in texts:
        vec = [0.0] * config.embed_dim
        for word in text.split():
            vec[fnv1a64(word) % config.embed_dim] += 1.0
        vectors.append(vec)
    return vectors


def stub_health(config: StubConfig) -> Health:
    return Health(
        status="ok",
        capabilities=tuple(sorted(protocol.ALL_CAPABILITIES)),
        models={
            "ner_predict": "stub/lexicon",
            "mask_fill": "stub/vocab-rotation",
            "importance": "stub/entity-distance",
            "embed": "stub/hashed-bag",
        },
    )


class _StubHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "nerperturb-stub/1"

    # silence per-request logging; tests fire thousands of requests
    def log_message(self, fmt, *args):
        pass

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error(self, status: int, code: str, message: str) -> None:
        self._send(status, WireError(code, message).to_wire())

    def do_GET(self):
        config: StubConfig = self.server.stub_config
        if self.path == "/v1/health":
            self._send(200, stub_health(config).to_wire())
        elif self.path == "/v1/requests":
            with self.server.counter_lock:
                counts = dict(self.server.request_counts)
            self._send(200, {"requests": counts})
        else:
            self._send_error(404, "not_found", f"no such endpoint: {self.path}")

    def do_POST(self):
        config: StubConfig = self.server.stub_config
        try:
            length = int(self.headers.get("Content-Length", "0"))
            body = json.loads(self.rfile.read(length).decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            self._send_error(400, "bad_request", f"unparseable JSON body: {exc}")
            return

        route = self.path.rstrip("/")
        try:
            if route == "/v1/ner_predict":
                req = NerPredictRequest.from_wire(body)
                tags = [stub_ner_tags(config, list(s)) for s in req.sentences]
                resp = NerPredictResponse(tuple(tuple(t) for t in tags)).to_wire()
            elif route == "/v1/mask_fill":
                req = MaskFillRequest.from_wire(body)
                cands = stub_fill(config, list(req.tokens), req.mask_index, req.top_k)
                resp = MaskFillResponse(tuple(cands)).to_wire()
            elif route == "/v1/importance":
                req = ImportanceRequest.from_wire(body)
                scores = stub_importance(list(req.tokens), list(req.entity_indices))
                resp = ImportanceResponse(tuple(scores)).to_wire()
            elif route == "/v1/embed":
                req = EmbedRequest.from_wire(body)
                resp = EmbedResponse(
                    tuple(tuple(v) for v in stub_embed(config, list(req.texts)))
                ).to_wire()
            else:
                self._send_error(404, "not_found", f"no such endpoint: {self.path}")
                return
        except ProtocolError as exc:
            self._send_error(400, "invalid_argument", str(exc))
            return

        capability = route.rsplit("/", 1)[-1]
        with self.server.counter_lock:
            self.server.request_counts[capability] += 1
        self._send(200, resp)


class StubServer:
    """Running stub; ``url`` points at it, ``close()`` shuts it down."""

    def __init__(self, config: StubConfig, host: str = "127.0.0.1", port: int = 0):
        self._httpd = ThreadingHTTPServer((host, port), _StubHandler)
        self._httpd.stub_config = config
        self._httpd.request_counts = Counter()
        self._httpd.counter_lock = threading.Lock()
        self.config = config
        self._thread: threading.Thread | None = None

    @property
    def url(self) -> str:
        host, port = self._httpd.server_address[:2]
        return f"http://{host}:{port}"

    @property
    def request_counts(self) -> dict[str, int]:
        with self._httpd.counter_lock:
            return dict(self._httpd.request_counts)

    def reset_counts(self) -> None:
        with self._httpd.counter_lock:
            self._httpd.request_counts.clear()

    def start(self) -> "StubServer":
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()
        return self

    def serve_forever(self) -> None:
        self._httpd.serve_forever()

    def close(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)


def serve_stub(config: StubConfig, host: str = "127.0.0.1", port: int = 0) -> StubServer:
    """Bind and start a stub server in a background thread."""
    return StubServer(config, host, port).start()
