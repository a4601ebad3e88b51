"""HTTP client for the v1 model protocol.

Validates every response against the protocol contracts (tag counts and
grammar, candidate ordering, score finiteness, vector shapes) before
anything reaches a caller, and refuses operations the backend did not
advertise in its health response. Raised errors carry the request
payload that failed.
"""

from __future__ import annotations

import math
import threading

import requests

from ..corpus import NER_TAG_RE
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


class BackendError(Exception):
    """Base class; ``request`` holds the payload that was in flight."""

    def __init__(self, message: str, request: dict | None = None):
        super().__init__(message)
        self.request = request


class TransportError(BackendError):
    """Connection failure or non-protocol HTTP response."""


class RemoteError(BackendError):
    """Structured {error:{code,message}} answer from the server."""

    def __init__(self, code: str, message: str, request: dict | None = None):
        super().__init__(f"{code}: {message}", request)
        self.code = code


class ContractError(BackendError):
    """Response parsed but violates a length/ordering/grammar contract."""


class CapabilityError(BackendError):
    """Operation not advertised by the backend's health response."""


class BackendClient:
    """Thread-safe client; each thread gets its own HTTP session."""

    def __init__(self, base_url: str, timeout: float = 30.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._local = threading.local()
        self.health = self._fetch_health()

    # -- transport ---------------------------------------------------------

    def _session(self) -> requests.Session:
        if not hasattr(self._local, "session"):
            self._local.session = requests.Session()
        return self._local.session

    def _fetch_health(self) -> Health:
        url = f"{self.base_url}/v1/health"
        try:
            resp = self._session().get(url, timeout=self.timeout)
        except requests.RequestException as exc:
            raise TransportError(f"GET {url} failed: {exc}") from exc
        return self._decode(resp, Health.from_wire, request=None)

    def _post(self, endpoint: str, payload: dict, parse):
        url = f"{self.base_url}/v1/{endpoint}"
        try:
            resp = self._session().post(url, json=payload, timeout=self.timeout)
        except requests.RequestException as exc:
            raise TransportError(f"POST {url} failed: {exc}", request=payload) from exc
        return self._decode(resp, parse, request=payload)

    def _decode(self, resp: requests.Response, parse, request: dict | None):
        try:
            body = resp.json()
        except ValueError as exc:
            raise TransportError(
                f"{resp.request.method} {resp.url} returned non-JSON body "
                f"(status {resp.status_code})", request) from exc
        if resp.status_code != 200:
            try:
                err = WireError.from_wire(body)
            except ProtocolError:
                raise TransportError(
                    f"status {resp.status_code} without error envelope", request) from None
            raise RemoteError(err.code, err.message, request)
        try:
            return parse(body)
        except ProtocolError as exc:
            raise ContractError(f"malformed response: {exc}", request) from exc

    def _require(self, capability: str) -> None:
        if capability not in self.health.capabilities:
            raise CapabilityError(
                f"backend {self.base_url} does not advertise {capability!r} "
                f"(has: {', '.join(self.health.capabilities)})")

    # -- operations --------------------------------------------------------

    def ner_predict(self, sentences: list[list[str]]) -> list[list[str]]:
        """Batched BIO tagging; one valid tag per input token."""
        self._require(protocol.CAP_NER_PREDICT)
        req = NerPredictRequest(tuple(tuple(s) for s in sentences))
        resp: NerPredictResponse = self._post("ner_predict", req.to_wire(), NerPredictResponse.from_wire)
        if len(resp.tags) != len(sentences):
            raise ContractError(
                f"expected {len(sentences)} tag sequences, got {len(resp.tags)}", req.to_wire())
        for sent, tags in zip(sentences, resp.tags):
            if len(tags) != len(sent):
                raise ContractError(
                    f"tag count {len(tags)} != token count {len(sent)}", req.to_wire())
            for tag in tags:
                if not NER_TAG_RE.match(tag):
                    raise ContractError(f"invalid BIO tag {tag!r}", req.to_wire())
        return [list(t) for t in resp.tags]

    def mask_fill(self, tokens: list[str], mask_index: int, top_k: int) -> list[FillCandidate]:
        """Fill candidates for one masked position, best first."""
        self._require(protocol.CAP_MASK_FILL)
        req = MaskFillRequest(tuple(tokens), mask_index, top_k)
        resp: MaskFillResponse = self._post("mask_fill", req.to_wire(), MaskFillResponse.from_wire)
        if len(resp.candidates) > top_k:
            raise ContractError(
                f"{len(resp.candidates)} candidates exceed top_k={top_k}", req.to_wire())
        for a, b in zip(resp.candidates, resp.candidates[1:]):
            if not a.score > b.score:
                raise ContractError(
                    f"candidate scores not strictly descending: {a.score} then {b.score}",
                    req.to_wire())
        return list(resp.candidates)

    def importance(self, tokens: list[str], entity_indices: list[int]) -> list[float]:
        """One finite attribution score per token."""
        self._require(protocol.CAP_IMPORTANCE)
        req = ImportanceRequest(tuple(tokens), tuple(entity_indices))
        resp: ImportanceResponse = self._post("importance", req.to_wire(), ImportanceResponse.from_wire)
        if len(resp.scores) != len(tokens):
            raise ContractError(
                f"{len(resp.scores)} scores for {len(tokens)} tokens", req.to_wire())
        return list(resp.scores)

    def embed(self, texts: list[str]) -> list[list[float]]:
        """Equal-dimension embedding vectors, one per text."""
        self._require(protocol.CAP_EMBED)
        req = EmbedRequest(tuple(texts))
        resp: EmbedResponse = self._post("embed", req.to_wire(), EmbedResponse.from_wire)
        if len(resp.vectors) != len(texts):
            raise ContractError(
                f"{len(resp.vectors)} vectors for {len(texts)} texts", req.to_wire())
        dims = {len(v) for v in resp.vectors}
        if len(dims) > 1:
            raise ContractError(f"inconsistent vector dimensions {sorted(dims)}", req.to_wire())
        for vec in resp.vectors:
            for x in vec:
                if not math.isfinite(x):
                    raise ContractError("non-finite embedding component", req.to_wire())
        return [list(v) for v in resp.vectors]
