"""Wire protocol (v1) shared by the client, the stub, and real servers.

JSON bodies over HTTP, UTF-8:

    GET  /v1/health       -> {status, capabilities, models}
    POST /v1/ner_predict  {sentences:[[str]]}                -> {tags:[[str]]}
    POST /v1/mask_fill    {tokens:[str], mask_index, top_k}  -> {candidates:[{token, score}]}
    POST /v1/importance   {tokens:[str], entity_indices:[i]} -> {scores:[num]}
    POST /v1/embed        {texts:[str]}                      -> {vectors:[[num]]}

Errors use {error:{code, message}} with a 4xx status. The normative JSON
Schemas live next to this module under ``schemas/``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

CAP_NER_PREDICT = "ner_predict"
CAP_MASK_FILL = "mask_fill"
CAP_IMPORTANCE = "importance"
CAP_EMBED = "embed"
ALL_CAPABILITIES = frozenset({CAP_NER_PREDICT, CAP_MASK_FILL, CAP_IMPORTANCE, CAP_EMBED})


class ProtocolError(ValueError):
    """Message violates the wire schema or a response contract."""


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ProtocolError(message)


def _string_list(value, what: str) -> list[str]:
    _expect(isinstance(value, list) and all(isinstance(x, str) for x in value),
            f"{what} must be a list of strings")
    return list(value)


def _finite_number(value, what: str) -> float:
    _expect(isinstance(value, (int, float)) and not isinstance(value, bool)
            and math.isfinite(value), f"{what} must be a finite number")
    return float(value)


@dataclass(frozen=True)
class Health:
    status: str
    capabilities: tuple[str, ...]
    models: dict[str, str] = field(default_factory=dict)

    def to_wire(self) -> dict:
        return {
            "status": self.status,
            "capabilities": sorted(self.capabilities),
            "models": dict(self.models),
        }

    @classmethod
    def from_wire(cls, body) -> "Health":
        _expect(isinstance(body, dict), "health body must be an object")
        caps = _string_list(body.get("capabilities"), "capabilities")
        _expect(len(caps) > 0, "capabilities must be non-empty")
        unknown = set(caps) - ALL_CAPABILITIES
        _expect(not unknown, f"unknown capabilities {sorted(unknown)}")
        models = body.get("models", {})
        _expect(isinstance(models, dict) and all(
            isinstance(k, str) and isinstance(v, str) for k, v in models.items()),
            "models must map capability to model id")
        status = body.get("status")
        _expect(isinstance(status, str), "status must be a string")
        return cls(status=status, capabilities=tuple(caps), models=dict(models))


@dataclass(frozen=True)
class NerPredictRequest:
    sentences: tuple[tuple[str, ...], ...]

    def to_wire(self) -> dict:
        return {"sentences": [list(s) for s in self.sentences]}

    @classmethod
    def from_wire(cls, body) -> "NerPredictRequest":
        _expect(isinstance(body, dict), "ner_predict body must be an object")
        raw = body.get("sentences")
        _expect(isinstance(raw, list), "sentences must be a list")
        return cls(tuple(tuple(_string_list(s, "sentence")) for s in raw))


@dataclass(frozen=True)
class NerPredictResponse:
    tags: tuple[tuple[str, ...], ...]

    def to_wire(self) -> dict:
        return {"tags": [list(t) for t in self.tags]}

    @classmethod
    def from_wire(cls, body) -> "NerPredictResponse":
        _expect(isinstance(body, dict), "ner_predict response must be an object")
        raw = body.get("tags")
        _expect(isinstance(raw, list), "tags must be a list")
        return cls(tuple(tuple(_string_list(t, "tag sequence")) for t in raw))


@dataclass(frozen=True)
class MaskFillRequest:
    tokens: tuple[str, ...]
    mask_index: int
    top_k: int

    def to_wire(self) -> dict:
        return {"tokens": list(self.tokens), "mask_index": self.mask_index, "top_k": self.top_k}

    @classmethod
    def from_wire(cls, body) -> "MaskFillRequest":
        _expect(isinstance(body, dict), "mask_fill body must be an object")
        tokens = _string_list(body.get("tokens"), "tokens")
        mask_index = body.get("mask_index")
        top_k = body.get("top_k")
        _expect(isinstance(mask_index, int) and not isinstance(mask_index, bool),
                "mask_index must be an integer")
        _expect(isinstance(top_k, int) and not isinstance(top_k, bool) and top_k >= 1,
                "top_k must be a positive integer")
        return cls(tuple(tokens), mask_index, top_k)


@dataclass(frozen=True)
class FillCandidate:
    token: str
    score: float

    def to_wire(self) -> dict:
        return {"token": self.token, "score": self.score}

    @classmethod
    def from_wire(cls, body) -> "FillCandidate":
        _expect(isinstance(body, dict), "candidate must be an object")
        token = body.get("token")
        _expect(isinstance(token, str), "candidate token must be a string")
        return cls(token, _finite_number(body.get("score"), "candidate score"))


@dataclass(frozen=True)
class MaskFillResponse:
    candidates: tuple[FillCandidate, ...]

    def to_wire(self) -> dict:
        return {"candidates": [c.to_wire() for c in self.candidates]}

    @classmethod
    def from_wire(cls, body) -> "MaskFillResponse":
        _expect(isinstance(body, dict), "mask_fill response must be an object")
        raw = body.get("candidates")
        _expect(isinstance(raw, list), "candidates must be a list")
        return cls(tuple(FillCandidate.from_wire(c) for c in raw))


@dataclass(frozen=True)
class ImportanceRequest:
    tokens: tuple[str, ...]
    entity_indices: tuple[int, ...]

    def to_wire(self) -> dict:
        return {"tokens": list(self.tokens), "entity_indices": list(self.entity_indices)}

    @classmethod
    def from_wire(cls, body) -> "ImportanceRequest":
        _expect(isinstance(body, dict), "importance body must be an object")
        tokens = _string_list(body.get("tokens"), "tokens")
        raw = body.get("entity_indices")
        _expect(isinstance(raw, list) and all(
            isinstance(i, int) and not isinstance(i, bool) for i in raw),
            "entity_indices must be a list of integers")
        return cls(tuple(tokens), tuple(raw))


@dataclass(frozen=True)
class ImportanceResponse:
    scores: tuple[float, ...]

    def to_wire(self) -> dict:
        return {"scores": list(self.scores)}

    @classmethod
    def from_wire(cls, body) -> "ImportanceResponse":
        _expect(isinstance(body, dict), "importance response must be an object")
        raw = body.get("scores")
        _expect(isinstance(raw, list), "scores must be a list")
        return cls(tuple(_finite_number(s, "score") for s in raw))


@dataclass(frozen=True)
class EmbedRequest:
    texts: tuple[str, ...]

    def to_wire(self) -> dict:
        return {"texts": list(self.texts)}

    @classmethod
    def from_wire(cls, body) -> "EmbedRequest":
        _expect(isinstance(body, dict), "embed body must be an object")
        return cls(tuple(_string_list(body.get("texts"), "texts")))


@dataclass(frozen=True)
class EmbedResponse:
    vectors: tuple[tuple[float, ...], ...]

    def to_wire(self) -> dict:
        return {"vectors": [list(v) for v in self.vectors]}

    @classmethod
    def from_wire(cls, body) -> "EmbedResponse":
        _expect(isinstance(body, dict), "embed response must be an object")
        raw = body.get("vectors")
        _expect(isinstance(raw, list), "vectors must be a list")
        vectors = []
        for vec in raw:
            _expect(isinstance(vec, list), "vector must be a list")
            vectors.append(tuple(_finite_number(x, "vector component") for x in vec))
        return cls(tuple(vectors))


@dataclass(frozen=True)
class WireError:
    code: str
    message: str

    def to_wire(self) -> dict:
        return {"error": {"code": self.code, "message": self.message}}

    @classmethod
    def from_wire(cls, body) -> "WireError":
        _expect(isinstance(body, dict) and isinstance(body.get("error"), dict),
                "error body must be {error: {...}}")
        err = body["error"]
        code, message = err.get("code"), err.get("message")
        _expect(isinstance(code, str) and isinstance(message, str),
                "error code and message must be strings")
        return cls(code, message)
