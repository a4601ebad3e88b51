"""Attack evaluation: entity-level F1, embedding similarity, reports.

Performance decrease is the drop in micro-averaged exact-match span F1
between the original and the adversarial corpus, both scored against
the same gold labels. Textual similarity is the unweighted per-sentence
mean of the cosine between original and adversarial sentence embeddings
(sentences detokenized by single-space join before embedding).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .corpus import Corpus, EntitySpan, Sentence, extract_spans


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int


@dataclass(frozen=True)
class SentenceRecord:
    id: str
    similarity: float
    replaced_count: int
    original_pred_spans: tuple[EntitySpan, ...]
    adversarial_pred_spans: tuple[EntitySpan, ...]


@dataclass(frozen=True)
class AttackReport:
    original_corpus: str
    adversarial_corpus: str
    config: dict = field(default_factory=dict)
    backend_models: dict = field(default_factory=dict)
    f1_original: float = 0.0
    f1_adversarial: float = 0.0
    delta_perf: float = 0.0
    mean_similarity: float = 0.0
    prf_original: PRF | None = None
    prf_adversarial: PRF | None = None
    per_sentence: tuple[SentenceRecord, ...] = ()

    def __post_init__(self):
        if self.delta_perf != self.f1_original - self.f1_adversarial:
            raise ValueError("delta_perf must equal f1_original - f1_adversarial")

    def to_dict(self) -> dict:
        """Stable-key-order dict for serialization."""

        def spans(sps: Iterable[EntitySpan]) -> list[list]:
            return [[s.start, s.end, s.etype] for s in sps]

        def prf(p: PRF | None) -> dict | None:
            if p is None:
                return None
            return {"precision": p.precision, "recall": p.recall, "f1": p.f1,
                    "tp": p.tp, "fp": p.fp, "fn": p.fn}

        return {
            "original_corpus": self.original_corpus,
            "adversarial_corpus": self.adversarial_corpus,
            "config": dict(self.config),
            "backend_models": dict(self.backend_models),
            "f1_original": self.f1_original,
            "f1_adversarial": self.f1_adversarial,
            "delta_perf": self.delta_perf,
            "mean_similarity": self.mean_similarity,
            "prf_original": prf(self.prf_original),
            "prf_adversarial": prf(self.prf_adversarial),
            "per_sentence": [
                {
                    "id": r.id,
                    "similarity": r.similarity,
                    "replaced_count": r.replaced_count,
                    "original_pred_spans": spans(r.original_pred_spans),
                    "adversarial_pred_spans": spans(r.adversarial_pred_spans),
                }
                for r in self.per_sentence
            ],
        }


def f1_score(gold: Sequence[Iterable[EntitySpan]], pred: Sequence[Iterable[EntitySpan]]) -> PRF:
    """Micro-averaged exact-match span F1 over aligned sentences.

    A predicted span is a true positive iff the same (start, end, type)
    triple is gold in the same sentence. With no predictions, precision
    is 0 unless gold is empty too, in which case P = R = F1 = 1.
    """
    if len(gold) != len(pred):
        raise ValueError(f"gold has {len(gold)} sentences, pred has {len(pred)}")
    tp = fp = fn = 0
    for g, p in zip(gold, pred):
        g_set, p_set = set(g), set(p)
        tp += len(g_set & p_set)
        fp += len(p_set - g_set)
        fn += len(g_set - p_set)

    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = 1.0 if fn == 0 else 0.0
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = 1.0 if fp == 0 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return PRF(precision, recall, f1, tp, fp, fn)


def cosine(u, v) -> float:
    """Cosine similarity, clamped to [-1, 1]; rejects zero vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.ndim != 1 or v.ndim != 1 or u.shape != v.shape or u.size == 0:
        raise ValueError(f"cosine needs equal nonzero dimensions, got {u.shape} and {v.shape}")
    uu = float(np.dot(u, u))
    vv = float(np.dot(v, v))
    if uu == 0.0 or vv == 0.0:
        raise ValueError("cosine undefined for the zero vector")
    value = float(np.dot(u, v)) / float(np.sqrt(uu * vv))
    return max(-1.0, min(1.0, value))


def similarity_score(original: Sentence, adversarial: Sentence, backend) -> float:
    """Embed both detokenized sentences and return their cosine."""
    vectors = backend.embed([original.text(), adversarial.text()])
    return cosine(vectors[0], vectors[1])


def _replaced_count(original: Sentence, adversarial: Sentence) -> int:
    return sum(1 for a, b in zip(original.tokens, adversarial.tokens) if a.form != b.form)


def evaluate_attack(
    original: Corpus,
    adversarial: Corpus,
    gold: Corpus,
    backend,
    config: dict | None = None,
) -> AttackReport:
    """Score an attack: victim F1 on both corpora plus mean similarity."""
    if original.ids() != adversarial.ids() or original.ids() != gold.ids():
        raise ValueError("corpora are not aligned by sentence id")
    for o, a, g in zip(original.sentences, adversarial.sentences, gold.sentences):
        if not (len(o) == len(a) == len(g)):
            raise ValueError(f"sentence {o.id}: corpora disagree on token count")

    gold_spans = [extract_spans(s.ner_tags()) for s in gold.sentences]
    pred_orig = backend.ner_predict([s.forms() for s in original.sentences])
    pred_adv = backend.ner_predict([s.forms() for s in adversarial.sentences])
    spans_orig = [extract_spans(t) for t in pred_orig]
    spans_adv = [extract_spans(t) for t in pred_adv]

    prf_orig = f1_score(gold_spans, spans_orig)
    prf_adv = f1_score(gold_spans, spans_adv)

    if len(original) > 0:
        vec_orig = backend.embed([s.text() for s in original.sentences])
        vec_adv = backend.embed([s.text() for s in adversarial.sentences])
        sims = [cosine(u, v) for u, v in zip(vec_orig, vec_adv)]
        mean_similarity = sum(sims) / len(sims)
    else:
        sims = []
        mean_similarity = 1.0  # a no-op over nothing preserves everything

    records = tuple(
        SentenceRecord(
            id=o.id,
            similarity=sims[i],
            replaced_count=_replaced_count(o, a),
            original_pred_spans=tuple(spans_orig[i]),
            adversarial_pred_spans=tuple(spans_adv[i]),
        )
        for i, (o, a) in enumerate(zip(original.sentences, adversarial.sentences))
    )

    health = getattr(backend, "health", None)
    models = dict(health.models) if health is not None else {}

    return AttackReport(
        original_corpus=original.origin,
        adversarial_corpus=adversarial.origin,
        config=dict(config or {}),
        backend_models=models,
        f1_original=prf_orig.f1,
        f1_adversarial=prf_adv.f1,
        delta_perf=prf_orig.f1 - prf_adv.f1,
        mean_similarity=mean_similarity,
        prf_original=prf_orig,
        prf_adversarial=prf_adv,
        per_sentence=records,
    )
