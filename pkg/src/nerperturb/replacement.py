"""Candidate replacement: produce a single-token substitute per index.

Two strategies. Synonym replacement draws uniformly from the WordNet
pool of the token's (lemma, POS); masked-LM replacement masks one
position at a time and accepts the best backend candidate that survives
the lexical filter. Both keep the token count constant so the NER label
column stays aligned with the perturbed text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .corpus import Sentence
from .hashing import derive_seed
from .wordnet import WordNetStore, map_pos, synonym_candidates

# Accepted substitutes: letters/digits with optional internal hyphens.
# Rejects punctuation, subword fragments and anything multi-token.
_WORD_RE = re.compile(r"^[A-Za-z0-9]+(?:-[A-Za-z0-9]+)*$")


class ReplacementError(ValueError):
    """Replacement asked to touch an entity token or other misuse."""


@dataclass(frozen=True)
class Replacement:
    index: int
    original: str
    substitute: str
    source: str          # "synonym" | "mlm"
    detail: str = ""     # synset offset or mask-fill rank/score

    def __post_init__(self):
        if not self.substitute or any(c.isspace() for c in self.substitute):
            raise ValueError(f"substitute must be non-empty without whitespace: {self.substitute!r}")
        if self.substitute.lower() == self.original.lower():
            raise ValueError(f"substitute equals original (case-insensitive): {self.original!r}")
        if self.source not in ("synonym", "mlm"):
            raise ValueError(f"unknown replacement source {self.source!r}")


@dataclass(frozen=True)
class ReplacerConfig:
    mlm_top_k: int = 10
    seed: int = 0
    case_policy: str = "mirror"

    def __post_init__(self):
        if self.mlm_top_k < 1:
            raise ValueError(f"mlm_top_k must be >= 1, got {self.mlm_top_k}")
        if self.case_policy != "mirror":
            raise ValueError(f"unsupported case policy {self.case_policy!r}")


def apply_case(original: str, substitute: str) -> str:
    """Mirror the original token's casing onto the substitute."""
    if not original or not substitute:
        raise ValueError("apply_case requires non-empty strings")
    if original.isupper():
        return substitute.upper()
    if original.istitle():
        return substitute.capitalize()
    return substitute


def synonym_replace(sentence: Sentence, index: int, store: WordNetStore, seed: int) -> Replacement | None:
    """Uniform draw from the WordNet synonym pool, case-mirrored.

    None when the POS has no WordNet category or the pool is empty. The
    draw is keyed on (seed, sentence id, index) so it is independent of
    the order indices are processed in.
    """
    token = sentence.tokens[index]
    if token.is_entity:
        raise ReplacementError(f"sentence {sentence.id}: token {index} is an entity token")
    pos = map_pos(token.upos)
    if pos is None:
        return None
    pool = synonym_candidates(store, token.form.lower(), pos)
    if not pool:
        return None
    rng = np.random.Generator(np.random.PCG64(derive_seed(seed, sentence.id, index)))
    lemma, offset = pool[int(rng.integers(len(pool)))]
    return Replacement(
        index=index,
        original=token.form,
        substitute=apply_case(token.form, lemma),
        source="synonym",
        detail=f"synset={offset:08d}",
    )


def _acceptable(candidate: str, original: str) -> bool:
    if candidate.lower() == original.lower():
        return False
    if candidate.startswith("##"):  # word-piece continuation fragment
        return False
    return bool(_WORD_RE.match(candidate))


def mlm_replace(sentence: Sentence, indices: list[int], backend, config: ReplacerConfig) -> list[Replacement]:
    """Mask-and-fill the given indices in order, one backend query each.

    Earlier accepted substitutes are visible as context for later masks.
    An index whose top-k candidates all fail the filter is skipped; no
    replacement is emitted for it and no budget is consumed here (the
    attack engine back-fills from deeper ranks).
    """
    if len(set(indices)) != len(indices):
        raise ReplacementError("mlm_replace indices must be unique")
    for idx in indices:
        if sentence.tokens[idx].is_entity:
            raise ReplacementError(f"sentence {sentence.id}: token {idx} is an entity token")

    working = sentence.forms()
    out: list[Replacement] = []
    for idx in indices:
        candidates = backend.mask_fill(working, idx, config.mlm_top_k)
        original = sentence.tokens[idx].form
        for rank, cand in enumerate(candidates):
            if not _acceptable(cand.token, original):
                continue
            substitute = apply_case(original, cand.token)
            if substitute.lower() == original.lower():
                continue
            out.append(
                Replacement(
                    index=idx,
                    original=original,
                    substitute=substitute,
                    source="mlm",
                    detail=f"rank={rank} score={cand.score:.6g}",
                )
            )
            working[idx] = substitute
            break
    return out
