"""Candidate selection: rank non-entity token indices, take the top-k.

Five strategies share one contract: given a sentence and a budget k,
return at most k unique indices of tokens whose NER tag is ``O`` (entity
tokens are never eligible), deterministically. Rankings are prefix
stable: the ranking for budget k is a prefix of the ranking for any
larger budget, which keeps realized perturbation counts monotone.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .corpus import Sentence
from .hashing import derive_seed

POS_ELIGIBLE_TAGS = frozenset({"ADJ", "NOUN", "ADV", "VERB"})
NP_CHUNK_TAGS = frozenset({"B-NP", "I-NP"})


class SelectionMethod(enum.Enum):
    RDM = "rdm"  # random
    PST = "pst"  # POS tagging
    DEP = "dep"  # dependency parsing
    CHK = "chk"  # chunking
    GDT = "gdt"  # gradient attribution


@dataclass(frozen=True)
class CandidateRanking:
    sentence_id: str
    ranked_indices: tuple[int, ...]
    method: SelectionMethod

    def __post_init__(self):
        object.__setattr__(self, "ranked_indices", tuple(self.ranked_indices))
        if len(set(self.ranked_indices)) != len(self.ranked_indices):
            raise ValueError(f"ranking for {self.sentence_id} contains duplicate indices")

    def __len__(self) -> int:
        return len(self.ranked_indices)


@dataclass(frozen=True)
class ImportanceScores:
    """Per-token attribution magnitudes, one finite value per token."""

    sentence_id: str
    scores: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(float(s) for s in self.scores))
        for i, s in enumerate(self.scores):
            if not math.isfinite(s):
                raise ValueError(f"non-finite importance score at position {i}: {s}")


def non_entity_indices(sentence: Sentence) -> list[int]:
    """Indices with ner == O, ascending."""
    return [t.index for t in sentence.tokens if not t.is_entity]


def _entity_indices(sentence: Sentence) -> list[int]:
    return [t.index for t in sentence.tokens if t.is_entity]


def _check_budget(k: int) -> None:
    if k < 0:
        raise ValueError(f"budget must be >= 0, got {k}")


def _nearest_entity_distance(index: int, entities: list[int]) -> int:
    return min(abs(index - e) for e in entities)


def select_random(sentence: Sentence, k: int, seed: int) -> CandidateRanking:
    """Uniform sample without replacement of non-entity indices.

    Drawn as the first k elements of a PCG64 permutation keyed on
    (seed, sentence id), so the same inputs always give the same ranking
    and smaller budgets are prefixes of larger ones.
    """
    _check_budget(k)
    eligible = non_entity_indices(sentence)
    rng = np.random.Generator(np.random.PCG64(derive_seed(seed, sentence.id)))
    order = rng.permutation(len(eligible))
    picked = tuple(eligible[i] for i in order[: min(k, len(eligible))])
    return CandidateRanking(sentence.id, picked, SelectionMethod.RDM)


def select_pos(sentence: Sentence, k: int) -> CandidateRanking:
    """Semantic-rich POS classes (ADJ/NOUN/ADV/VERB), nearest entity first.

    PROPN is deliberately not eligible: unannotated proper nouns are the
    tokens most likely to be entities the gold labels missed.
    """
    _check_budget(k)
    entities = _entity_indices(sentence)
    eligible = [
        t.index
        for t in sentence.tokens
        if not t.is_entity and t.upos in POS_ELIGIBLE_TAGS
    ]
    if entities:
        eligible.sort(key=lambda i: (_nearest_entity_distance(i, entities), i))
    return CandidateRanking(sentence.id, tuple(eligible[:k]), SelectionMethod.PST)


def select_dep(sentence: Sentence, k: int) -> CandidateRanking:
    """Tokens within two dependency hops of an entity token.

    Tier 1 holds direct neighbours (head or dependent of an entity),
    tier 2 the two-hop ring; within a tier, closer linear distance to
    the nearest entity wins, ties break left to right. Sentences with no
    entities have nothing to be related to and yield an empty ranking.
    """
    _check_budget(k)
    entities = _entity_indices(sentence)
    if not entities:
        return CandidateRanking(sentence.id, (), SelectionMethod.DEP)

    n = len(sentence)
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for tok in sentence.tokens:
        if tok.head > 0:
            adjacency[tok.index].add(tok.head - 1)
            adjacency[tok.head - 1].add(tok.index)

    # BFS from all entity tokens at once; hop distance 1 and 2 form the tiers.
    dist = {e: 0 for e in entities}
    frontier = list(entities)
    for hop in (1, 2):
        nxt: list[int] = []
        for node in frontier:
            for nb in adjacency[node]:
                if nb not in dist:
                    dist[nb] = hop
                    nxt.append(nb)
        frontier = nxt

    entity_set = set(entities)
    eligible = [
        (dist[i], _nearest_entity_distance(i, entities), i)
        for i in dist
        if i not in entity_set and sentence.tokens[i].ner == "O"
    ]
    eligible.sort()
    return CandidateRanking(sentence.id, tuple(i for _, _, i in eligible[:k]), SelectionMethod.DEP)


def _np_chunks(sentence: Sentence) -> list[list[int]]:
    """Contiguous NP chunk token-index groups (B-NP starts, I-NP continues)."""
    chunks: list[list[int]] = []
    current: list[int] = []
    for tok in sentence.tokens:
        if tok.chunk == "B-NP":
            if current:
                chunks.append(current)
            current = [tok.index]
        elif tok.chunk == "I-NP":
            if current and current[-1] == tok.index - 1:
                current.append(tok.index)
            else:  # I-NP opening a chunk (no preceding NP member)
                if current:
                    chunks.append(current)
                current = [tok.index]
        else:
            if current:
                chunks.append(current)
                current = []
    if current:
        chunks.append(current)
    return chunks


def select_chunk(sentence: Sentence, k: int) -> CandidateRanking:
    """Non-entity members of NP chunks, nearest chunk first.

    A chunk's rank is its minimum token distance to any entity token
    (0 when the chunk overlaps an entity); members are emitted left to
    right within each chunk. No entities means no ranking.
    """
    _check_budget(k)
    entities = _entity_indices(sentence)
    if not entities:
        return CandidateRanking(sentence.id, (), SelectionMethod.CHK)

    ranked: list[tuple[int, int, list[int]]] = []
    for chunk in _np_chunks(sentence):
        distance = min(_nearest_entity_distance(i, entities) for i in chunk)
        members = [i for i in chunk if sentence.tokens[i].ner == "O"]
        if members:
            ranked.append((distance, chunk[0], members))
    ranked.sort(key=lambda item: (item[0], item[1]))

    flat: list[int] = []
    for _, _, members in ranked:
        flat.extend(members)
    return CandidateRanking(sentence.id, tuple(flat[:k]), SelectionMethod.CHK)


def select_gradient(sentence: Sentence, k: int, scores: ImportanceScores) -> CandidateRanking:
    """Non-entity indices by descending importance score, ties left first."""
    _check_budget(k)
    if len(scores.scores) != len(sentence):
        raise ValueError(
            f"sentence {sentence.id}: {len(scores.scores)} scores for {len(sentence)} tokens"
        )
    eligible = non_entity_indices(sentence)
    eligible.sort(key=lambda i: (-scores.scores[i], i))
    return CandidateRanking(sentence.id, tuple(eligible[:k]), SelectionMethod.GDT)
