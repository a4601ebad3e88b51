"""Seeded random inputs for property suites (sentences, scores)."""

from __future__ import annotations

import numpy as np

from nerperturb.corpus import Sentence, Token

UPOS_POOL = ["NOUN", "VERB", "ADJ", "ADV", "PROPN", "DET", "ADP", "PRON", "PUNCT", "AUX"]
FORM_POOL = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta",
             "iota", "kappa", "lam", "mu", "nu", "xi", "omicron", "pi"]
TYPES = ["PER", "LOC", "ORG", "MISC"]


def random_sentence(rng: np.random.Generator, sid: str, max_len: int = 12) -> Sentence:
    n = int(rng.integers(1, max_len + 1))
    tokens = []
    chunk_open = False
    for i in range(n):
        roll = int(rng.integers(0, 10))
        if roll < 6:
            ner = "O"
        elif roll < 8:
            ner = f"B-{TYPES[rng.integers(0, 4)]}"
        else:
            ner = f"I-{TYPES[rng.integers(0, 4)]}"
        croll = int(rng.integers(0, 3))
        if croll == 0:
            chunk, chunk_open = "B-NP", True
        elif croll == 1 and chunk_open:
            chunk = "I-NP"
        else:
            chunk, chunk_open = "O", False
        head = int(rng.integers(0, n + 1))
        if head == i + 1:
            head = 0
        tokens.append(Token(
            index=i,
            form=FORM_POOL[rng.integers(0, len(FORM_POOL))],
            upos=UPOS_POOL[rng.integers(0, len(UPOS_POOL))],
            chunk=chunk,
            head=head,
            deprel="dep",
            ner=ner,
        ))
    return Sentence(sid, tuple(tokens))


def random_scores(rng: np.random.Generator, n: int) -> tuple[float, ...]:
    return tuple(float(x) for x in rng.normal(size=n))
