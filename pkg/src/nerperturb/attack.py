"""Attack engine: selection feeding replacement under a fixed budget.

Per sentence: rank candidates to depth budget x overshoot, then walk the
ranking replacing words until the budget is met or candidates run out.
The deeper ranking exists so that candidates the replacer rejects (no
synonyms, no acceptable mask fill) can be back-filled and attacks with
equal budgets end up with comparable realized perturbation counts.
Entity tokens are never touched and the gold NER column is carried over
unchanged.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .corpus import Corpus, Sentence
from .replacement import Replacement, ReplacerConfig, mlm_replace, synonym_replace
from .selection import (
    CandidateRanking,
    ImportanceScores,
    SelectionMethod,
    select_chunk,
    select_dep,
    select_gradient,
    select_pos,
    select_random,
)
from .wordnet import WordNetStore

REPLACERS = ("synonym", "mlm")


class AttackError(Exception):
    """Attack aborted; ``completed`` holds the examples finished so far."""

    def __init__(self, message: str, completed: list | None = None):
        super().__init__(message)
        self.completed = completed or []


@dataclass(frozen=True)
class AttackConfig:
    method: SelectionMethod
    replacer: str = "synonym"
    budget: int = 5           # words perturbed per sentence
    seed: int = 42
    mlm_top_k: int = 10
    overshoot: int = 3        # ranking depth multiplier for back-fill

    def __post_init__(self):
        if self.replacer not in REPLACERS:
            raise ValueError(f"unknown replacer {self.replacer!r}")
        if self.budget < 0:
            raise ValueError(f"budget must be >= 0, got {self.budget}")
        if self.overshoot < 1:
            raise ValueError(f"overshoot must be >= 1, got {self.overshoot}")
        if self.mlm_top_k < 1:
            raise ValueError(f"mlm_top_k must be >= 1, got {self.mlm_top_k}")

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "replacer": self.replacer,
            "budget": self.budget,
            "seed": self.seed,
            "mlm_top_k": self.mlm_top_k,
            "overshoot": self.overshoot,
        }


@dataclass(frozen=True)
class AdversarialExample:
    original: Sentence
    perturbed: Sentence
    replacements: tuple[Replacement, ...]
    config: AttackConfig

    def __post_init__(self):
        object.__setattr__(self, "replacements", tuple(self.replacements))
        o, p = self.original, self.perturbed
        if len(o) != len(p) or o.id != p.id:
            raise ValueError(f"sentence {o.id}: perturbed copy is not aligned")
        replaced = {r.index for r in self.replacements}
        for a, b in zip(o.tokens, p.tokens):
            if (a.upos, a.chunk, a.head, a.deprel, a.ner) != (b.upos, b.chunk, b.head, b.deprel, b.ner):
                raise ValueError(f"sentence {o.id}: non-FORM column changed at token {a.index}")
            if (a.form != b.form) != (a.index in replaced):
                raise ValueError(f"sentence {o.id}: FORM diff does not match replacement set at {a.index}")

    @property
    def replaced_count(self) -> int:
        return len(self.replacements)


def _rank_candidates(sentence: Sentence, depth: int, config: AttackConfig, backend) -> CandidateRanking:
    method = config.method
    if method is SelectionMethod.RDM:
        return select_random(sentence, depth, config.seed)
    if method is SelectionMethod.PST:
        return select_pos(sentence, depth)
    if method is SelectionMethod.DEP:
        return select_dep(sentence, depth)
    if method is SelectionMethod.CHK:
        return select_chunk(sentence, depth)
    if method is SelectionMethod.GDT:
        if backend is None:
            raise AttackError("gradient selection needs a backend for importance scores")
        entity_indices = [t.index for t in sentence.tokens if t.is_entity]
        raw = backend.importance(sentence.forms(), entity_indices)
        return select_gradient(sentence, depth, ImportanceScores(sentence.id, tuple(raw)))
    raise AttackError(f"unhandled selection method {method}")


def attack_sentence(
    sentence: Sentence,
    config: AttackConfig,
    wordnet_store: WordNetStore | None = None,
    backend=None,
) -> AdversarialExample:
    """Perturb one sentence; the example records what actually changed."""
    depth = config.budget * config.overshoot
    ranking = _rank_candidates(sentence, depth, config, backend)

    accepted: list[Replacement] = []
    if config.budget > 0:
        if config.replacer == "synonym":
            if wordnet_store is None:
                raise AttackError("synonym replacement needs a WordNet store")
            for idx in ranking.ranked_indices:
                rep = synonym_replace(sentence, idx, wordnet_store, config.seed)
                if rep is not None:
                    accepted.append(rep)
                    if len(accepted) == config.budget:
                        break
        else:  # mlm
            if backend is None:
                raise AttackError("masked-LM replacement needs a backend")
            rc = ReplacerConfig(mlm_top_k=config.mlm_top_k, seed=config.seed)
            # one index at a time so accepted fills are context for later
            # masks and rejected candidates do not consume budget
            working = sentence
            for idx in ranking.ranked_indices:
                reps = mlm_replace(working, [idx], backend, rc)
                if reps:
                    accepted.append(reps[0])
                    forms = working.forms()
                    forms[idx] = reps[0].substitute
                    working = working.with_forms(forms)
                    if len(accepted) == config.budget:
                        break

    forms = sentence.forms()
    for rep in accepted:
        forms[rep.index] = rep.substitute
    return AdversarialExample(
        original=sentence,
        perturbed=sentence.with_forms(forms),
        replacements=tuple(sorted(accepted, key=lambda r: r.index)),
        config=config,
    )


def attack_corpus(
    corpus: Corpus,
    config: AttackConfig,
    wordnet_store: WordNetStore | None = None,
    backend=None,
    jobs: int = 1,
) -> tuple[Corpus, list[AdversarialExample]]:
    """Attack every sentence; output order matches input order.

    Each sentence's randomness is keyed on (seed, sentence id), so the
    result is identical no matter how many workers run. The first
    backend failure aborts and reports how far the attack got.
    """
    examples: list[AdversarialExample] = []
    try:
        if jobs <= 1:
            for sentence in corpus.sentences:
                examples.append(attack_sentence(sentence, config, wordnet_store, backend))
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                futures = [
                    pool.submit(attack_sentence, s, config, wordnet_store, backend)
                    for s in corpus.sentences
                ]
                for fut in futures:
                    examples.append(fut.result())
    except Exception as exc:
        raise AttackError(
            f"attack aborted after {len(examples)} of {len(corpus)} sentences: {exc}",
            completed=examples,
        ) from exc

    perturbed = Corpus(tuple(ex.perturbed for ex in examples), origin=f"{corpus.origin}:adversarial")
    return perturbed, examples


def replacement_log_lines(examples: list[AdversarialExample]) -> list[str]:
    """One JSON record per replacement, in corpus order."""
    lines = []
    for ex in examples:
        for rep in ex.replacements:
            lines.append(json.dumps({
                "sentence_id": ex.original.id,
                "index": rep.index,
                "original": rep.original,
                "substitute": rep.substitute,
                "source": rep.source,
                "detail": rep.detail,
            }, ensure_ascii=False))
    return lines


def write_replacement_log(examples: list[AdversarialExample], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in replacement_log_lines(examples):
            fh.write(line + "\n")
