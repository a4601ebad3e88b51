"""nerperturb: context-aware adversarial attacks on NER corpora.

Perturbs the most informative non-entity words of annotated sentences
(five selection strategies, two replacement strategies) and evaluates
the damage by textual similarity and entity-level F1 decrease.
"""

from .attack import AdversarialExample, AttackConfig, AttackError, attack_corpus, attack_sentence
from .corpus import (
    Corpus,
    CorpusStats,
    EntitySpan,
    ParseError,
    Sentence,
    Token,
    corpus_stats,
    extract_spans,
    parse_conll,
    read_conll,
    serialize_conll,
    write_conll,
)
from .evaluation import AttackReport, PRF, cosine, evaluate_attack, f1_score, similarity_score
from .replacement import Replacement, ReplacerConfig, apply_case, mlm_replace, synonym_replace
from .selection import (
    CandidateRanking,
    ImportanceScores,
    SelectionMethod,
    non_entity_indices,
    select_chunk,
    select_dep,
    select_gradient,
    select_pos,
    select_random,
)
from .wordnet import WnPos, WordNetError, WordNetStore, load_wordnet, map_pos, synonyms

__version__ = "0.1.0"

__all__ = [
    "AdversarialExample",
    "AttackConfig",
    "AttackError",
    "AttackReport",
    "CandidateRanking",
    "Corpus",
    "CorpusStats",
    "EntitySpan",
    "ImportanceScores",
    "PRF",
    "ParseError",
    "Replacement",
    "ReplacerConfig",
    "SelectionMethod",
    "Sentence",
    "Token",
    "WnPos",
    "WordNetError",
    "WordNetStore",
    "apply_case",
    "attack_corpus",
    "attack_sentence",
    "corpus_stats",
    "cosine",
    "evaluate_attack",
    "extract_spans",
    "f1_score",
    "load_wordnet",
    "map_pos",
    "mlm_replace",
    "non_entity_indices",
    "parse_conll",
    "read_conll",
    "select_chunk",
    "select_dep",
    "select_gradient",
    "select_pos",
    "select_random",
    "serialize_conll",
    "similarity_score",
    "synonym_replace",
    "synonyms",
    "write_conll",
]
