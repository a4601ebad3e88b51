import numpy as np
import pytest

from nerperturb.corpus import Corpus, EntitySpan, Sentence, Token, extract_spans, parse_conll
from nerperturb.evaluation import (
    AttackReport,
    cosine,
    evaluate_attack,
    f1_score,
    similarity_score,
)
from nerperturb.hashing import fnv1a64

from conftest import STUB_EMBED_DIM, POISON
from oracles import f1_oracle


def spanify(triples):
    return [EntitySpan(*t) for t in triples]


# -- f1_score -------------------------------------------------------------------

def test_f1_perfect():
    gold = [spanify([(0, 1, "PER")]), spanify([(1, 3, "LOC"), (4, 5, "ORG")])]
    prf = f1_score(gold, gold)
    assert (prf.precision, prf.recall, prf.f1) == (1.0, 1.0, 1.0)
    assert (prf.tp, prf.fp, prf.fn) == (3, 0, 0)


def test_f1_half_recall():
    gold = [spanify([(0, 1, "PER"), (2, 4, "LOC")])]
    pred = [spanify([(0, 1, "PER")])]
    prf = f1_score(gold, pred)
    assert prf.precision == 1.0
    assert prf.recall == 0.5
    assert prf.f1 == pytest.approx(2 / 3, abs=1e-9)


def test_f1_empty_pred_nonempty_gold():
    prf = f1_score([spanify([(0, 1, "PER")])], [[]])
    assert prf.f1 == 0.0 and prf.precision == 0.0 and prf.recall == 0.0


def test_f1_both_empty():
    prf = f1_score([[]], [[]])
    assert (prf.precision, prf.recall, prf.f1) == (1.0, 1.0, 1.0)


def test_f1_type_must_match():
    gold = [spanify([(0, 1, "PER")])]
    pred = [spanify([(0, 1, "LOC")])]
    assert f1_score(gold, pred).f1 == 0.0


def test_f1_length_mismatch_rejected():
    with pytest.raises(ValueError):
        f1_score([[]], [[], []])


def _random_spansets(rng, n_sentences):
    out = []
    for _ in range(n_sentences):
        spans = set()
        for _ in range(int(rng.integers(0, 5))):
            start = int(rng.integers(0, 12))
            end = start + int(rng.integers(1, 4))
            spans.add((start, end, ["PER", "LOC", "ORG"][rng.integers(0, 3)]))
        out.append(sorted(spans))
    return out


def test_f1_matches_set_intersection_oracle():
    rng = np.random.Generator(np.random.PCG64(314))
    for _ in range(500):
        n = int(rng.integers(0, 8))
        gold = _random_spansets(rng, n)
        pred = _random_spansets(rng, n)
        prf = f1_score([spanify(g) for g in gold], [spanify(p) for p in pred])
        op, orc, of1 = f1_oracle(gold, pred)
        assert abs(prf.precision - op) <= 1e-12
        assert abs(prf.recall - orc) <= 1e-12
        assert abs(prf.f1 - of1) <= 1e-12


def test_f1_invariant_under_sentence_permutation():
    rng = np.random.Generator(np.random.PCG64(15))
    gold = _random_spansets(rng, 20)
    pred = _random_spansets(rng, 20)
    base = f1_score([spanify(g) for g in gold], [spanify(p) for p in pred])
    order = rng.permutation(20)
    shuffled = f1_score([spanify(gold[i]) for i in order], [spanify(pred[i]) for i in order])
    assert (base.precision, base.recall, base.f1) == (shuffled.precision, shuffled.recall, shuffled.f1)


# -- cosine ---------------------------------------------------------------------

def test_cosine_identical_is_exactly_one():
    v = [0.3, 1.7, -2.2, 0.9]
    assert cosine(v, v) == 1.0


def test_cosine_orthogonal_and_opposite():
    assert cosine([1.0, 0.0], [0.0, 1.0]) == 0.0
    assert cosine([1.0, 0.0], [-1.0, 0.0]) == -1.0


def test_cosine_rejects_zero_vector_and_mismatch():
    with pytest.raises(ValueError):
        cosine([0.0, 0.0], [1.0, 0.0])
    with pytest.raises(ValueError):
        cosine([1.0], [1.0, 0.0])
    with pytest.raises(ValueError):
        cosine([], [])


def test_cosine_scale_invariance():
    rng = np.random.Generator(np.random.PCG64(8))
    for _ in range(100):
        u = rng.normal(size=6)
        v = rng.normal(size=6)
        a, b = rng.uniform(0.01, 100, size=2)
        assert cosine(u, v) == pytest.approx(cosine(a * u, b * v), abs=1e-9)


# -- similarity_score --------------------------------------------------------------

def _plain_sentence(sid, forms, ner=None):
    ner = ner or ["O"] * len(forms)
    tokens = tuple(Token(i, f, "NOUN", "O", 0, "dep", t)
                   for i, (f, t) in enumerate(zip(forms, ner)))
    return Sentence(sid, tokens)


def test_similarity_identical_sentences(backend):
    s = _plain_sentence("s", ["orchid", "falcon"])
    assert similarity_score(s, s, backend) == 1.0


def test_similarity_closed_form_one_of_four(backend):
    # distinct embedding dimensions verified below, so the stub's bag
    # vectors make the similarity exactly (n-1)/n for one swapped word
    words = ["orchid", "falcon", "tundra", "basalt"]
    replacement = "quasar"
    dims = {fnv1a64(w) % STUB_EMBED_DIM for w in words + [replacement]}
    assert len(dims) == 5
    original = _plain_sentence("c", words)
    adversarial = _plain_sentence("c", words[:3] + [replacement])
    assert similarity_score(original, adversarial, backend) == pytest.approx(0.75, abs=1e-9)


def test_similarity_empty_sentence_rejected(backend):
    empty = Sentence("e", ())
    with pytest.raises(ValueError):
        similarity_score(empty, empty, backend)


# -- evaluate_attack -----------------------------------------------------------------

TOY3 = (
    "# id = a\n"
    "1\tWilson\tPROPN\tB-NP\t2\tnsubj\tB-PER\n"
    "2\tmakes\tVERB\tO\t0\troot\tO\n"
    "3\trackets\tNOUN\tB-NP\t2\tobj\tO\n\n"
    "# id = b\n"
    "1\tHarper\tPROPN\tB-NP\t2\tnsubj\tB-PER\n"
    "2\tvisits\tVERB\tO\t0\troot\tO\n"
    "3\tBerlin\tPROPN\tB-NP\t2\tobj\tB-LOC\n\n"
    "# id = c\n"
    "1\tthe\tDET\tB-NP\t2\tdet\tO\n"
    "2\tlantern\tNOUN\tI-NP\t3\tnsubj\tO\n"
    "3\tglows\tVERB\tO\t0\troot\tO\n\n"
)


def test_evaluate_noop_attack(backend):
    corpus = parse_conll(TOY3, origin="toy3")
    report = evaluate_attack(corpus, corpus, corpus, backend)
    assert report.delta_perf == 0.0
    assert report.mean_similarity == 1.0
    assert report.f1_original == 1.0  # stub lexicon reproduces the gold tags
    assert all(r.replaced_count == 0 for r in report.per_sentence)


def test_evaluate_poison_delta_matches_hand_computation(backend):
    corpus = parse_conll(TOY3, origin="toy3")
    # poison sentence "a": its 1 entity vanishes; sentence "b" keeps 2
    forms = corpus.sentences[0].forms()
    forms[1] = POISON
    poisoned = Corpus(
        (corpus.sentences[0].with_forms(forms),) + corpus.sentences[1:],
        origin="toy3:poisoned",
    )
    report = evaluate_attack(corpus, poisoned, corpus, backend)

    total_entities = 3
    lost = 1
    precision = 1.0
    recall = (total_entities - lost) / total_entities
    f1_adv = 2 * precision * recall / (precision + recall)
    assert report.f1_adversarial == pytest.approx(f1_adv, abs=1e-9)
    assert report.delta_perf == pytest.approx(1.0 - f1_adv, abs=1e-9)


def test_evaluate_rejects_misaligned_ids(backend):
    corpus = parse_conll(TOY3, origin="toy3")
    renamed = Corpus(
        tuple(Sentence(f"x{i}", s.tokens) for i, s in enumerate(corpus.sentences)),
        origin="renamed",
    )
    with pytest.raises(ValueError, match="aligned"):
        evaluate_attack(corpus, renamed, corpus, backend)


def test_evaluate_empty_corpora(backend):
    empty = Corpus((), origin="empty")
    report = evaluate_attack(empty, empty, empty, backend)
    assert report.f1_original == 1.0
    assert report.delta_perf == 0.0
    assert report.mean_similarity == 1.0


def test_report_delta_identity_enforced():
    with pytest.raises(ValueError):
        AttackReport(original_corpus="o", adversarial_corpus="a",
                     f1_original=0.9, f1_adversarial=0.5, delta_perf=0.1)


def test_report_dict_is_ordered_and_complete(backend):
    corpus = parse_conll(TOY3, origin="toy3")
    report = evaluate_attack(corpus, corpus, corpus, backend, config={"budget": 0})
    d = report.to_dict()
    assert list(d)[:8] == ["original_corpus", "adversarial_corpus", "config",
                           "backend_models", "f1_original", "f1_adversarial",
                           "delta_perf", "mean_similarity"]
    assert d["config"] == {"budget": 0}
    assert d["backend_models"]["embed"] == "stub/hashed-bag"
    assert len(d["per_sentence"]) == 3


def test_prediction_spans_recorded(backend):
    corpus = parse_conll(TOY3, origin="toy3")
    report = evaluate_attack(corpus, corpus, corpus, backend)
    by_id = {r.id: r for r in report.per_sentence}
    assert by_id["b"].original_pred_spans == (EntitySpan(0, 1, "PER"), EntitySpan(2, 3, "LOC"))
