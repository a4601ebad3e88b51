import json
from pathlib import Path

import numpy as np
import pytest

from nerperturb.corpus import (
    Corpus,
    EntitySpan,
    ParseError,
    Sentence,
    Token,
    corpus_stats,
    extract_spans,
    parse_conll,
    serialize_conll,
)

from oracles import brute_force_spans, conlleval_spans

DATA = Path(__file__).parent / "data"

MINIMAL = "1\tHello\tINTJ\tO\t0\troot\tO\n\n"


def test_parse_minimal():
    corpus = parse_conll(MINIMAL)
    assert len(corpus) == 1
    sent = corpus.sentences[0]
    assert len(sent) == 1
    assert sent.tokens[0].form == "Hello"
    assert sent.id == "s0001"


def test_parse_two_sentences():
    text = MINIMAL + "1\tWorld\tNOUN\tB-NP\t0\troot\tO\n\n"
    corpus = parse_conll(text)
    assert len(corpus) == 2
    assert corpus.ids() == ["s0001", "s0002"]


def test_parse_explicit_id():
    corpus = parse_conll("# id = foo\n" + MINIMAL)
    assert corpus.ids() == ["foo"]


def test_parse_wrong_column_count():
    with pytest.raises(ParseError, match="line 1"):
        parse_conll("1\tHello\tINTJ\tO\t0\troot\n\n")


@pytest.mark.parametrize("bad,what", [
    ("x\tHello\tINTJ\tO\t0\troot\tO\n\n", "non-integer ID"),
    ("1\tHello\tINTJ\tO\tx\troot\tO\n\n", "non-integer HEAD"),
    ("1\tHello\tINTJ\tO\t5\troot\tO\n\n", "out of range"),
    ("1\tHello\tINTJ\tO\t1\troot\tO\n\n", "itself"),
    ("1\tHello\tINTJ\tO\t0\troot\tB_PER\n\n", "malformed NER"),
    ("1\tHello\tINTJ\tO\t0\troot\ti-PER\n\n", "malformed NER"),
    ("2\tHello\tINTJ\tO\t0\troot\tO\n\n", "out of sequence"),
])
def test_parse_rejects(bad, what):
    with pytest.raises(ParseError, match=what):
        parse_conll(bad)


def test_parse_duplicate_ids_rejected():
    text = "# id = a\n" + MINIMAL + "# id = a\n" + MINIMAL
    with pytest.raises(ParseError, match="duplicate"):
        parse_conll(text)


def test_docstart_dropped_with_warning(caplog):
    text = "-DOCSTART-\t-X-\t-X-\tO\n\n" + MINIMAL
    with caplog.at_level("WARNING"):
        corpus = parse_conll(text)
    assert len(corpus) == 1
    assert any("-DOCSTART-" in rec.message for rec in caplog.records)


def test_serialize_empty():
    assert serialize_conll(Corpus((), origin="x")) == ""


def test_roundtrip_adds_id_then_fixed_point():
    corpus = parse_conll(MINIMAL)
    text = serialize_conll(corpus)
    assert text == "# id = s0001\n" + MINIMAL
    again = parse_conll(text)
    assert again.sentences == corpus.sentences
    assert serialize_conll(again) == text


def test_roundtrip_fixture_files_byte_exact():
    for path in sorted((DATA / "conll").glob("rt*.conll")):
        text = path.read_text(encoding="utf-8")
        assert serialize_conll(parse_conll(text)) == text, path.name


def test_token_invariants():
    with pytest.raises(ValueError):
        Token(0, "", "X", "O", 0, "dep", "O")
    with pytest.raises(ValueError):
        Token(0, "two words", "X", "O", 0, "dep", "O")
    with pytest.raises(ValueError):
        Token(0, "ok", "X", "O", 1, "dep", "O")  # self-loop
    with pytest.raises(ValueError):
        Token(0, "ok", "X", "O", 0, "dep", "B-")


def test_sentence_rejects_out_of_range_head():
    tok = Token(0, "a", "X", "O", 3, "dep", "O")
    with pytest.raises(ValueError, match="out of range"):
        Sentence("s", (tok,))


# -- extract_spans ------------------------------------------------------------

def test_extract_spans_basics():
    assert extract_spans(["O", "B-PER", "I-PER", "O"]) == [EntitySpan(1, 3, "PER")]
    assert extract_spans(["I-LOC"]) == [EntitySpan(0, 1, "LOC")]
    assert extract_spans([]) == []


def test_extract_spans_rejects_malformed():
    with pytest.raises(ValueError, match="position 1"):
        extract_spans(["O", "B_PER"])


def test_extract_spans_tricky_suite_matches_conlleval():
    cases = json.loads((DATA / "tricky_bio.json").read_text())
    assert len(cases) == 50
    for case in cases:
        got = [[s.start, s.end, s.etype] for s in extract_spans(case["tags"])]
        assert got == case["spans"], case["tags"]
        # the frozen expectations are themselves oracle output; re-derive
        assert [list(s) for s in conlleval_spans(case["tags"])] == case["spans"]


def _random_tags(rng, n):
    types = ["PER", "LOC", "ORG", "MISC"]
    out = []
    for _ in range(n):
        roll = rng.integers(0, 10)
        if roll < 6:
            out.append("O")
        elif roll < 8:
            out.append(f"B-{types[rng.integers(0, 4)]}")
        else:
            out.append(f"I-{types[rng.integers(0, 4)]}")
    return out


def test_extract_spans_property_suite():
    rng = np.random.Generator(np.random.PCG64(20240607))
    for _ in range(10_000):
        tags = _random_tags(rng, int(rng.integers(0, 41)))
        spans = extract_spans(tags)
        as_tuples = [(s.start, s.end, s.etype) for s in spans]
        # agreement with both independent decoders
        assert as_tuples == brute_force_spans(tags)
        assert as_tuples == conlleval_spans(tags)
        # sorted, non-overlapping, in bounds
        prev_end = 0
        for s in spans:
            assert 0 <= s.start < s.end <= len(tags)
            assert s.start >= prev_end
            prev_end = s.end


# -- corpus_stats --------------------------------------------------------------

def test_stats_empty():
    stats = corpus_stats(Corpus((), origin="e"))
    assert (stats.sentence_count, stats.token_count, stats.entity_count) == (0, 0, 0)
    assert stats.entities_by_type == {}


def test_stats_single_entity():
    corpus = parse_conll(
        "1\tWilson\tPROPN\tB-NP\t0\troot\tB-PER\n"
        "2\tPark\tPROPN\tI-NP\t1\tflat\tI-PER\n"
        "3\tsmiles\tVERB\tO\t0\troot\tO\n\n"
    )
    stats = corpus_stats(corpus)
    assert stats.sentence_count == 1
    assert stats.token_count == 3
    assert stats.entity_count == 1
    assert stats.entities_by_type == {"PER": 1}


def test_stats_toy_corpus():
    corpus = parse_conll((DATA / "toy50.conll").read_text(encoding="utf-8"))
    stats = corpus_stats(corpus)
    assert stats.sentence_count == 50
    assert stats.entity_count == sum(stats.entities_by_type.values())
    assert set(stats.entities_by_type) == {"PER", "LOC", "ORG", "MISC"}
