"""Independent oracles the test suite checks the library against.

Deliberately implemented with different algorithms than the library:
span decoding by exhaustive candidate enumeration and by the classic
two-predicate chunk-boundary formulation, F1 by global set arithmetic,
WordNet lookups by raw line scanning. Nothing here imports library
internals beyond plain data types.
"""

from __future__ import annotations

import re
from pathlib import Path


# -- BIO decoding ------------------------------------------------------------

def _tag_type(tag: str) -> str | None:
    return None if tag == "O" else tag.split("-", 1)[1]


def _opens_span(tags: list[str], pos: int) -> bool:
    tag = tags[pos]
    if tag == "O":
        return False
    prefix, etype = tag.split("-", 1)
    if prefix == "B":
        return True
    # I- opens when nothing of the same type is running
    return pos == 0 or tags[pos - 1] not in (f"B-{etype}", f"I-{etype}")


def brute_force_spans(tags: list[str]) -> list[tuple[int, int, str]]:
    """Enumerate every (start, end) candidate and keep the valid maximal ones."""
    n = len(tags)
    spans = []
    for start in range(n):
        etype = _tag_type(tags[start])
        if etype is None or not _opens_span(tags, start):
            continue
        for end in range(start + 1, n + 1):
            if any(tags[i] != f"I-{etype}" for i in range(start + 1, end)):
                continue
            if end < n and tags[end] == f"I-{etype}":
                continue
            spans.append((start, end, etype))
    return spans


def _split_tag(tag: str) -> tuple[str, str | None]:
    if tag == "O":
        return "O", None
    prefix, etype = tag.split("-", 1)
    return prefix, etype


def _chunk_start(prev: str, cur: str) -> bool:
    p_prefix, p_type = _split_tag(prev)
    c_prefix, c_type = _split_tag(cur)
    if c_prefix == "O":
        return False
    if p_prefix == "O":
        return True
    if p_type != c_type:
        return True
    return c_prefix == "B"


def _chunk_end(prev: str, cur: str) -> bool:
    p_prefix, p_type = _split_tag(prev)
    c_prefix, c_type = _split_tag(cur)
    if p_prefix == "O":
        return False
    if c_prefix == "O":
        return True
    if p_type != c_type:
        return True
    return c_prefix == "B"


def conlleval_spans(tags: list[str]) -> list[tuple[int, int, str]]:
    """Boundary-predicate decoding in the style of the conlleval script."""
    spans = []
    start = None
    prev = "O"
    for i, tag in enumerate(tags):
        if start is not None and _chunk_end(prev, tag):
            spans.append((start, i, _tag_type(prev)))
            start = None
        if _chunk_start(prev, tag):
            start = i
        prev = tag
    if start is not None:
        spans.append((start, len(tags), _tag_type(prev)))
    return spans


# -- F1 ----------------------------------------------------------------------

def f1_oracle(gold: list[list[tuple]], pred: list[list[tuple]]) -> tuple[float, float, float]:
    """Global set-intersection precision/recall/F1 over aligned sentences."""
    gold_set = {(i, tuple(span)) for i, spans in enumerate(gold) for span in spans}
    pred_set = {(i, tuple(span)) for i, spans in enumerate(pred) for span in spans}
    tp = len(gold_set & pred_set)
    if len(pred_set) > 0:
        precision = tp / len(pred_set)
    else:
        precision = 1.0 if not gold_set else 0.0
    if len(gold_set) > 0:
        recall = tp / len(gold_set)
    else:
        recall = 1.0 if not pred_set else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


# -- WordNet raw-file scanning -------------------------------------------------

_POS_SUFFIX = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}


def scan_index_offsets(wordnet_dir, lemma: str, pos_char: str) -> list[int]:
    """Offsets for a lemma, read straight off the index file line.

    The synset offsets are the last ``synset_cnt`` whitespace fields, so
    this never interprets the pointer-symbol section at all.
    """
    path = Path(wordnet_dir) / f"index.{_POS_SUFFIX[pos_char]}"
    needle = f"{lemma} {pos_char} "
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(needle):
                fields = line.split()
                count = int(fields[2])
                return [int(x) for x in fields[-count:]]
    return []


def scan_synset_members(wordnet_dir, offset: int, pos_char: str) -> list[str]:
    """Member lemmas of one synset, read straight off the data file line."""
    path = Path(wordnet_dir) / f"data.{_POS_SUFFIX[pos_char]}"
    prefix = f"{offset:08d} "
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(prefix):
                fields = line.split(" | ")[0].split()
                w_cnt = int(fields[3], 16)
                members = fields[4 : 4 + 2 * w_cnt : 2]
                return [re.sub(r"\([a-z]+\)$", "", m) for m in members]
    raise AssertionError(f"offset {offset} not found in {path}")


def scan_synonyms(wordnet_dir, lemma: str, pos_char: str) -> list[str]:
    """Line-scan equivalent of the library's synonym query."""
    out: list[str] = []
    seen: set[str] = set()
    for offset in scan_index_offsets(wordnet_dir, lemma, pos_char):
        for member in scan_synset_members(wordnet_dir, offset, pos_char):
            if member.lower() == lemma or "_" in member or member in seen:
                continue
            seen.add(member)
            out.append(member)
    return out
