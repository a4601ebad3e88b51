"""WordNet 3.0 database files: loading and POS-aware synonym lookup.

Reads the plain-text ``index.{noun,verb,adj,adv}`` / ``data.{noun,verb,
adj,adv}`` pair for each part of speech. Index lines carry
``lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt
offset...``; data lines carry ``offset lex_filenum ss_type w_cnt(hex)
(lemma lex_id)... p_cnt (ptr)... [frames] | gloss``. License header
lines (leading two spaces) are skipped. Lemmas in the files are
lowercase with spaces written as underscores; adjective members may
carry a syntactic marker suffix such as ``(p)`` which is stripped.

The store keeps only what synonym lookup needs: the lemma -> offsets
index and the offset -> member list map. Pointers, glosses and verb
frames are parsed for structural validation and discarded.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path

_MARKER_RE = re.compile(r"^(.*?)(\([a-z]+\))?$")


class WordNetError(Exception):
    """Missing or malformed WordNet database file."""


class WnPos(enum.Enum):
    noun = "n"
    verb = "v"
    adjective = "a"
    adverb = "r"

    @property
    def suffix(self) -> str:
        return {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}[self.value]

    @property
    def ss_types(self) -> frozenset[str]:
        # data.adj holds both head ('a') and satellite ('s') synsets
        return frozenset({"a", "s"}) if self.value == "a" else frozenset({self.value})


@dataclass(frozen=True)
class WordNetStore:
    """Immutable lemma/synset maps; safe for concurrent readers."""

    lemma_index: dict[tuple[str, WnPos], tuple[int, ...]]
    synsets: dict[tuple[int, WnPos], tuple[str, ...]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.synsets)


def map_pos(upos: str) -> WnPos | None:
    """Universal POS tag to WordNet category; None when uncovered."""
    return {
        "NOUN": WnPos.noun,
        "VERB": WnPos.verb,
        "AUX": WnPos.verb,
        "ADJ": WnPos.adjective,
        "ADV": WnPos.adverb,
    }.get(upos)


def _strip_marker(lemma: str) -> str:
    return _MARKER_RE.match(lemma).group(1)


def _parse_data_line(line: str, pos: WnPos, fname: str, line_no: int) -> tuple[int, list[str]]:
    """One data-file synset line -> (offset, member lemmas)."""

    def fail(reason: str):
        raise WordNetError(f"{fname}, line {line_no}: {reason}")

    head, sep, _gloss = line.partition("|")
    if not sep:
        fail("missing '|' gloss separator")
    fields = head.split()
    it = iter(fields)
    try:
        offset = int(next(it))
        int(next(it))  # lex_filenum
        ss_type = next(it)
        if ss_type not in pos.ss_types:
            fail(f"ss_type {ss_type!r} does not belong in data.{pos.suffix}")
        w_cnt = int(next(it), 16)
        if w_cnt < 1:
            fail("synset with no members")
        members = []
        for _ in range(w_cnt):
            members.append(_strip_marker(next(it)))
            int(next(it), 16)  # lex_id
        p_cnt = int(next(it))
        for _ in range(p_cnt):
            next(it)            # pointer symbol
            int(next(it))       # target offset
            next(it)            # target pos
            int(next(it), 16)   # source/target word numbers
        if pos is WnPos.verb:
            f_cnt = int(next(it))
            for _ in range(f_cnt):
                if next(it) != "+":
                    fail("malformed verb frame (expected '+')")
                int(next(it))       # frame number
                int(next(it), 16)   # word number
    except StopIteration:
        fail("truncated synset line")
    except ValueError as exc:
        fail(f"bad numeric field ({exc})")
    leftover = list(it)
    if leftover:
        fail(f"unparsed trailing fields {leftover[:3]!r}")
    return offset, members


def _parse_index_line(line: str, fname: str, line_no: int) -> tuple[str, list[int]]:
    """One index-file line -> (lemma, synset offsets in file order)."""

    def fail(reason: str):
        raise WordNetError(f"{fname}, line {line_no}: {reason}")

    fields = line.split()
    it = iter(fields)
    try:
        lemma = next(it)
        next(it)  # pos letter (redundant with the file name)
        synset_cnt = int(next(it))
        if synset_cnt < 1:
            fail("lemma with no synsets")
        p_cnt = int(next(it))
        for _ in range(p_cnt):
            next(it)  # pointer symbols present for this lemma
        sense_cnt = int(next(it))
        if sense_cnt != synset_cnt:
            fail(f"sense_cnt {sense_cnt} != synset_cnt {synset_cnt}")
        int(next(it))  # tagsense_cnt
        offsets = [int(next(it)) for _ in range(synset_cnt)]
    except StopIteration:
        fail("truncated index line")
    except ValueError as exc:
        fail(f"bad numeric field ({exc})")
    leftover = list(it)
    if leftover:
        fail(f"unparsed trailing fields {leftover[:3]!r}")
    return lemma.lower(), offsets


def load_wordnet(dir_path) -> WordNetStore:
    """Load all eight database files from a WordNet 3.0 directory."""
    root = Path(dir_path)
    missing = []
    for pos in WnPos:
        for prefix in ("index", "data"):
            if not (root / f"{prefix}.{pos.suffix}").is_file():
                missing.append(f"{prefix}.{pos.suffix}")
    if missing:
        raise WordNetError(f"{root}: missing WordNet files: {', '.join(missing)}")

    synsets: dict[tuple[int, WnPos], tuple[str, ...]] = {}
    lemma_index: dict[tuple[str, WnPos], tuple[int, ...]] = {}

    for pos in WnPos:
        data_name = f"data.{pos.suffix}"
        with open(root / data_name, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if line.startswith(" ") or not line.strip():
                    continue
                offset, members = _parse_data_line(line.rstrip("\n"), pos, data_name, line_no)
                synsets[(offset, pos)] = tuple(members)

        index_name = f"index.{pos.suffix}"
        with open(root / index_name, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if line.startswith(" ") or not line.strip():
                    continue
                lemma, offsets = _parse_index_line(line.rstrip("\n"), index_name, line_no)
                for off in offsets:
                    if (off, pos) not in synsets:
                        raise WordNetError(
                            f"{index_name}, line {line_no}: dangling synset offset {off:08d}"
                        )
                lemma_index[(lemma, pos)] = tuple(offsets)

    return WordNetStore(lemma_index=lemma_index, synsets=synsets)


def synonym_candidates(store: WordNetStore, lemma: str, pos: WnPos) -> list[tuple[str, int]]:
    """Synonyms with the offset of the synset each was first seen in.

    Order is deterministic: synsets in index-file order, members in data
    file order; the query lemma, multi-word lemmas and duplicates are
    dropped (first occurrence wins).
    """
    key = lemma.lower().replace(" ", "_")
    out: list[tuple[str, int]] = []
    seen: set[str] = set()
    for offset in store.lemma_index.get((key, pos), ()):
        for member in store.synsets[(offset, pos)]:
            if member.lower() == key or "_" in member or member in seen:
                continue
            seen.add(member)
            out.append((member, offset))
    return out


def synonyms(store: WordNetStore, lemma: str, pos: WnPos) -> list[str]:
    """Single-word synonyms of (lemma, pos); empty for unknown lemmas."""
    return [member for member, _ in synonym_candidates(store, lemma, pos)]
