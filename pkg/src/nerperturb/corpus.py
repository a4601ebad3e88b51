"""Annotated NER corpora: data model, extended-CoNLL parsing, BIO spans.

File format (UTF-8, LF): one token per line with exactly 7 tab-separated
columns ``ID FORM UPOS CHUNK HEAD DEPREL NER``, blank line between
sentences, optional ``# id = <string>`` line immediately before a
sentence. ``ID`` is the 1-based token position, ``HEAD`` the 1-based
dependency head (0 = root), ``NER`` a BIO tag (``O`` or ``B-TYPE`` /
``I-TYPE``). ``-DOCSTART-`` boundary lines are dropped with a warning.

The same format is used for adversarial output files: only the FORM
column differs, everything else (including gold NER) is copied through.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

NER_TAG_RE = re.compile(r"^(?:O|[BI]-[A-Za-z0-9_]+)$")

_ID_COMMENT_RE = re.compile(r"^#\s*id\s*=\s*(.+?)\s*$")


class ParseError(ValueError):
    """Malformed extended-CoNLL input; message names the offending line."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Token:
    """One surface word with its annotation layers."""

    index: int          # 0-based position in the sentence
    form: str           # surface string, non-empty, no whitespace
    upos: str           # universal POS tag
    chunk: str          # chunk tag (B-NP / I-NP / O / ...)
    head: int           # 1-based dependency head, 0 = root
    deprel: str         # dependency relation
    ner: str            # BIO tag

    def __post_init__(self):
        if not self.form or any(c.isspace() for c in self.form):
            raise ValueError(f"token {self.index}: form must be non-empty without whitespace: {self.form!r}")
        if self.head < 0:
            raise ValueError(f"token {self.index}: head must be >= 0, got {self.head}")
        if self.head == self.index + 1:
            raise ValueError(f"token {self.index}: head points at the token itself")
        if not NER_TAG_RE.match(self.ner):
            raise ValueError(f"token {self.index}: malformed NER tag {self.ner!r}")

    @property
    def is_entity(self) -> bool:
        return self.ner != "O"


@dataclass(frozen=True)
class Sentence:
    """Ordered tokens plus a corpus-unique id."""

    id: str
    tokens: tuple[Token, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        n = len(self.tokens)
        for pos, tok in enumerate(self.tokens):
            if tok.index != pos:
                raise ValueError(f"sentence {self.id}: token indices not contiguous at position {pos}")
            if tok.head > n:
                raise ValueError(f"sentence {self.id}: token {pos} head {tok.head} out of range (length {n})")

    def __len__(self) -> int:
        return len(self.tokens)

    def forms(self) -> list[str]:
        return [t.form for t in self.tokens]

    def ner_tags(self) -> list[str]:
        return [t.ner for t in self.tokens]

    def text(self) -> str:
        """Detokenized surface text (single-space join)."""
        return " ".join(t.form for t in self.tokens)

    def with_forms(self, forms: list[str]) -> "Sentence":
        """Copy with the FORM column replaced, all other columns kept."""
        if len(forms) != len(self.tokens):
            raise ValueError(f"sentence {self.id}: expected {len(self.tokens)} forms, got {len(forms)}")
        new_tokens = tuple(
            Token(t.index, f, t.upos, t.chunk, t.head, t.deprel, t.ner)
            for t, f in zip(self.tokens, forms)
        )
        return Sentence(self.id, new_tokens)


@dataclass(frozen=True)
class EntitySpan:
    """Half-open token range [start, end) with an entity type."""

    start: int
    end: int
    etype: str

    def __post_init__(self):
        if not (0 <= self.start < self.end):
            raise ValueError(f"invalid span bounds ({self.start}, {self.end})")


@dataclass(frozen=True)
class Corpus:
    """Ordered sentences from one source; sentence ids are unique."""

    sentences: tuple[Sentence, ...]
    origin: str = ""

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        seen: set[str] = set()
        for sent in self.sentences:
            if sent.id in seen:
                raise ValueError(f"duplicate sentence id {sent.id!r} in corpus {self.origin!r}")
            seen.add(sent.id)

    def __len__(self) -> int:
        return len(self.sentences)

    def ids(self) -> list[str]:
        return [s.id for s in self.sentences]


@dataclass(frozen=True)
class CorpusStats:
    sentence_count: int
    token_count: int
    entity_count: int
    entities_by_type: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.entity_count != sum(self.entities_by_type.values()):
            raise ValueError("entity_count does not match entities_by_type")


def extract_spans(tags: list[str]) -> list[EntitySpan]:
    """Decode BIO tags into entity spans, conlleval convention.

    An ``I-X`` with no open span of type X (after ``O``, at the sentence
    start, or after a different type) opens a new span; ``B-`` always
    opens; a type change or ``O`` closes the running span.
    """
    spans: list[EntitySpan] = []
    start: int | None = None
    cur_type: str | None = None

    def close(end: int) -> None:
        nonlocal start, cur_type
        if start is not None and cur_type is not None:
            spans.append(EntitySpan(start, end, cur_type))
        start, cur_type = None, None

    for i, tag in enumerate(tags):
        if not NER_TAG_RE.match(tag):
            raise ValueError(f"malformed BIO tag at position {i}: {tag!r}")
        if tag == "O":
            close(i)
            continue
        prefix, etype = tag.split("-", 1)
        if prefix == "B" or cur_type != etype:
            close(i)
            start, cur_type = i, etype
        # I- with the same open type continues the span

    close(len(tags))
    return spans


def entity_token_indices(tags: list[str]) -> list[int]:
    """Indices of tokens inside any entity span (ner != O), ascending."""
    return [i for i, tag in enumerate(tags) if tag != "O"]


def parse_conll(text: str, origin: str = "") -> Corpus:
    """Parse extended-CoNLL text into a Corpus.

    Sentences without an explicit ``# id = ...`` line get zero-padded
    ordinal ids (``s0001``, ...). Raises ParseError with the 1-based line
    number on malformed input.
    """
    sentences: list[tuple[str | None, list[Token], int]] = []
    pending_id: str | None = None
    pending_line = 0
    cur_tokens: list[Token] = []
    cur_id: str | None = None
    cur_start_line = 0

    def flush(line_no: int) -> None:
        nonlocal cur_tokens, cur_id, pending_id
        if cur_tokens:
            sentences.append((cur_id, cur_tokens, cur_start_line))
            cur_tokens, cur_id = [], None
        elif pending_id is not None:
            raise ParseError("id comment with no sentence", pending_line)
        pending_id = None

    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            flush(line_no)
            continue
        if line.startswith("#"):
            m = _ID_COMMENT_RE.match(line)
            if m is None:
                raise ParseError(f"unsupported comment line {line!r}", line_no)
            if cur_tokens:
                raise ParseError("id comment inside a sentence", line_no)
            if pending_id is not None:
                raise ParseError("duplicate id comment for one sentence", line_no)
            pending_id = m.group(1)
            pending_line = line_no
            continue
        if line.startswith("-DOCSTART-") or line.split("\t")[1:2] == ["-DOCSTART-"]:
            log.warning("%s: dropping -DOCSTART- boundary at line %d", origin or "<text>", line_no)
            continue

        cols = line.split("\t")
        if len(cols) != 7:
            raise ParseError(f"expected 7 tab-separated columns, got {len(cols)}", line_no)
        col_id, form, upos, chunk, col_head, deprel, ner = cols
        try:
            tok_id = int(col_id)
        except ValueError:
            raise ParseError(f"non-integer ID {col_id!r}", line_no) from None
        try:
            head = int(col_head)
        except ValueError:
            raise ParseError(f"non-integer HEAD {col_head!r}", line_no) from None

        if not cur_tokens:
            cur_id = pending_id
            pending_id = None
            cur_start_line = line_no
        if tok_id != len(cur_tokens) + 1:
            raise ParseError(f"ID {tok_id} out of sequence (expected {len(cur_tokens) + 1})", line_no)

        try:
            cur_tokens.append(Token(len(cur_tokens), form, upos, chunk, head, deprel, ner))
        except ValueError as exc:
            raise ParseError(str(exc), line_no) from None

    flush(len(text.split("\n")) + 1)

    width = max(4, len(str(len(sentences))))
    built: list[Sentence] = []
    for ordinal, (sid, tokens, start_line) in enumerate(sentences, start=1):
        n = len(tokens)
        for tok in tokens:
            if tok.head > n:
                raise ParseError(
                    f"HEAD {tok.head} out of range for sentence of length {n}",
                    start_line + tok.index,
                )
        built.append(Sentence(sid if sid is not None else f"s{ordinal:0{width}d}", tuple(tokens)))

    try:
        return Corpus(tuple(built), origin=origin)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def serialize_conll(corpus: Corpus) -> str:
    """Render a Corpus back to extended-CoNLL text.

    Ids are always written explicitly, so parse(serialize(c)) == c and a
    second serialization is byte-identical to the first.
    """
    if not corpus.sentences:
        return ""
    lines: list[str] = []
    for sent in corpus.sentences:
        lines.append(f"# id = {sent.id}")
        for tok in sent.tokens:
            lines.append(
                f"{tok.index + 1}\t{tok.form}\t{tok.upos}\t{tok.chunk}\t{tok.head}\t{tok.deprel}\t{tok.ner}"
            )
        lines.append("")
    return "\n".join(lines) + "\n"


def read_conll(path) -> Corpus:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_conll(fh.read(), origin=str(path))


def write_conll(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_conll(corpus))


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Sentence/token/entity counts, entities broken down by type."""
    by_type: Counter[str] = Counter()
    tokens = 0
    for sent in corpus.sentences:
        tokens += len(sent)
        for span in extract_spans(sent.ner_tags()):
            by_type[span.etype] += 1
    return CorpusStats(
        sentence_count=len(corpus.sentences),
        token_count=tokens,
        entity_count=sum(by_type.values()),
        entities_by_type=dict(sorted(by_type.items())),
    )
