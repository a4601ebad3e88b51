#!/usr/bin/env python3
"""Regenerate the committed test fixtures under tests/data/.

Deterministic: running this twice produces byte-identical files. The
tricky BIO suite freezes expected spans computed by the independent
conlleval-style oracle in tests/oracles.py.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
sys.path.insert(0, str(ROOT / "tests"))

from oracles import conlleval_spans  # noqa: E402


# ---------------------------------------------------------------- WordNet --

WN_LICENSE = [
    "  1 This software and database is being provided to you, the LICENSEE, by",
    "  2 Princeton University under the following license.  By obtaining, using",
    "  3 and/or copying this software and database, you agree that you have",
    "  4 read, understood, and will comply with these terms and conditions.",
]

# (offset, ss_type, members, gloss); members may carry adjective markers
TOY_SYNSETS = {
    "noun": [
        (10000001, "n", ["rackets", "paddles", "racquets"], "implements swung at balls or shuttlecocks"),
        (10000002, "n", ["engines", "motors"], "machines that convert energy into motion"),
        (10000003, "n", ["violins", "fiddles"], "bowed stringed instruments"),
        (10000004, "n", ["carpets", "rugs"], "heavy woven floor coverings"),
        (10000005, "n", ["keyboards", "consoles"], "banks of keys for typing or playing"),
        (10000006, "n", ["bridges", "spans"], "structures carrying a path across an obstacle"),
        (10000007, "n", ["bicycles", "bikes", "cycles"], "two-wheeled pedal vehicles"),
        (10000008, "n", ["lantern", "lamp"], "a portable light in a protective case"),
        (10000009, "n", ["telescope", "spyglass", "field_glass"], "an instrument that magnifies distant objects"),
        (10000010, "n", ["cabinet", "cupboard"], "a piece of furniture with shelves behind doors"),
        (10000011, "n", ["mirror", "looking_glass", "speculum"], "a surface that reflects an image"),
        (10000012, "n", ["team", "crew", "squad"], "a group organized to work together"),
        (10000013, "n", ["trio", "threesome", "triad"], "a set of three people"),
    ],
    "verb": [
        (20000001, "v", ["makes", "produces", "creates"], "brings into existence"),
        (20000002, "v", ["builds", "constructs", "assembles"], "puts parts together"),
        (20000003, "v", ["sells", "trades", "peddles"], "exchanges for money"),
        (20000004, "v", ["ships", "sends", "transports"], "moves goods to a destination"),
        (20000005, "v", ["tests", "checks", "examines"], "subjects to a trial"),
        (20000006, "v", ["repairs", "fixes", "mends"], "restores to working order"),
        (20000007, "v", ["designs", "plans", "drafts"], "works out the form of"),
        (20000008, "v", ["sell", "trade", "peddle"], "exchange for money"),
        (20000009, "v", ["build", "construct", "assemble"], "put parts together"),
        (20000010, "v", ["design", "plan", "draft"], "work out the form of"),
        (20000011, "v", ["glows", "gleams"], "shines with a steady light"),
        (20000012, "v", ["hums", "buzzes", "drones"], "makes a low continuous sound"),
    ],
    "adj": [
        (30000001, "a", ["fine", "nice", "pleasant"], "agreeable in quality"),
        (30000002, "s", ["quick", "fast", "speedy"], "accomplished rapidly"),
        (30000003, "a", ["bright", "brilliant", "shiny"], "emitting or reflecting much light"),
        (30000004, "s", ["calm", "quiet", "still"], "free from disturbance"),
        (30000005, "a", ["strong", "sturdy", "tough"], "having great physical power"),
        (30000006, "a", ["fresh", "novel"], "recently made or obtained"),
        (30000007, "a", ["plain", "simple(p)", "unadorned"], "free of decoration"),
        (30000008, "a", ["smart", "clever", "bright"], "showing mental alertness"),
        (30000009, "a", ["old", "ancient", "aged"], "having lived or existed long"),
    ],
    "adv": [
        (40000001, "r", ["often", "frequently", "oftentimes"], "many times at short intervals"),
        (40000002, "r", ["quickly", "rapidly", "speedily"], "with speed"),
        (40000003, "r", ["carefully", "cautiously", "gingerly"], "with care"),
        (40000004, "r", ["eagerly", "keenly"], "with enthusiasm"),
        (40000005, "r", ["dimly", "faintly"], "with little light"),
    ],
}

# verbatim-shaped WordNet 3.0 lines (trimmed sense lists, real vocabulary)
MINI_SYNSETS = {
    "noun": [
        (2958343, "n", ["car", "auto", "automobile", "machine", "motorcar"],
         'a motor vehicle with four wheels; usually propelled by an internal combustion engine; "he needs a car to get to work"'),
        (2959942, "n", ["car", "railcar", "railway_car", "railroad_car"],
         'a wheeled vehicle adapted to the rails of railroad; "three cars had jumped the rails"'),
        (2084071, "n", ["dog", "domestic_dog", "Canis_familiaris"],
         "a member of the genus Canis (probably descended from the common wolf) that has been domesticated by man since prehistoric times"),
    ],
    "verb": [
        (1617192, "v", ["make", "create"],
         'make or cause to be or to become; "make a mess in one\'s office"; "create a furor"'),
    ],
    "adj": [
        (1123148, "a", ["good"],
         'having desirable or positive qualities especially those suitable for a thing specified; "good news from the hospital"'),
        (1123987, "s", ["full", "good"],
         'having the normally expected amount; "gives full measure"; "gives good measure"'),
    ],
    "adv": [
        (85811, "r", ["quickly", "rapidly", "speedily", "chop-chop", "apace"],
         'with rapid movements; "he works quickly"'),
    ],
}

_LEXFILE = {"n": 6, "v": 36, "a": 0, "s": 0, "r": 2}
_STRIP_MARKER = lambda m: m.split("(")[0]  # noqa: E731


def render_wordnet(out_dir: Path, synsets_by_suffix: dict) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    pos_char = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}
    for suffix, synsets in synsets_by_suffix.items():
        offsets = [off for off, _, _, _ in synsets]
        data_lines = list(WN_LICENSE)
        for i, (offset, ss_type, members, gloss) in enumerate(synsets):
            fields = [f"{offset:08d}", f"{_LEXFILE[ss_type]:02d}", ss_type, f"{len(members):02x}"]
            for member in members:
                fields.extend([member, "0"])
            if ss_type == "s":
                head = next(o for o, t, _, _ in synsets if t == "a")
                fields.extend(["001", "&", f"{head:08d}", "a", "0000"])
            elif len(offsets) > 1:
                target = offsets[(i + 1) % len(offsets)]
                fields.extend(["001", "@", f"{target:08d}", pos_char[suffix], "0000"])
            else:
                fields.append("000")
            if suffix == "verb":
                fields.extend(["01", "+", "02", "00"])
            data_lines.append(" ".join(fields) + " | " + gloss)
        (out_dir / f"data.{suffix}").write_text("\n".join(data_lines) + "\n", encoding="utf-8")

        by_lemma: dict[str, list[int]] = {}
        for offset, _, members, _ in synsets:
            for member in members:
                lemma = _STRIP_MARKER(member).lower()
                by_lemma.setdefault(lemma, [])
                if offset not in by_lemma[lemma]:
                    by_lemma[lemma].append(offset)
        index_lines = list(WN_LICENSE)
        for lemma in sorted(by_lemma):
            offs = by_lemma[lemma]
            fields = [lemma, pos_char[suffix], str(len(offs)), "1", "@",
                      str(len(offs)), str(len(offs))] + [f"{o:08d}" for o in offs]
            index_lines.append(" ".join(fields) + "  ")
        (out_dir / f"index.{suffix}").write_text("\n".join(index_lines) + "\n", encoding="utf-8")


# ------------------------------------------------------------- toy corpus --

PER = ["Wilson", "Harper", "Nakamura", "Okafor", "Marlowe",
       "Beaumont", "Castillo", "Ivanova", "Thackeray", "Lindqvist"]
LOC = ["Berlin", "Osaka", "Nairobi", "Lisbon", "Quito", "Tallinn", "Havana", "Geneva"]
ORG = ["Solectra", "Kyotech", "Valtara", "Brightline"]
MISC = ["Olympics", "Eurovision"]
ADJ = ["fine", "quick", "bright", "calm", "strong", "fresh", "plain", "smart", "old"]
V3SG = ["makes", "builds", "sells", "ships", "tests", "repairs", "designs"]
VBASE = ["sell", "build", "design"]
VINTR = ["glows", "hums"]
NPL = ["rackets", "engines", "violins", "carpets", "keyboards", "bridges", "bicycles"]
NSG = ["lantern", "telescope", "cabinet", "mirror"]
NGRP = ["team", "trio"]
NFAC = ["factory", "workshop"]  # deliberately absent from the toy WordNet
ADV = ["often", "quickly", "carefully", "eagerly", "dimly"]


def _tok(form, upos, chunk, head, deprel, ner):
    return (form, upos, chunk, head, deprel, ner)


def _templates(i: int) -> list[tuple]:
    """Eight sentence shapes; pools are indexed by the sentence ordinal."""
    per = PER[i % len(PER)]
    per2 = PER[(i + 3) % len(PER)]
    loc = LOC[i % len(LOC)]
    org = ORG[i % len(ORG)]
    misc = MISC[i % len(MISC)]
    adj = ADJ[i % len(ADJ)]
    adj2 = ADJ[(i + 4) % len(ADJ)]
    v3 = V3SG[i % len(V3SG)]
    vb = VBASE[i % len(VBASE)]
    vi = VINTR[i % len(VINTR)]
    npl = NPL[i % len(NPL)]
    npl2 = NPL[(i + 2) % len(NPL)]
    nsg = NSG[i % len(NSG)]
    ngrp = NGRP[i % len(NGRP)]
    nfac = NFAC[i % len(NFAC)]
    adv = ADV[i % len(ADV)]

    shapes = [
        [_tok(per, "PROPN", "B-NP", 2, "nsubj", "B-PER"),
         _tok(v3, "VERB", "O", 0, "root", "O"),
         _tok(adj, "ADJ", "B-NP", 4, "amod", "O"),
         _tok(npl, "NOUN", "I-NP", 2, "obj", "O"),
         _tok("in", "ADP", "O", 2, "prep", "O"),
         _tok(loc, "PROPN", "B-NP", 5, "pobj", "B-LOC"),
         _tok(".", "PUNCT", "O", 2, "punct", "O")],

        [_tok("The", "DET", "B-NP", 3, "det", "O"),
         _tok(adj, "ADJ", "I-NP", 3, "amod", "O"),
         _tok(ngrp, "NOUN", "I-NP", 6, "nsubj", "O"),
         _tok("from", "ADP", "O", 3, "prep", "O"),
         _tok(loc, "PROPN", "B-NP", 4, "pobj", "B-LOC"),
         _tok(v3, "VERB", "O", 0, "root", "O"),
         _tok(adj2, "ADJ", "B-NP", 8, "amod", "O"),
         _tok(npl, "NOUN", "I-NP", 6, "obj", "O"),
         _tok(".", "PUNCT", "O", 6, "punct", "O")],

        [_tok(per, "PROPN", "B-NP", 4, "nsubj", "B-PER"),
         _tok("and", "CCONJ", "O", 3, "cc", "O"),
         _tok(per2, "PROPN", "B-NP", 1, "conj", "B-PER"),
         _tok(vb, "VERB", "O", 0, "root", "O"),
         _tok(adj, "ADJ", "B-NP", 6, "amod", "O"),
         _tok(npl, "NOUN", "I-NP", 4, "obj", "O"),
         _tok("near", "ADP", "O", 4, "prep", "O"),
         _tok(loc, "PROPN", "B-NP", 7, "pobj", "B-LOC"),
         _tok(".", "PUNCT", "O", 4, "punct", "O")],

        [_tok("Nordwind", "PROPN", "B-NP", 2, "compound", "B-ORG"),
         _tok("Group", "PROPN", "I-NP", 4, "nsubj", "I-ORG"),
         _tok(adv, "ADV", "O", 4, "advmod", "O"),
         _tok(v3, "VERB", "O", 0, "root", "O"),
         _tok(adj, "ADJ", "B-NP", 6, "amod", "O"),
         _tok(npl, "NOUN", "I-NP", 4, "obj", "O"),
         _tok("to", "ADP", "O", 4, "prep", "O"),
         _tok("the", "DET", "B-NP", 9, "det", "O"),
         _tok(misc, "PROPN", "I-NP", 7, "pobj", "B-MISC"),
         _tok(".", "PUNCT", "O", 4, "punct", "O")],

        [_tok("The", "DET", "B-NP", 3, "det", "O"),
         _tok(adj, "ADJ", "I-NP", 3, "amod", "O"),
         _tok(nsg, "NOUN", "I-NP", 4, "nsubj", "O"),
         _tok(vi, "VERB", "O", 0, "root", "O"),
         _tok(adv, "ADV", "O", 4, "advmod", "O"),
         _tok(".", "PUNCT", "O", 4, "punct", "O")],

        [_tok("The", "DET", "B-NP", 3, "det", "O"),
         _tok(org, "PROPN", "I-NP", 3, "compound", "B-ORG"),
         _tok(nfac, "NOUN", "I-NP", 4, "nsubj", "O"),
         _tok(v3, "VERB", "O", 0, "root", "O"),
         _tok(adj, "ADJ", "B-NP", 6, "amod", "O"),
         _tok(npl, "NOUN", "I-NP", 4, "obj", "O"),
         _tok(".", "PUNCT", "O", 4, "punct", "O")],

        [_tok(per, "PROPN", "B-NP", 2, "nsubj", "B-PER"),
         _tok(v3, "VERB", "O", 0, "root", "O"),
         _tok(adj, "ADJ", "B-NP", 4, "amod", "O"),
         _tok(npl, "NOUN", "I-NP", 2, "obj", "O"),
         _tok("in", "ADP", "O", 2, "prep", "O"),
         _tok(loc, "PROPN", "B-NP", 5, "pobj", "B-LOC"),
         _tok("with", "ADP", "O", 2, "prep", "O"),
         _tok(adj2, "ADJ", "B-NP", 9, "amod", "O"),
         _tok(npl2, "NOUN", "I-NP", 7, "pobj", "O"),
         _tok(".", "PUNCT", "O", 2, "punct", "O")],

        [_tok(per, "PROPN", "B-NP", 3, "nsubj", "B-PER"),
         _tok(adv, "ADV", "O", 3, "advmod", "O"),
         _tok(v3, "VERB", "O", 0, "root", "O"),
         _tok("the", "DET", "B-NP", 6, "det", "O"),
         _tok(adj, "ADJ", "I-NP", 6, "amod", "O"),
         _tok(nsg, "NOUN", "I-NP", 3, "obj", "O"),
         _tok(".", "PUNCT", "O", 3, "punct", "O")],
    ]
    return shapes[i % len(shapes)]


def render_sentence(sid: str, rows: list[tuple]) -> str:
    lines = [f"# id = {sid}"]
    for i, (form, upos, chunk, head, deprel, ner) in enumerate(rows, start=1):
        lines.append(f"{i}\t{form}\t{upos}\t{chunk}\t{head}\t{deprel}\t{ner}")
    lines.append("")
    return "\n".join(lines) + "\n"


def make_toy_corpus(path: Path, n: int = 50) -> None:
    parts = [render_sentence(f"toy{i + 1:04d}", _templates(i)) for i in range(n)]
    path.write_text("".join(parts), encoding="utf-8")


def make_toy_lexicon(path: Path) -> None:
    rows = [(form, "B-PER") for form in PER]
    rows += [(form, "B-LOC") for form in LOC]
    rows += [(form, "B-ORG") for form in ORG]
    rows += [("Nordwind", "B-ORG"), ("Group", "I-ORG")]
    rows += [(form, "B-MISC") for form in MISC]
    path.write_text("".join(f"{f}\t{t}\n" for f, t in rows), encoding="utf-8")


def make_stub_vocab(path: Path) -> None:
    words = ["maple", "cedar", "willow", "aspen", "birch", "walnut", "poplar",
             "spruce", "juniper", "linden", "rowan", "alder", "hazel", "laurel",
             "cypress", "magnolia"]
    path.write_text("".join(w + "\n" for w in words), encoding="utf-8")


# -------------------------------------------------------- round-trip files --

RT_FORMS = ["alpha", "beta", "gamma", "delta", "echo", "fox", "golf", "hotel",
            "Müller", "café", "naïve", "東京", "ε-ball", "x2", "Q'aram", "re-entry"]
RT_UPOS = ["NOUN", "VERB", "ADJ", "ADV", "PROPN", "DET", "ADP", "PUNCT", "X"]
RT_DEPREL = ["nsubj", "obj", "amod", "advmod", "root", "det", "prep", "punct", "dep"]
RT_TYPES = ["PER", "LOC", "ORG", "MISC"]


def _random_bio(rng, n: int) -> list[str]:
    tags = []
    for _ in range(n):
        roll = rng.integers(0, 10)
        if roll < 6:
            tags.append("O")
        elif roll < 8:
            tags.append(f"B-{RT_TYPES[rng.integers(0, 4)]}")
        else:
            tags.append(f"I-{RT_TYPES[rng.integers(0, 4)]}")
    return tags


def _random_sentence_rows(rng, n: int) -> list[tuple]:
    ner = _random_bio(rng, n)
    rows = []
    chunk_state = "O"
    for i in range(n):
        roll = rng.integers(0, 3)
        if roll == 0:
            chunk = "B-NP"
        elif roll == 1 and chunk_state in ("B-NP", "I-NP"):
            chunk = "I-NP"
        else:
            chunk = "O"
        chunk_state = chunk
        head = int(rng.integers(0, n + 1))
        if head == i + 1:
            head = 0
        rows.append(_tok(
            RT_FORMS[rng.integers(0, len(RT_FORMS))],
            RT_UPOS[rng.integers(0, len(RT_UPOS))],
            chunk,
            head,
            RT_DEPREL[rng.integers(0, len(RT_DEPREL))],
            ner[i],
        ))
    return rows


def make_roundtrip_files(out_dir: Path, count: int = 20) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.Generator(np.random.PCG64(20240601))
    for f in range(count):
        name = out_dir / f"rt{f + 1:02d}.conll"
        if f == count - 1:
            name.write_text("", encoding="utf-8")  # empty corpus fixture
            continue
        n_sentences = int(rng.integers(1, 7))
        parts = []
        for s in range(n_sentences):
            n_tokens = int(rng.integers(1, 13))
            parts.append(render_sentence(f"rt{f + 1:02d}-{s + 1:03d}",
                                         _random_sentence_rows(rng, n_tokens)))
        name.write_text("".join(parts), encoding="utf-8")


# ---------------------------------------------------------- tricky BIO set --

def make_tricky_bio(path: Path) -> None:
    hand = [
        [],
        ["O"],
        ["B-PER"],
        ["I-PER"],
        ["I-PER", "I-PER"],
        ["O", "I-LOC"],
        ["I-LOC", "O", "I-LOC"],
        ["B-PER", "I-PER", "O"],
        ["B-PER", "B-PER"],
        ["B-PER", "I-LOC"],
        ["I-PER", "B-PER"],
        ["O", "B-ORG", "I-ORG", "I-ORG", "O"],
        ["B-ORG", "I-LOC", "I-LOC"],
        ["I-A", "I-B", "I-A"],
        ["B-X", "I-X", "B-X", "I-X"],
        ["O", "O", "O"],
        ["I-MISC"],
        ["B-MISC", "O", "I-MISC"],
        ["I-PER", "I-PER", "B-PER", "I-PER"],
        ["B-LOC", "I-LOC", "I-ORG", "I-ORG"],
    ]
    rng = np.random.Generator(np.random.PCG64(77))
    cases = list(hand)
    while len(cases) < 50:
        cases.append(_random_bio(rng, int(rng.integers(1, 9))))
    payload = [
        {"tags": tags, "spans": [list(s) for s in conlleval_spans(tags)]}
        for tags in cases
    ]
    path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    render_wordnet(DATA / "wordnet_toy", TOY_SYNSETS)
    render_wordnet(DATA / "wordnet_mini", MINI_SYNSETS)
    make_toy_corpus(DATA / "toy50.conll")
    make_toy_lexicon(DATA / "toy_lexicon.tsv")
    make_stub_vocab(DATA / "stub_vocab.txt")
    make_roundtrip_files(DATA / "conll")
    make_tricky_bio(DATA / "tricky_bio.json")
    print(f"fixtures written under {DATA}")


if __name__ == "__main__":
    main()
