#!/usr/bin/env python3
"""Freeze golden outputs from pinned runs.

Run once after any intentional behavior change, eyeball the diff, and
commit. The invariant suites in tests/ validate the same runs, so a
golden regenerated from a broken build will not pass review silently.
"""

from __future__ import annotations

import json
from pathlib import Path

from nerperturb.attack import AttackConfig, attack_corpus, replacement_log_lines
from nerperturb.corpus import read_conll, serialize_conll
from nerperturb.selection import SelectionMethod, select_random
from nerperturb.wordnet import load_wordnet

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
GOLDEN = DATA / "golden"


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    corpus = read_conll(DATA / "toy50.conll")
    store = load_wordnet(DATA / "wordnet_toy")

    ranking = select_random(corpus.sentences[0], 10, 42)
    (GOLDEN / "select_random_seed42.json").write_text(
        json.dumps({
            "sentence_id": ranking.sentence_id,
            "seed": 42,
            "k": 10,
            "ranked_indices": list(ranking.ranked_indices),
        }, indent=1) + "\n",
        encoding="utf-8",
    )

    config = AttackConfig(method=SelectionMethod.RDM, replacer="synonym", budget=5, seed=7)
    perturbed, examples = attack_corpus(corpus, config, store)
    (GOLDEN / "attack_rdm_synonym_seed7.conll").write_text(
        serialize_conll(perturbed), encoding="utf-8")
    (GOLDEN / "attack_rdm_synonym_seed7.jsonl").write_text(
        "\n".join(replacement_log_lines(examples)) + "\n", encoding="utf-8")

    config = AttackConfig(method=SelectionMethod.RDM, replacer="synonym", budget=5, seed=42)
    perturbed, examples = attack_corpus(corpus, config, store)
    (GOLDEN / "cli_attack_rdm_s42.conll").write_text(
        serialize_conll(perturbed), encoding="utf-8")
    (GOLDEN / "cli_attack_rdm_s42.jsonl").write_text(
        "\n".join(replacement_log_lines(examples)) + "\n", encoding="utf-8")

    print(f"goldens written under {GOLDEN}")


if __name__ == "__main__":
    main()
