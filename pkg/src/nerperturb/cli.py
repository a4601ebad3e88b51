"""Command-line surface: attack, evaluate, sweep, stats, stub-serve.

Configuration precedence is flags > config file > defaults. The config
file (INI, ``--config`` or ``./nerperturb.ini``) uses one section per
command plus an optional ``[global]`` section; keys are the long flag
names without the leading dashes, hyphens intact.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from pathlib import Path

from .attack import AttackConfig, AttackError, attack_corpus, write_replacement_log
from .backend.client import BackendClient, BackendError
from .backend.stub import StubConfig, StubServer
from .corpus import ParseError, corpus_stats, read_conll, write_conll
from .evaluation import evaluate_attack
from .manifest import build_manifest, manifest_path_for, write_manifest
from .selection import SelectionMethod
from .wordnet import WordNetError, load_wordnet

BACKEND_ENV = "NERPERTURB_BACKEND"
DEFAULT_CONFIG_FILE = "nerperturb.ini"
DEFAULT_BUDGETS = "1,2,3,4,5,6,7,8,9"

SWEEP_COLUMNS = ("method", "replacer", "k", "sim", "dperf", "f1_original", "f1_adversarial", "replacements")


class CliError(Exception):
    pass


def _add_backend_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--backend", default=os.environ.get(BACKEND_ENV),
                   help=f"backend base URL (default: ${BACKEND_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nerperturb",
        description="Context-aware adversarial attacks on NER corpora: "
                    "perturb informative non-entity words and measure the damage.",
    )
    parser.add_argument("--config", default=None,
                        help=f"INI config file (default: ./{DEFAULT_CONFIG_FILE} if present)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("attack", help="generate an adversarial corpus")
    p.add_argument("--input", required=True, help="extended-CoNLL input corpus")
    p.add_argument("--output", required=True, help="adversarial corpus output path")
    p.add_argument("--select", default="rdm", choices=[m.value for m in SelectionMethod])
    p.add_argument("--replace", default="synonym", choices=["synonym", "mlm"])
    p.add_argument("--budget", type=int, default=5, help="words to perturb per sentence")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--overshoot", type=int, default=3, help="ranking depth multiplier")
    p.add_argument("--mlm-top-k", type=int, default=10)
    p.add_argument("--wordnet", default=None, help="WordNet 3.0 database directory")
    p.add_argument("--jobs", type=int, default=1, help="sentence-level parallelism")
    _add_backend_flag(p)

    p = sub.add_parser("evaluate", help="score an adversarial corpus against its original")
    p.add_argument("--input", required=True, help="adversarial corpus (extended CoNLL)")
    p.add_argument("--gold", required=True, help="original corpus with gold NER tags")
    p.add_argument("--report", required=True, help="attack report output path (JSON)")
    p.add_argument("--select", default=None, help="method echo for the report row")
    p.add_argument("--replace", default=None, help="replacer echo for the report row")
    p.add_argument("--budget", type=int, default=None, help="budget echo for the report row")
    p.add_argument("--seed", type=int, default=42)
    _add_backend_flag(p)

    p = sub.add_parser("sweep", help="attack + evaluate across a budget list")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="directory for per-budget adversarial corpora")
    p.add_argument("--report", required=True, help="flat curve table output path (TSV)")
    p.add_argument("--select", default="all",
                   help="method, or comma list, or 'all'")
    p.add_argument("--replace", default="all",
                   help="replacer, or comma list, or 'all'")
    p.add_argument("--budgets", default=DEFAULT_BUDGETS, help="comma-separated budget list")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--overshoot", type=int, default=3)
    p.add_argument("--mlm-top-k", type=int, default=10)
    p.add_argument("--wordnet", default=None)
    p.add_argument("--jobs", type=int, default=1)
    _add_backend_flag(p)

    p = sub.add_parser("stats", help="corpus statistics")
    p.add_argument("--input", required=True)

    p = sub.add_parser("stub-serve", help="run the deterministic stub backend")
    p.add_argument("--port", type=int, default=8360)
    p.add_argument("--lexicon", default=None, help="TSV file: FORM<TAB>BIO-TAG per line")
    p.add_argument("--vocab", default=None, help="word list file, one fill candidate per line")
    p.add_argument("--poison-token", default="", help="token that flips predictions to all-O")
    p.add_argument("--embed-dim", type=int, default=256)

    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Fold config-file values in as defaults; flags still win."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, rest = pre.parse_known_args(argv)
    path = known.config or (DEFAULT_CONFIG_FILE if Path(DEFAULT_CONFIG_FILE).is_file() else None)
    if path is None:
        return argv
    if not Path(path).is_file():
        raise CliError(f"config file not found: {path}")
    ini = configparser.ConfigParser()
    ini.read(path)

    # the subcommand is the first token of what is left once --config is
    # consumed (all other global flags live on the subparsers)
    if not rest or rest[0].startswith("-"):
        return rest
    command, tail = rest[0], rest[1:]
    merged: dict[str, str] = {}
    for section in ("global", command):
        if ini.has_section(section):
            merged.update(ini.items(section))

    # file values become leading flags, so real flags override them
    injected: list[str] = []
    for key, value in merged.items():
        injected.extend([f"--{key}", value])
    return [command] + injected + tail


def _load_backend(url: str | None, needed: bool) -> BackendClient | None:
    if url is None:
        if needed:
            raise CliError(f"this run needs a backend; pass --backend or set ${BACKEND_ENV}")
        return None
    return BackendClient(url)


def _attack_once(corpus, args, config: AttackConfig, store, backend):
    perturbed, examples = attack_corpus(corpus, config, store, backend, jobs=args.jobs)
    return perturbed, examples


def cmd_attack(args) -> int:
    corpus = read_conll(args.input)
    method = SelectionMethod(args.select)
    config = AttackConfig(
        method=method, replacer=args.replace, budget=args.budget,
        seed=args.seed, mlm_top_k=args.mlm_top_k, overshoot=args.overshoot,
    )
    needs_backend = args.replace == "mlm" or method is SelectionMethod.GDT
    backend = _load_backend(args.backend, needs_backend)
    if args.replace == "synonym" and args.wordnet is None:
        raise CliError("synonym replacement needs --wordnet")
    store = load_wordnet(args.wordnet) if args.replace == "synonym" else None

    perturbed, examples = _attack_once(corpus, args, config, store, backend)

    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_conll(perturbed, out)
    log_path = Path(str(out) + ".replacements.jsonl")
    write_replacement_log(examples, log_path)

    manifest = build_manifest(
        command="attack",
        config=config.to_dict(),
        seed=args.seed,
        backend=backend.health.to_wire() if backend else None,
        inputs={"corpus": args.input},
        outputs={"adversarial": out, "replacements": log_path},
    )
    write_manifest(manifest, manifest_path_for(out))
    total = sum(len(e.replacements) for e in examples)
    print(f"attacked {len(corpus)} sentences, {total} replacements -> {out}")
    return 0


def _summary_line(report) -> str:
    return (f"Sim={report.mean_similarity} F1_orig={report.f1_original} "
            f"F1_adv={report.f1_adversarial} dPerf={report.delta_perf}")


def cmd_evaluate(args) -> int:
    adversarial = read_conll(args.input)
    gold = read_conll(args.gold)
    backend = _load_backend(args.backend, needed=True)
    echo = {k: v for k, v in
            (("method", args.select), ("replacer", args.replace), ("budget", args.budget))
            if v is not None}
    report = evaluate_attack(gold, adversarial, gold, backend, config=echo)

    out = Path(args.report)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report.to_dict(), fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    manifest = build_manifest(
        command="evaluate",
        config=echo,
        seed=args.seed,
        backend=backend.health.to_wire(),
        inputs={"adversarial": args.input, "gold": args.gold},
        outputs={"report": out},
    )
    write_manifest(manifest, manifest_path_for(out))
    print(_summary_line(report))
    return 0


def _parse_budgets(spec: str) -> list[int]:
    try:
        budgets = [int(tok) for tok in spec.split(",") if tok.strip() != ""]
    except ValueError:
        raise CliError(f"bad --budgets list {spec!r}") from None
    if not budgets or any(b < 0 for b in budgets):
        raise CliError(f"bad --budgets list {spec!r}")
    return budgets


def _parse_multi(value: str, universe: list[str], what: str) -> list[str]:
    if value == "all":
        return list(universe)
    picked = [tok.strip() for tok in value.split(",") if tok.strip()]
    for tok in picked:
        if tok not in universe:
            raise CliError(f"unknown {what} {tok!r} (choose from {', '.join(universe)})")
    return picked


def cmd_sweep(args) -> int:
    corpus = read_conll(args.input)
    budgets = _parse_budgets(args.budgets)
    methods = _parse_multi(args.select, [m.value for m in SelectionMethod], "method")
    replacers = _parse_multi(args.replace, ["synonym", "mlm"], "replacer")

    backend = _load_backend(args.backend, needed=True)  # evaluation needs ner_predict + embed
    if "synonym" in replacers and args.wordnet is None:
        raise CliError("synonym replacement needs --wordnet")
    store = load_wordnet(args.wordnet) if "synonym" in replacers else None

    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)

    rows: list[dict] = []
    outputs: dict[str, Path] = {}
    for method_name in methods:
        for replacer in replacers:
            for k in budgets:
                config = AttackConfig(
                    method=SelectionMethod(method_name), replacer=replacer, budget=k,
                    seed=args.seed, mlm_top_k=args.mlm_top_k, overshoot=args.overshoot,
                )
                perturbed, examples = _attack_once(corpus, args, config, store, backend)
                name = f"adv_{method_name}_{replacer}_k{k}.conll"
                write_conll(perturbed, out_dir / name)
                outputs[name] = out_dir / name
                report = evaluate_attack(corpus, perturbed, corpus, backend, config=config.to_dict())
                rows.append({
                    "method": method_name,
                    "replacer": replacer,
                    "k": k,
                    "sim": report.mean_similarity,
                    "dperf": report.delta_perf,
                    "f1_original": report.f1_original,
                    "f1_adversarial": report.f1_adversarial,
                    "replacements": sum(len(e.replacements) for e in examples),
                })

    table = Path(args.report)
    table.parent.mkdir(parents=True, exist_ok=True)
    with open(table, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\t".join(SWEEP_COLUMNS) + "\n")
        for row in rows:
            fh.write("\t".join(str(row[c]) for c in SWEEP_COLUMNS) + "\n")
    outputs["table"] = table

    manifest = build_manifest(
        command="sweep",
        config={"select": methods, "replace": replacers, "budgets": budgets,
                "mlm_top_k": args.mlm_top_k, "overshoot": args.overshoot},
        seed=args.seed,
        backend=backend.health.to_wire(),
        inputs={"corpus": args.input},
        outputs=outputs,
    )
    write_manifest(manifest, manifest_path_for(table))
    print(f"swept {len(rows)} configurations -> {table}")
    return 0


def cmd_stats(args) -> int:
    corpus = read_conll(args.input)
    stats = corpus_stats(corpus)
    print(f"sentences:  {stats.sentence_count}")
    print(f"tokens:     {stats.token_count}")
    print(f"entities:   {stats.entity_count}")
    for etype, count in stats.entities_by_type.items():
        print(f"  {etype}: {count}")
    return 0


def _read_lexicon(path: str) -> dict[str, str]:
    lexicon: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise CliError(f"{path}:{line_no}: expected FORM<TAB>TAG")
            lexicon[parts[0]] = parts[1]
    return lexicon


def cmd_stub_serve(args) -> int:
    lexicon = _read_lexicon(args.lexicon) if args.lexicon else {}
    if args.vocab:
        with open(args.vocab, "r", encoding="utf-8") as fh:
            vocab = tuple(w.strip() for w in fh if w.strip())
    else:
        vocab = StubConfig().vocab
    config = StubConfig(vocab=vocab, lexicon=lexicon,
                        poison_token=args.poison_token, embed_dim=args.embed_dim)
    try:
        server = StubServer(config, host="127.0.0.1", port=args.port)
    except OSError as exc:
        raise CliError(f"cannot bind port {args.port}: {exc}") from exc
    print(f"stub backend listening on {server.url}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.close()
    return 0


_COMMANDS = {
    "attack": cmd_attack,
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
    "stats": cmd_stats,
    "stub-serve": cmd_stub_serve,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (CliError, ParseError, WordNetError, AttackError, BackendError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
