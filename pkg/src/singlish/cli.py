"""Command line front end.

    translit transliterate [--config PATH] [--mode rule|hybrid|contextual]
                           [--in PATH|-] [--out PATH|-] [--context WORD ...]
    translit generate      [--config PATH] [--seeds PATH] [--limit N] --out PATH
    translit train         [--config PATH] [--corpus PATH] --out PATH
    translit eval          [--config PATH] --testset PATH [--eval-mode ...]
                           [--mode ...] [--out PATH|-] [--format kv|table]
    translit serve         [--config PATH] [--host HOST] [--port PORT]
    translit benchmark     [--config PATH] [--sentences PATH]

``-`` means stdin or stdout.  Errors print one line to stderr and exit 1.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from .benchmark import run_benchmark
from .config import load_config
from .engine import Engine, Mode, load_seed_words, build_lexicon
from .errors import SinglishError
from .metrics import EvalMode, evaluate
from .ngram import AlignedCorpus, save_models, train_lm, train_tagger


def _read_text(arg: Optional[str]) -> str:
    if arg is None or arg == "-":
        return sys.stdin.read()
    return Path(arg).read_text(encoding="utf-8")


def _write_text(arg: Optional[str], text: str) -> None:
    if arg is None or arg == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(arg).write_text(text, encoding="utf-8")


def cmd_transliterate(args) -> int:
    engine = Engine(load_config(args.config))
    text = _read_text(args.infile)
    out = engine.transliterate(text, Mode(args.mode), tuple(args.context or ()))
    _write_text(args.outfile, out)
    return 0


def cmd_generate(args) -> int:
    config = load_config(args.config)
    engine_seeds = args.seeds or config.seed_words
    seeds = load_seed_words(engine_seeds)
    from .rules import load_rules  # local import keeps startup light for --help

    forward = load_rules(Path(str(config.forward_rules)))
    adhoc = load_rules(Path(str(config.adhoc_rules)))
    corpus = AlignedCorpus.load_tsv(Path(str(config.corpus))) if config.corpus else None
    lexicon = build_lexicon(seeds, forward, adhoc, args.limit or config.variant_limit, corpus)
    lexicon.save_tsv(args.out)
    print(f"{len(seeds)} words -> {len(lexicon)} lexicon entries: {args.out}",
          file=sys.stderr)
    return 0


def cmd_train(args) -> int:
    config = load_config(args.config)
    corpus_path = args.corpus or config.corpus
    if corpus_path is None:
        raise SinglishError("no corpus configured and none given")
    corpus = AlignedCorpus.load_tsv(Path(str(corpus_path)))
    tagger = train_tagger(corpus)
    lm = train_lm(corpus.sinhala_sentences())
    save_models(args.out, tagger, lm)
    print(
        f"{len(corpus.pairs)} sentences, {len(lm.vocabulary)} vocabulary -> {args.out}",
        file=sys.stderr,
    )
    return 0


def cmd_eval(args) -> int:
    engine = Engine(load_config(args.config))
    mode = Mode(args.mode)
    report = evaluate(
        lambda line: engine.transliterate_line(line, mode),
        args.testset,
        mode=EvalMode(args.eval_mode.capitalize()),
    )
    _write_text(args.outfile, report.as_table() if args.format == "table" else report.as_kv())
    return 0


def cmd_serve(args) -> int:
    from .service import serve  # defer: pulls in the HTTP stack

    config = load_config(args.config)
    host = args.host if args.host is not None else config.host
    port = args.port if args.port is not None else config.port  # 0 = ephemeral
    serve(Engine(config), host, port)
    return 0


def cmd_benchmark(args) -> int:
    engine = Engine(load_config(args.config))
    report = run_benchmark(engine, args.sentences)
    print(report.as_table())
    return 0 if report.margin() > 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="translit", description="Romanized Sinhala transliteration toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None, help="flat key/value config file")

    p = sub.add_parser("transliterate", help="romanized text to Sinhala")
    common(p)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.CONTEXTUAL.value)
    p.add_argument("--in", dest="infile", default="-", metavar="PATH|-")
    p.add_argument("--out", dest="outfile", default="-", metavar="PATH|-")
    p.add_argument("--context", nargs="*", default=None,
                   help="committed Sinhala words preceding the input")
    p.set_defaults(func=cmd_transliterate)

    p = sub.add_parser("generate", help="build the variant lexicon from seed words")
    common(p)
    p.add_argument("--seeds", default=None, help="seed word list (default: configured)")
    p.add_argument("--limit", type=int, default=None, help="variant cap per word")
    p.add_argument("--out", required=True, help="lexicon TSV to write")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("train", help="train tagger and language model")
    common(p)
    p.add_argument("--corpus", default=None, help="aligned corpus TSV (default: configured)")
    p.add_argument("--out", required=True, help="model file to write")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="score the engine against a paired testset")
    common(p)
    p.add_argument("--testset", required=True)
    p.add_argument("--eval-mode", choices=[m.value.lower() for m in EvalMode],
                   default=EvalMode.GENERAL.value.lower())
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.CONTEXTUAL.value)
    p.add_argument("--out", dest="outfile", default="-", metavar="PATH|-")
    p.add_argument("--format", choices=["kv", "table"], default="kv")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the HTTP service")
    common(p)
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("benchmark", help="contextual vs frequency baseline on ambiguous words")
    common(p)
    p.add_argument("--sentences", default=None, help="benchmark sentence TSV")
    p.set_defaults(func=cmd_benchmark)

    return parser


def main(argv: Optional[list] = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SinglishError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
