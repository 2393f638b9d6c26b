#!/usr/bin/env python3
"""Rebuild the romanized column of an aligned corpus from its Sinhala column.

Reads `anything<TAB>sinhala sentence` lines (the first column may be stale or
empty), romanizes every Sinhala token with the standard rules, and writes
`romanized<TAB>sinhala`. Use after editing the Sinhala side of a training
corpus so the two sides never drift.
"""

import argparse
import sys

from singlish.config import packaged_data
from singlish.rules import load_rules, romanize_standard
from singlish.script import normalize


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("corpus", help="input TSV; - for stdin")
    parser.add_argument("--out", default="-", help="output TSV; - for stdout")
    parser.add_argument("--rules", help="forward rule TSV (default: packaged)")
    args = parser.parse_args(argv)

    rules = load_rules(args.rules or packaged_data("rules", "forward_standard.tsv"))
    src = sys.stdin if args.corpus == "-" else open(args.corpus, encoding="utf-8")
    dst = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8")
    with src, dst:
        for raw in src:
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                print(line, file=dst)
                continue
            sinhala = normalize(line.split("\t")[-1])
            romanized = " ".join(
                str(romanize_standard(tok, rules)) for tok in sinhala.split()
            )
            print(f"{romanized}\t{sinhala}", file=dst)
    return 0


if __name__ == "__main__":
    sys.exit(main())
