#!/usr/bin/env python3
"""Run the ambiguous-word benchmark: contextual mode vs most-frequent baseline.

Prints the slot-F1/WER table and exits non-zero when the contextual margin
is not positive, so this can gate regressions in CI.
"""

import argparse
import sys
import time

from singlish.benchmark import run_benchmark
from singlish.config import load_config
from singlish.engine import Engine


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", help="engine config file")
    parser.add_argument("--sentences", help="benchmark TSV (default: packaged set)")
    args = parser.parse_args(argv)

    engine = Engine(load_config(args.config) if args.config else None)
    t0 = time.perf_counter()
    report = run_benchmark(engine, args.sentences)
    elapsed = time.perf_counter() - t0

    print(report.as_table())
    print(f"cases: {report.case_count}  margin: {report.margin():+.4f}  "
          f"wall: {elapsed:.2f}s")
    return 0 if report.margin() > 0 else 1


if __name__ == "__main__":
    sys.exit(main())
