#!/usr/bin/env python3
"""Measure prefix-suggestion latency over the built lexicon.

Samples prefixes from real lexicon keys (length 1..6), times Lexicon.suggest
for each, and reports p50/p95/max. The interactive typing loop needs p50
well under 50 ms; this script is how that number was established.
"""

import argparse
import random
import statistics
import sys
import time

from singlish.config import load_config
from singlish.engine import Engine


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--config", help="engine config file")
    parser.add_argument("--samples", type=int, default=2000)
    parser.add_argument("--k", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    engine = Engine(load_config(args.config) if args.config else None)
    keys = list(engine.lexicon.keys())
    rng = random.Random(args.seed)
    prefixes = [
        key[: rng.randint(1, min(6, len(key)))]
        for key in (rng.choice(keys) for _ in range(args.samples))
    ]

    timings = []
    for prefix in prefixes:
        t0 = time.perf_counter()
        engine.lexicon.suggest(prefix, args.k)
        timings.append((time.perf_counter() - t0) * 1000)

    timings.sort()
    p50 = statistics.median(timings)
    p95 = timings[int(len(timings) * 0.95)]
    print(f"lexicon entries: {len(engine.lexicon)}")
    print(f"samples: {args.samples}  k: {args.k}")
    print(f"p50: {p50:.3f} ms  p95: {p95:.3f} ms  max: {timings[-1]:.3f} ms")
    return 0


if __name__ == "__main__":
    sys.exit(main())
