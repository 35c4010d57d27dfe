#!/usr/bin/env python3
"""Exhaustive search over the sign calibration.

Runs every one of the 2^8 assignments through the staged identity checks and
prints the survivors. Exit 0 iff exactly one survives and it is the frozen
``DEFAULT``.
"""
from __future__ import annotations

import argparse
import sys
import time

from lzbv.calibration import DEFAULT, PROVENANCE
from lzbv.homotopy_checker import SamplerConfig, search_calibration


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--max-degree", type=int, default=2)
    args = ap.parse_args(argv)

    cfg = SamplerConfig(seed=args.seed, D=2, max_degree=args.max_degree, trials=args.trials)
    t0 = time.perf_counter()
    winners = search_calibration(cfg)
    print(f"searched 256 assignments in {time.perf_counter() - t0:.2f}s; {len(winners)} survive")
    for w in winners:
        tag = " (frozen default)" if w == DEFAULT else ""
        print(f"survivor{tag}:")
        for k, v in w.as_dict().items():
            print(f"  {k:22s} {v:+d}  {PROVENANCE[k]}")
    return 0 if winners == [DEFAULT] else 1


if __name__ == "__main__":
    sys.exit(main())
