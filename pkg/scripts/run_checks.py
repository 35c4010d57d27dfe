#!/usr/bin/env python3
"""Run the identity battery over several seeds and dimensions and dump a JSON summary."""
from __future__ import annotations

import argparse
import json
import sys
import time

from lzbv.homotopy_checker import SamplerConfig, full_battery


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[42])
    ap.add_argument("--dimensions", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--out", default=None, help="write the JSON summary here")
    args = ap.parse_args(argv)

    summary, ok = [], True
    for seed in args.seeds:
        for D in args.dimensions:
            cfg = SamplerConfig(seed=seed, D=D, max_degree=args.max_degree, trials=args.trials)
            t0 = time.perf_counter()
            reps = full_battery(cfg)
            dt = time.perf_counter() - t0
            failed = [r.name for r in reps if not r.passed]
            ok &= not failed
            print(f"seed={seed} D={D} checks={len(reps)} failed={failed or '-'} {dt:.1f}s")
            summary.append({"seed": seed, "D": D, "seconds": round(dt, 2),
                            "reports": [r.to_json() for r in reps]})
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
