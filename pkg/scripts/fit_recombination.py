#!/usr/bin/env python3
"""Re-derive the constant weights relating the MC residual to the covariant YM residuals.

Fits the weights on random sl(2)-valued fields and checks them against the
frozen ``RECOMBINATION`` constant.
"""
from __future__ import annotations

import argparse
import sys

from lzbv.homotopy_checker import Sampler, SamplerConfig
from lzbv.maurer_cartan import RECOMBINATION, MCField, fit_recombination
from lzbv.sections import Eta


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--fields", type=int, default=5)
    args = ap.parse_args(argv)

    cfg = SamplerConfig(seed=args.seed, D=2, max_degree=2, matrix_dim=2)
    eta = Eta.identity(2)
    fits = set()
    for t in range(args.fields):
        x = Sampler(cfg, "recombination_fit", t).section()
        fit = fit_recombination(MCField.with_eliminated_v(x, eta), eta)
        if fit is not None and None in fit:
            continue  # residual vanished, nothing to fit
        fits.add(fit)
    print("fitted weights:", [tuple(str(w) for w in f) if f else None for f in fits])
    print("frozen weights:", tuple(str(w) for w in RECOMBINATION))
    return 0 if fits == {RECOMBINATION} else 1


if __name__ == "__main__":
    sys.exit(main())
