"""The finite set of relative signs that the operation tables leave open.

Each field is ``+1`` or ``-1``. ``DEFAULT`` is the unique assignment found by
``scripts/calibrate.py`` (exhaustive search, see
``lzbv.homotopy_checker.search_calibration``) and
is frozen here; tests re-run the search to confirm it.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from itertools import product


@dataclass(frozen=True)
class SignCalibration:
    # overall sign of the bracket built from b0 and mu0
    bracket_orientation: int = 1
    # <.,.>_0 = pairing_zero * natural pairing; feeds m0 and n0
    pairing_zero: int = -1
    # Q: v1 -> v2 arrow
    q_v_to_vtilde: int = 1
    # mu0(X1, X2) v2 cell: (1/2) <X1, X2>
    mu_pairing_weight1: int = 1
    # mu0(X, X~) and mu0(X~, X) u3 cells: (1/2) <., .>
    mu_pairing_mixed: int = -1
    # n0(v~, X1, X2)
    n0_vtilde_first: int = 1
    # n0(X1, v~, X2)
    n0_vtilde_middle: int = 1
    # mu0(X, u) v1 cell: L_X u
    mu_lie_function: int = -1

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) not in (1, -1):
                raise ValueError(f"{f.name} must be +1 or -1")

    def as_dict(self) -> dict[str, int]:
        return asdict(self)

    def flipped(self, name: str) -> "SignCalibration":
        return replace(self, **{name: -getattr(self, name)})


DEFAULT = SignCalibration()

PROVENANCE = {
    "bracket_orientation": "b0-derived bracket equals +Dorfman on sections only with +1",
    "pairing_zero": "residue pairing is minus the natural pairing; m0 = -<,>_0 = +natural",
    "q_v_to_vtilde": "unlabelled id arrow; fixed by Q b0 + b0 Q = 0",
    "mu_pairing_weight1": "table sign +1/2 <X1,X2>; fixed by Leibniz",
    "mu_pairing_mixed": "the two printed tables disagree (+1/2 vs -1/2); Leibniz selects -1/2",
    "n0_vtilde_first": "printed equality n0(v,X,Y) = n0(X,v,Y); fixed by arity-4 relation",
    "n0_vtilde_middle": "as above",
    "mu_lie_function": "table entry -L_X u; fixed by Leibniz",
}


def all_calibrations():
    names = [f.name for f in fields(SignCalibration)]
    for signs in product((-1, 1), repeat=len(names)):
        yield SignCalibration(**dict(zip(names, signs)))
