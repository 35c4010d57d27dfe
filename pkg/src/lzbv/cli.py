"""Command-line entry point: ``lzbv {check,ym,gauge,decompose,heisenberg}``.

Exit status: 0 all requested checks pass, 1 a check failed, 2 the input could
not be parsed, 3 an internal invariant was breached.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from .calibration import DEFAULT, PROVENANCE
from .homotopy_checker import (CheckReport, SamplerConfig, check_bar_differential, check_stasheff,
                               full_battery)
from .light_complex import SLOTS, LightElement, apply_Q_eta
from .lz_ops import mu0_eta
from .maurer_cartan import (GaugeParam, MCField, covariant_ym_residual, decompose,
                            decomposed_differential, eliminate_v, embed, gauge_transform,
                            gauge_variation, heisenberg_ym_residual, mc_residual, mc_variation,
                            recombination_defect)
from .polynomials import Poly, format_poly
from .scalars import MatCoeff, format_rational, parse_rational
from .sections import Eta, GenSection, OneForm, VecField

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3
CONTROL_TRIALS = 40


class ParseError(ValueError):
    pass


@dataclass
class CliConfig:
    command: str
    seed: int = 42
    trials: int = 100
    dimension: int = 2
    max_degree: int = 3
    matrix_dim: int = 1
    input_path: Optional[str] = None
    json: bool = False
    show_calibration: bool = False


# --- field files -------------------------------------------------------------------

@dataclass
class FieldFile:
    D: int
    eta: Eta
    matrix_dim: int
    vec: list
    form: list
    functions: dict
    gauge: Optional[Poly]
    eps: Fraction
    raw: dict


def _poly(terms, D: int, n: int) -> Poly:
    out = []
    for t in terms:
        exps = tuple(int(e) for e in t["exps"])
        if len(exps) != D:
            raise ParseError(f"exponent vector {list(exps)} does not have length {D}")
        c = t.get("coeff", "1")
        m = MatCoeff.from_json(c)
        if m.dim == 1 and n > 1:
            m = MatCoeff.scalar(m.entries[0], n)
        if m.dim != n:
            raise ParseError(f"coefficient of dim {m.dim}, expected {n}")
        out.append((exps, m))
    return Poly(D, n, out)


def load_field_file(path: str) -> FieldFile:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        D = int(data["dimension"])
        n = int(data.get("matrix_dim", 1))
        eta = Eta(data.get("eta", [[1 if i == j else 0 for j in range(D)] for i in range(D)]))
        if eta.D != D:
            raise ParseError("eta size does not match dimension")
        zero = Poly.zero(D, n)
        vec, form = [zero] * D, [zero] * D
        functions: dict = {}
        for f in data.get("fields", []):
            kind = f["kind"]
            p = _poly(f.get("terms", []), D, n)
            if kind in ("vector", "oneform"):
                i = int(f["index"])
                if not 0 <= i < D:
                    raise ParseError(f"component index {i} out of range")
                target = vec if kind == "vector" else form
                target[i] = target[i] + p
            elif kind == "function":
                slot = f.get("slot", "v1")
                if slot not in SLOTS or slot in ("x1", "x2"):
                    raise ParseError(f"bad function slot {slot!r}")
                functions[slot] = functions.get(slot, zero) + p
            else:
                raise ParseError(f"unknown field kind {kind!r}")
        gauge = _poly(data["gauge"], D, n) if "gauge" in data else None
        eps = parse_rational(data.get("eps", "1"))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed field file {path}: {exc!r}") from exc
    return FieldFile(D, eta, n, vec, form, functions, gauge, eps, data)


def _section(ff: FieldFile) -> GenSection:
    return GenSection(VecField(tuple(ff.vec)), OneForm(tuple(ff.form)))


# --- rendering ----------------------------------------------------------------------

def render_poly(p: Poly) -> str:
    return format_poly(p)


def render_mat(m: MatCoeff) -> str:
    if m.dim == 1:
        return format_rational(m.entries[0])
    return "[" + "; ".join(" ".join(format_rational(x) for x in r) for r in m.rows()) + "]"


def render_element(a: LightElement) -> list[str]:
    """Nonzero components only; an all-zero element renders as ``  0``."""
    lines = []
    for s in SLOTS:
        val = getattr(a, s)
        if isinstance(val, GenSection):
            for part, comps in (("vector", val.vec.components), ("oneform", val.form.components)):
                lines += [f"  {s}.{part}[{i}] = {render_poly(c)}" for i, c in enumerate(comps)
                          if not c.is_zero()]
        elif not val.is_zero():
            lines.append(f"  {s} = {render_poly(val)}")
    return lines or ["  0"]


# --- commands -----------------------------------------------------------------------

def _negative_controls(cfg: SamplerConfig) -> list[CheckReport]:
    out = []
    for name, rep in (("control_n0_zeroed_detected", check_stasheff(3, cfg, zero_n0=True)),
                      ("control_koszul_flip_detected", check_bar_differential(4, cfg, corrupt=True))):
        out.append(CheckReport(name, not rep.passed, rep.trials,
                               None if not rep.passed else {"note": "corrupted variant passed"}))
    return out


def cmd_check(cfg: CliConfig, out) -> int:
    if cfg.show_calibration:
        for k, v in DEFAULT.as_dict().items():
            out.write(f"CALIBRATION {k} = {v:+d}  # {PROVENANCE[k]}\n")
    sc = SamplerConfig(seed=cfg.seed, D=cfg.dimension, max_degree=cfg.max_degree,
                       matrix_dim=cfg.matrix_dim, trials=cfg.trials)
    reports = full_battery(sc, eta_trials=min(20, cfg.trials))
    # controls get a fixed budget: they must trip regardless of --trials
    reports += _negative_controls(replace(sc, matrix_dim=2, trials=CONTROL_TRIALS))
    reports.sort(key=lambda r: r.name)
    if cfg.json:
        out.write(json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2) + "\n")
    else:
        for r in reports:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _mc_field(ff: FieldFile) -> MCField:
    x = _section(ff)
    v = ff.functions.get("v1")
    return MCField(x, v if v is not None else eliminate_v(x, ff.eta))


def cmd_ym(cfg: CliConfig, out) -> int:
    ff = load_field_file(cfg.input_path)
    psi = _mc_field(ff)
    res = mc_residual(psi, ff.eta)
    e1, e2 = covariant_ym_residual(psi, ff.eta)
    ok = all(p.is_zero() for p in recombination_defect(psi, ff.eta))
    if cfg.json:
        out.write(json.dumps({
            "mc_residual": res.to_json(),
            "covariant_first": [p.to_json() for p in e1],
            "covariant_second": [p.to_json() for p in e2],
            "mc_residual_zero": res.is_zero(),
            "recombination_holds": ok}, sort_keys=True, indent=2) + "\n")
    else:
        out.write("mc_residual:\n" + "\n".join(render_element(res)) + "\n")
        for k, p in enumerate(e1):
            out.write(f"covariant_first[{k}] = {render_poly(p)}\n")
        for k, p in enumerate(e2):
            out.write(f"covariant_second[{k}] = {render_poly(p)}\n")
        out.write(f"mc_residual_zero = {res.is_zero()}\n")
        out.write(f"CHECK recombination {'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gauge(cfg: CliConfig, out) -> int:
    ff = load_field_file(cfg.input_path)
    if ff.gauge is None:
        raise ParseError("gauge command needs a 'gauge' entry")
    psi = _mc_field(ff)
    u = GaugeParam(ff.gauge)
    new = gauge_transform(psi, u, ff.eps, ff.eta)
    res = mc_residual(psi, ff.eta)
    variation = mc_variation(psi, gauge_variation(psi, u, ff.eta), ff.eta)
    g = u.element()
    covariant = (variation - (mu0_eta(res, g, ff.eta) - mu0_eta(g, res, ff.eta))).is_zero()
    if cfg.json:
        out.write(json.dumps({"transformed": new.element().to_json(),
                              "residual_variation": variation.to_json(),
                              "covariant": covariant}, sort_keys=True, indent=2) + "\n")
    else:
        out.write("transformed field:\n" + "\n".join(render_element(new.element())) + "\n")
        out.write("first-order residual variation:\n" + "\n".join(render_element(variation)) + "\n")
        out.write(f"CHECK gauge_covariance {'PASS' if covariant else 'FAIL'}\n")
    return EXIT_OK if covariant else EXIT_FAIL


def _element(ff: FieldFile) -> LightElement:
    slot = ff.raw.get("section_slot", "x1")
    if slot not in ("x1", "x2"):
        raise ParseError("section_slot must be x1 or x2")
    return LightElement.make(ff.D, ff.matrix_dim, **{slot: _section(ff)}, **ff.functions)


def cmd_decompose(cfg: CliConfig, out) -> int:
    ff = load_field_file(cfg.input_path)
    a = _element(ff)
    d = decompose(a, ff.eta)
    roundtrip = (embed(d, ff.eta) - a).is_zero()
    intertwines = (apply_Q_eta(a, ff.eta)
                   - embed(decomposed_differential(d, ff.eta), ff.eta)).is_zero()
    parts = d.labeled()
    if cfg.json:
        def ser(v):
            return v.to_json() if isinstance(v, Poly) else [c.to_json() for c in v.components]
        out.write(json.dumps({"parts": {g: {k: ser(v) for k, v in m.items()} for g, m in parts.items()},
                              "roundtrip": roundtrip, "intertwines": intertwines},
                             sort_keys=True, indent=2) + "\n")
    else:
        for g, m in parts.items():
            for k, v in m.items():
                if isinstance(v, Poly):
                    out.write(f"{g}.{k} = {render_poly(v)}\n")
                else:
                    for i, c in enumerate(v.components):
                        out.write(f"{g}.{k}[{i}] = {render_poly(c)}\n")
        out.write(f"CHECK roundtrip {'PASS' if roundtrip else 'FAIL'}\n")
        out.write(f"CHECK intertwining {'PASS' if intertwines else 'FAIL'}\n")
    return EXIT_OK if roundtrip and intertwines else EXIT_FAIL


def cmd_heisenberg(cfg: CliConfig, out) -> int:
    ff = load_field_file(cfg.input_path)
    fields = []
    for p in ff.vec:
        if any(any(e) for e in p.terms):
            raise ParseError("heisenberg fields must be constant")
        fields.append(p.coeff((0,) * ff.D))
    res = heisenberg_ym_residual(fields, ff.eta.entries)
    if cfg.json:
        out.write(json.dumps({"residual": [m.to_json() for m in res]}, sort_keys=True, indent=2) + "\n")
    else:
        for k, m in enumerate(res):
            out.write(f"residual[{k}] = {render_mat(m)}\n")
    return EXIT_OK


COMMANDS = {"check": cmd_check, "ym": cmd_ym, "gauge": cmd_gauge,
            "decompose": cmd_decompose, "heisenberg": cmd_heisenberg}


def run(cfg: CliConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001 - any other failure is an internal breach
        sys.stderr.write(f"internal error: {exc!r}\n")
        return EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lzbv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    chk = sub.add_parser("check", parents=[common], help="run the identity battery")
    chk.add_argument("--seed", type=int, default=42)
    chk.add_argument("--trials", type=int, default=100)
    chk.add_argument("--dimension", type=int, default=2)
    chk.add_argument("--max-degree", type=int, default=3)
    chk.add_argument("--matrix-dim", type=int, default=1)
    chk.add_argument("--show-calibration", action="store_true")
    file_commands = {
        "ym": "MC residual, covariant YM residuals and their recombination",
        "gauge": "apply the file's gauge parameter and check covariance",
        "decompose": "three-part decomposition with round-trip check",
        "heisenberg": "constant-field YM residuals sum g^ij [A_i,[A_j,A_k]]",
    }
    for name, text in file_commands.items():
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("input_path", help="JSON field file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    cfg = CliConfig(command=ns.command, json=ns.json)
    for key in ("seed", "trials", "dimension", "max_degree", "matrix_dim", "input_path", "show_calibration"):
        if hasattr(ns, key):
            setattr(cfg, key, getattr(ns, key))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
