"""Seeded randomized verification of the graded identities.

Every check draws ghost-homogeneous inputs, evaluates an identity whose two
sides should agree exactly, and stops at the first nonzero residual, which
is stored in the report together with the inputs that produced it.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .calibration import DEFAULT, SignCalibration, all_calibrations
from .light_complex import (GHOST, SECTION_SLOTS, SLOTS, LightElement, apply_b0, apply_Q,
                            apply_Q_eta, apply_R_eta)
from .lz_ops import bracket0, bracket0_eta, m0, mu0, mu0_eta, n0
from .polynomials import Poly
from .scalars import MatCoeff
from .sections import (Eta, GenSection, OneForm, VecField, dorfman,
                       lie_derivative, pairing)


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 42
    D: int = 2
    max_degree: int = 3
    matrix_dim: int = 1
    terms_per_component: int = 2
    trials: int = 100

    def __post_init__(self):
        for name in ("D", "max_degree", "matrix_dim", "terms_per_component", "trials"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass
class CheckReport:
    name: str
    passed: bool
    trials: int
    counterexample: Optional[dict] = None

    def line(self) -> str:
        return f"CHECK {self.name} {'PASS' if self.passed else 'FAIL'} trials={self.trials}"

    def to_json(self) -> dict:
        return asdict(self)


# --- sampling -----------------------------------------------------------------

class Sampler:
    """Random exact inputs; one instance per trial, seeded from (seed, name, trial)."""

    def __init__(self, config: SamplerConfig, name: str, trial: int):
        self.cfg = config
        self.rng = random.Random(f"{config.seed}:{name}:{trial}")

    def rational(self) -> Fraction:
        return Fraction(self.rng.randint(-4, 4), self.rng.choice((1, 1, 2, 3)))

    def coeff(self) -> MatCoeff:
        n = self.cfg.matrix_dim
        while True:
            m = MatCoeff(n, [self.rational() for _ in range(n * n)])
            if not m.is_zero():
                return m

    def poly(self, density: float = 0.8) -> Poly:
        D, n = self.cfg.D, self.cfg.matrix_dim
        if self.rng.random() > density:
            return Poly.zero(D, n)
        terms = []
        for _ in range(self.rng.randint(1, self.cfg.terms_per_component)):
            deg = self.rng.randint(0, self.cfg.max_degree)
            exps = [0] * D
            for _ in range(deg):
                exps[self.rng.randrange(D)] += 1
            terms.append((tuple(exps), self.coeff()))
        return Poly(D, n, terms)

    def section(self) -> GenSection:
        D = self.cfg.D
        return GenSection(VecField(tuple(self.poly() for _ in range(D))),
                          OneForm(tuple(self.poly() for _ in range(D))))

    def element(self, degree: int) -> LightElement:
        """Ghost-homogeneous element with every slot of that degree populated at random."""
        D, n = self.cfg.D, self.cfg.matrix_dim
        slots = {}
        for s in SLOTS:
            if GHOST[s] == degree:
                slots[s] = self.section() if s in SECTION_SLOTS else self.poly()
        el = LightElement.make(D, n, **slots)
        if el.is_zero():
            return self.element(degree)
        return el

    def eta(self, kind: str = "general") -> Eta:
        D = self.cfg.D
        g = [[self.rng.randint(-2, 2) for _ in range(D)] for _ in range(D)]
        if kind == "symmetric":
            g = [[g[min(i, j)][max(i, j)] for j in range(D)] for i in range(D)]
        elif kind == "antisymmetric":
            g = [[0 if i == j else (g[i][j] if i < j else -g[j][i]) for j in range(D)] for i in range(D)]
        return Eta(g)


def degree_tuples(arity: int, max_total: int) -> list[tuple[int, ...]]:
    """Ghost-degree tuples (each 0..3) whose sum is at most ``max_total``."""
    return [t for t in itertools.product(range(4), repeat=arity) if sum(t) <= max_total]


def _ser(x) -> object:
    if isinstance(x, LightElement):
        return x.to_json()
    if isinstance(x, Eta):
        return x.to_json()
    if isinstance(x, GenSection):
        return {"vector": [c.to_json() for c in x.vec.components],
                "oneform": [c.to_json() for c in x.form.components]}
    if isinstance(x, Poly):
        return x.to_json()
    return x


def run_identity(name: str, config: SamplerConfig, arity: int, max_total: int,
                 residual: Callable, eta_kind: Optional[str] = None,
                 trials: Optional[int] = None) -> CheckReport:
    """Evaluate ``residual(inputs, degrees, eta)`` on sampled inputs; pass iff all zero.

    Trials cycle through the admissible ghost-degree tuples so every table cell
    is reached, not just the ones uniform sampling would favour.
    """
    tuples = degree_tuples(arity, max_total)
    n = trials if trials is not None else config.trials
    for t in range(n):
        s = Sampler(config, name, t)
        degs = tuples[t % len(tuples)]
        inputs = [s.element(d) for d in degs]
        eta = s.eta(eta_kind) if eta_kind else None
        res = residual(inputs, degs, eta)
        if not res.is_zero():
            cx = {"trial": t, "degrees": list(degs),
                  "inputs": [_ser(x) for x in inputs], "residual": _ser(res)}
            if eta is not None:
                cx["eta"] = eta.to_json()
            return CheckReport(name, False, t + 1, cx)
    return CheckReport(name, True, n)


def sampled_etas(name: str, config: SamplerConfig, arity: int, max_total: int,
                 eta_kind: str, trials: Optional[int] = None) -> list[Eta]:
    """The eta tensors ``run_identity`` draws for the same arguments, in trial order."""
    tuples = degree_tuples(arity, max_total)
    n = trials if trials is not None else config.trials
    out = []
    for t in range(n):
        s = Sampler(config, name, t)
        for d in tuples[t % len(tuples)]:
            s.element(d)
        out.append(s.eta(eta_kind))
    return out


def replay(report: CheckReport, config: SamplerConfig, arity: int, max_total: int,
           residual: Callable, eta_kind: Optional[str] = None):
    """Re-evaluate a failing report's counterexample from its serialized inputs."""
    cx = report.counterexample
    D, n = config.D, config.matrix_dim
    inputs = [LightElement.from_json(x, D, n) for x in cx["inputs"]]
    eta = Eta(cx["eta"]) if "eta" in cx else None
    return residual(inputs, tuple(cx["degrees"]), eta)


# --- A-infinity machinery -----------------------------------------------------

def operations(eta: Optional[Eta] = None, cal: SignCalibration = DEFAULT,
               zero_n0: bool = False) -> dict[int, Callable]:
    """mu_1 = Q (or Q^eta), mu_2 = mu0 (or mu0^eta), mu_3 = n0; higher ones vanish."""
    if eta is None:
        ops = {1: lambda a: apply_Q(a, cal), 2: lambda a, b: mu0(a, b, cal)}
    else:
        ops = {1: lambda a: apply_Q_eta(a, eta, cal), 2: lambda a, b: mu0_eta(a, b, eta, cal)}
    if not zero_n0:
        ops[3] = lambda a, b, c: n0(a, b, c, cal)
    return ops


def _apply(ops, s, args):
    f = ops.get(s)
    if f is None:
        return None
    return f(*args)


def stasheff_residual(ops: dict, inputs: Sequence[LightElement], degs: Sequence[int]) -> LightElement:
    """``sum_i (-1)^i M_i o M_{n-i+1}`` applied to the inputs.

    ``M_s = sum_l (-1)^{l(s+1)} 1^l (x) mu_s (x) 1``, with the Koszul sign
    ``(-1)^{|mu_s|(|a_1|+...+|a_l|)}`` and ``|mu_s| = 2 - s``.
    """
    n = len(inputs)
    D, dim = inputs[0].D, inputs[0].dim
    total = LightElement.zero(D, dim)
    for i in range(1, n + 1):
        s = n - i + 1
        if i not in ops or s not in ops:
            continue
        for l in range(0, n - s + 1):
            sign = (-1) ** (l * (s + 1)) * (-1) ** ((2 - s) * sum(degs[:l]))
            inner = _apply(ops, s, inputs[l:l + s])
            if inner.is_zero():
                continue
            outer = _apply(ops, i, list(inputs[:l]) + [inner] + list(inputs[l + s:]))
            total = total + outer.scale(sign * (-1) ** i)
    return total


def check_stasheff(arity: int, config: SamplerConfig, eta_kind: Optional[str] = None,
                   zero_n0: bool = False, cal: SignCalibration = DEFAULT,
                   name: Optional[str] = None) -> CheckReport:
    if not 2 <= arity <= 5:
        raise ValueError("arity must be between 2 and 5")

    def residual(inputs, degs, eta):
        return stasheff_residual(operations(eta, cal, zero_n0), inputs, degs)

    label = name or f"stasheff_arity{arity}" + (f"_{eta_kind}_eta" if eta_kind else "") \
        + ("_n0_zeroed" if zero_n0 else "")
    return run_identity(label, config, arity, arity, residual, eta_kind)


# --- bar construction ---------------------------------------------------------

class _Functional:
    """Random exact linear functional on the light-mode complex."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.weights: dict = {}

    def _w(self, key) -> Fraction:
        w = self.weights.get(key)
        if w is None:
            w = Fraction(self.rng.randint(-97, 97), self.rng.randint(1, 5))
            self.weights[key] = w
        return w

    def __call__(self, a: LightElement) -> Fraction:
        total = Fraction(0)
        for s in a.nonzero_slots():
            val = getattr(a, s)
            comps = ([("v", i, c) for i, c in enumerate(val.vec.components)]
                     + [("f", i, c) for i, c in enumerate(val.form.components)]) \
                if isinstance(val, GenSection) else [("", 0, val)]
            for kind, i, p in comps:
                for exps, m in p.terms.items():
                    for k, x in enumerate(m.entries):
                        if x:
                            total += x * self._w((s, kind, i, exps, k))
        return total


def _bar_d(word, degs, ops, corrupt: bool, desusp_sign: bool):
    """Bar differential on one word; returns list of (sign, word, degrees).

    The suspended operation carries ``(-1)^{s(a)}`` with
    ``s(a) = sum_k (n-k)|a_k|``, plus ``n(n-1)/2`` from moving the n
    desuspensions past each other when ``desusp_sign`` is set. Without that
    term d^2 fails from word length three on.
    """
    m = len(word)
    out = []
    for n in sorted(ops):
        for l in range(0, m - n + 1):
            chunk = word[l:l + n]
            cdeg = degs[l:l + n]
            susp = sum((n - k) * cdeg[k - 1] for k in range(1, n))
            if desusp_sign:
                susp += n * (n - 1) // 2
            res = ops[n](*chunk)
            if res.is_zero():
                continue
            rdeg = sum(cdeg) + 2 - n
            koszul = sum(d - 1 for d in degs[:l])
            if corrupt and l == 1:
                koszul += 1
            sign = (-1) ** (susp + koszul)
            out.append((sign, word[:l] + (res,) + word[l + n:], degs[:l] + (rdeg,) + degs[l + n:]))
    return out


def bar_square_residual(ops, inputs, degs, rng: random.Random, corrupt: bool = False,
                        desusp_sign: bool = True, probes: int = 2) -> Fraction:
    """Evaluate random product functionals on ``d(d(word))``; exact zero iff the identity holds
    (up to the negligible chance that a nonzero tensor is annihilated by every probe)."""
    words = [(1, tuple(inputs), tuple(degs))]
    for _ in range(2):
        nxt = []
        for sign, w, dg in words:
            for s2, w2, dg2 in _bar_d(w, dg, ops, corrupt, desusp_sign):
                nxt.append((sign * s2, w2, dg2))
        words = nxt
    for _ in range(probes):
        fams = [_Functional(random.Random(rng.random())) for _ in range(len(inputs))]
        acc = Fraction(0)
        for sign, w, _ in words:
            val = Fraction(sign)
            for k, el in enumerate(w):
                val *= fams[k](el)
                if not val:
                    break
            acc += val
        if acc:
            return acc
    return Fraction(0)


def check_bar_differential(max_word_length: int, config: SamplerConfig,
                           eta_kind: Optional[str] = None, corrupt: bool = False,
                           desusp_sign: bool = True, cal: SignCalibration = DEFAULT,
                           name: Optional[str] = None) -> CheckReport:
    """``d^2 = 0`` on bar words of every length up to ``max_word_length``."""
    if not 1 <= max_word_length <= 5:
        raise ValueError("word length must be between 1 and 5")
    label = name or f"bar_differential_len{max_word_length}" + (f"_{eta_kind}_eta" if eta_kind else "") \
        + ("_corrupted" if corrupt else "") + ("" if desusp_sign else "_printed_suspension")
    trials = config.trials
    for t in range(trials):
        length = 1 + t % max_word_length
        s = Sampler(config, label, t)
        tuples = degree_tuples(length, length + 1)
        degs = tuples[s.rng.randrange(len(tuples))]
        inputs = [s.element(d) for d in degs]
        eta = s.eta(eta_kind) if eta_kind else None
        ops = operations(eta, cal)
        val = bar_square_residual(ops, inputs, degs, s.rng, corrupt, desusp_sign)
        if val:
            cx = {"trial": t, "degrees": list(degs), "inputs": [_ser(x) for x in inputs],
                  "residual": str(val)}
            if eta is not None:
                cx["eta"] = eta.to_json()
            return CheckReport(label, False, t + 1, cx)
    return CheckReport(label, True, trials)


# --- identity residuals ---------------------------------------------------------

def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def leibniz_residual(Qf, mu):
    def residual(inputs, degs, eta):
        a, b = inputs
        return Qf(mu(a, b)) - mu(Qf(a), b) - mu(a, Qf(b)).scale(_sgn(degs[0]))
    return residual


def homotopy_comm_residual(Qf, mu, m):
    def residual(inputs, degs, eta):
        a, b = inputs
        lhs = mu(a, b) - mu(b, a).scale(_sgn(degs[0] * degs[1]))
        rhs = Qf(m(a, b)) + m(Qf(a), b) + m(a, Qf(b)).scale(_sgn(degs[0]))
        return lhs - rhs
    return residual


def homotopy_assoc_residual(Qf, mu, n):
    def residual(inputs, degs, eta):
        a, b, c = inputs
        da, db = degs[0], degs[1]
        lhs = (Qf(n(a, b, c)) + n(Qf(a), b, c) + n(a, Qf(b), c).scale(_sgn(da))
               + n(a, b, Qf(c)).scale(_sgn(da + db)))
        return lhs - (mu(mu(a, b), c) - mu(a, mu(b, c)))
    return residual


def a3_residual(mu, n):
    def residual(inputs, degs, eta):
        a, b, c, d = inputs
        lhs = mu(a, n(b, c, d)).scale(_sgn(degs[0])) + mu(n(a, b, c), d)
        rhs = n(mu(a, b), c, d) - n(a, mu(b, c), d) + n(a, b, mu(c, d))
        return lhs - rhs
    return residual


def jacobi_residual(br):
    def residual(inputs, degs, eta):
        a, b, c = inputs
        return (br(br(a, b), c) - br(a, br(b, c))
                + br(b, br(a, c)).scale(_sgn((degs[0] - 1) * (degs[1] - 1))))
    return residual


def bracket_leibniz_residual(br, mu):
    def residual(inputs, degs, eta):
        a, b, c = inputs
        return br(a, mu(b, c)) - mu(br(a, b), c) - mu(b, br(a, c)).scale(_sgn((degs[0] - 1) * degs[1]))
    return residual


def bv_relation_residual(mu, br, orientation: int = 1):
    def residual(inputs, degs, eta):
        a, b = inputs
        expected = (apply_b0(mu(a, b)) - mu(apply_b0(a), b)
                    - mu(a, apply_b0(b)).scale(_sgn(degs[0])))
        return br(a, b) - expected.scale(orientation * _sgn(degs[0]))
    return residual


# --- suites ---------------------------------------------------------------------

def _with_eta(f):
    return lambda inputs, degs, eta: f(eta)(inputs, degs, eta)


def check_differentials(config: SamplerConfig, cal: SignCalibration = DEFAULT,
                        eta_trials: int = 20) -> list[CheckReport]:
    Q = lambda a: apply_Q(a, cal)

    def one(f):
        return lambda inputs, degs, eta: f(inputs[0], eta)

    reports = [
        run_identity("Q_squared", config, 1, 3, one(lambda a, e: Q(Q(a)))),
        run_identity("b0_squared", config, 1, 3, one(lambda a, e: apply_b0(apply_b0(a)))),
        run_identity("Q_b0_anticommute", config, 1, 3,
                     one(lambda a, e: Q(apply_b0(a)) + apply_b0(Q(a)))),
        run_identity("R_eta_squared", config, 1, 3,
                     one(lambda a, e: apply_R_eta(apply_R_eta(a, e), e)), "general", eta_trials),
        run_identity("Q_R_eta_anticommute", config, 1, 3,
                     one(lambda a, e: Q(apply_R_eta(a, e)) + apply_R_eta(Q(a), e)), "general", eta_trials),
        run_identity("Q_eta_squared", config, 1, 3,
                     one(lambda a, e: apply_Q_eta(apply_Q_eta(a, e, cal), e, cal)), "general", eta_trials),
    ]
    return reports


def courant_reports(config: SamplerConfig, cal: SignCalibration = DEFAULT,
                    trials: Optional[int] = None) -> list[CheckReport]:
    """Dorfman Leibniz, pairing compatibility and bracket0 = Dorfman on sections."""
    n = trials if trials is not None else config.trials
    cfg = replace(config, matrix_dim=1)
    out = []

    def sections(name, k, t):
        s = Sampler(cfg, name, t)
        return [s.section() for _ in range(k)]

    def run(name, k, fn):
        for t in range(n):
            xs = sections(name, k, t)
            res = fn(*xs)
            if not res.is_zero():
                return CheckReport(name, False, t + 1,
                                   {"trial": t, "inputs": [_ser(x) for x in xs], "residual": _ser(res)})
        return CheckReport(name, True, n)

    out.append(run("dorfman_leibniz", 3, lambda x1, x2, x3:
                   dorfman(x1, dorfman(x2, x3)) - dorfman(dorfman(x1, x2), x3) - dorfman(x2, dorfman(x1, x3))))
    out.append(run("pairing_compatibility", 3, lambda x1, x2, x3:
                   lie_derivative(x1.vec, pairing(x2, x3))
                   - pairing(dorfman(x1, x2), x3) - pairing(x2, dorfman(x1, x3))))

    def bracket_is_dorfman(x1, x2):
        D = cfg.D
        a = LightElement.make(D, 1, x1=x1)
        b = LightElement.make(D, 1, x1=x2)
        return bracket0(a, b, cal) - LightElement.make(D, 1, x1=dorfman(x1, x2))
    out.append(run("bracket0_equals_dorfman", 2, bracket_is_dorfman))
    return out


def check_bv_suite(config: SamplerConfig, cal: SignCalibration = DEFAULT) -> CheckReport:
    """All commutative-coefficient homotopy BV relations, folded into a single report."""
    reports = bv_reports(config, cal)
    failed = [r for r in reports if not r.passed]
    if failed:
        r = failed[0]
        return CheckReport("bv_suite", False, sum(x.trials for x in reports),
                           {"failed_check": r.name, **(r.counterexample or {})})
    return CheckReport("bv_suite", True, sum(x.trials for x in reports))


def bv_reports(config: SamplerConfig, cal: SignCalibration = DEFAULT) -> list[CheckReport]:
    if config.matrix_dim != 1:
        raise ValueError("the homotopy BV suite needs commutative coefficients (matrix_dim = 1)")
    Q = lambda a: apply_Q(a, cal)
    mu = lambda a, b: mu0(a, b, cal)
    m = lambda a, b: m0(a, b, cal)
    n = lambda a, b, c: n0(a, b, c, cal)
    br = lambda a, b: bracket0(a, b, cal)
    reps = [
        run_identity("leibniz", config, 2, 2, leibniz_residual(Q, mu)),
        run_identity("homotopy_commutativity", config, 2, 2, homotopy_comm_residual(Q, mu, m)),
        run_identity("homotopy_associativity", config, 3, 3, homotopy_assoc_residual(Q, mu, n)),
        run_identity("a3_relation", config, 4, 4, a3_residual(mu, n)),
        run_identity("bracket_jacobi", config, 3, 5, jacobi_residual(br)),
        run_identity("bracket_leibniz", config, 3, 4, bracket_leibniz_residual(br, mu)),
        run_identity("bv_relation", config, 2, 4, bv_relation_residual(mu, br, cal.bracket_orientation)),
    ]
    return reps + courant_reports(config, cal)


def deformed_reports(config: SamplerConfig, cal: SignCalibration = DEFAULT,
                     trials: int = 20) -> list[CheckReport]:
    """Deformed relations with Q^eta and mu0^eta for sampled symmetric eta; m0, n0 undeformed."""
    def Qe(e):
        return lambda a: apply_Q_eta(a, e, cal)

    def mue(e):
        return lambda a, b: mu0_eta(a, b, e, cal)
    m = lambda a, b: m0(a, b, cal)
    n = lambda a, b, c: n0(a, b, c, cal)
    reps = [
        run_identity("deformed_leibniz", config, 2, 2,
                     _with_eta(lambda e: leibniz_residual(Qe(e), mue(e))), "symmetric", trials),
        run_identity("deformed_homotopy_associativity", config, 3, 3,
                     _with_eta(lambda e: homotopy_assoc_residual(Qe(e), mue(e), n)), "symmetric", trials),
        run_identity("deformed_a3_relation", config, 4, 4,
                     _with_eta(lambda e: a3_residual(mue(e), n)), "symmetric", trials),
        check_stasheff(4, replace(config, trials=trials), "symmetric", cal=cal,
                       name="deformed_stasheff_arity4"),
    ]
    comm_cfg = replace(config, matrix_dim=1)
    reps.insert(1, run_identity("deformed_homotopy_commutativity", comm_cfg, 2, 2,
                                _with_eta(lambda e: homotopy_comm_residual(Qe(e), mue(e), m)),
                                "symmetric", trials))
    return reps


def antisymmetric_leibniz_report(config: SamplerConfig, cal: SignCalibration = DEFAULT,
                                 trials: int = 20) -> CheckReport:
    """Derived bracket of mu0^eta obeys the strict Leibniz rule for antisymmetric eta."""
    cfg = replace(config, matrix_dim=1)
    return run_identity(
        "antisymmetric_eta_bracket_leibniz", cfg, 3, 4,
        _with_eta(lambda e: bracket_leibniz_residual(lambda a, b: bracket0_eta(a, b, e, cal),
                                                     lambda a, b: mu0_eta(a, b, e, cal))),
        "antisymmetric", trials)


def full_battery(config: SamplerConfig, eta_trials: int = 20) -> list[CheckReport]:
    """Everything the ``check`` command runs, in a fixed order."""
    reps = check_differentials(config, eta_trials=eta_trials)
    reps += bv_reports(replace(config, matrix_dim=1))
    a3cfg = replace(config, matrix_dim=2)
    reps += [check_stasheff(k, a3cfg) for k in (2, 3, 4)]
    reps.append(check_bar_differential(4, a3cfg))
    reps.append(check_bar_differential(4, replace(a3cfg, trials=eta_trials), "symmetric"))
    reps += deformed_reports(a3cfg, trials=eta_trials)
    reps.append(antisymmetric_leibniz_report(config, trials=eta_trials))
    return reps


# --- calibration search ---------------------------------------------------------

_MU_FLAGS = ("q_v_to_vtilde", "mu_pairing_weight1", "mu_pairing_mixed", "mu_lie_function")
_N0_FLAGS = ("pairing_zero", "n0_vtilde_first", "n0_vtilde_middle")


def _calibration_stages(cal: SignCalibration, config: SamplerConfig):
    """(name, relevant flags, thunk) triples, cheapest and most selective first."""
    Q = lambda a: apply_Q(a, cal)
    mu = lambda a, b: mu0(a, b, cal)
    m = lambda a, b: m0(a, b, cal)
    n = lambda a, b, c: n0(a, b, c, cal)
    br = lambda a, b: bracket0(a, b, cal)
    every = tuple(cal.as_dict())
    return [
        ("Q_b0_anticommute", ("q_v_to_vtilde",), lambda: run_identity(
            "Q_b0_anticommute", config, 1, 3,
            lambda i, d, e: Q(apply_b0(i[0])) + apply_b0(Q(i[0])))),
        ("leibniz", _MU_FLAGS, lambda: run_identity(
            "leibniz", config, 2, 2, leibniz_residual(Q, mu))),
        ("bracket0_equals_dorfman", _MU_FLAGS + ("bracket_orientation",),
         lambda: courant_reports(config, cal)[2]),
        ("homotopy_commutativity", _MU_FLAGS + ("pairing_zero",), lambda: run_identity(
            "homotopy_commutativity", config, 2, 2, homotopy_comm_residual(Q, mu, m))),
        ("homotopy_associativity", _MU_FLAGS + _N0_FLAGS, lambda: run_identity(
            "homotopy_associativity", config, 3, 3, homotopy_assoc_residual(Q, mu, n))),
        ("a3_relation", _MU_FLAGS + _N0_FLAGS, lambda: run_identity(
            "a3_relation", config, 4, 4, a3_residual(mu, n))),
        ("bracket_jacobi", every, lambda: run_identity(
            "bracket_jacobi", config, 3, 5, jacobi_residual(br))),
        ("bracket_leibniz", every, lambda: run_identity(
            "bracket_leibniz", config, 3, 4, bracket_leibniz_residual(br, mu))),
    ]


def calibration_reports(cal: SignCalibration, config: SamplerConfig,
                        cache: Optional[dict] = None) -> list[CheckReport]:
    """Run the calibration suite for one assignment, stopping at the first failure.

    ``cache`` shares results between assignments that agree on every flag a
    check depends on.
    """
    cache = {} if cache is None else cache
    out = []
    for name, flags, thunk in _calibration_stages(cal, config):
        key = (name, tuple(getattr(cal, f) for f in flags))
        if key not in cache:
            cache[key] = thunk()
        out.append(cache[key])
        if not cache[key].passed:
            break
    return out


def search_calibration(config: Optional[SamplerConfig] = None) -> list[SignCalibration]:
    """Exhaustively test all 2^8 sign assignments; return the ones passing the whole suite."""
    config = config or SamplerConfig(seed=7, D=2, max_degree=2, trials=40)
    winners = []
    cache: dict = {}
    for cal in all_calibrations():
        if all(r.passed for r in calibration_reports(cal, config, cache)):
            winners.append(cal)
    return winners


def reports_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2)
