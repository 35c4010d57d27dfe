"""Maurer-Cartan (Yang-Mills) layer.

A ghost-one field is ``Psi = X + v`` with ``X = (A, B)`` a matrix-valued
generalized section. With ``v`` eliminated and ``eta`` symmetric and
invertible, the residual is equivalent to the covariant system for

    calA_i = (B_i + A♭_i) / 2,   Phi_i = (B_i - A♭_i) / 2,   nabla_i = d_i + calA_i.

Both combinations shift as connections under gauge transformations
(``delta B = du + [B,u]``, ``delta A♭ = du + [A♭,u]``), which is what fixes
the factor 1/2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .calibration import DEFAULT, SignCalibration
from .light_complex import HALF, LightElement, apply_Q_eta
from .lz_ops import mu0_eta, n0
from .polynomials import Poly, partial, poly_mul
from .scalars import MatCoeff, commutator
from .sections import (Eta, GenSection, OneForm, VecField, contract, contract_fb,
                       div_hat, divergence, exterior_d, grad_hat, laplacian,
                       lower_index, raise_index)


@dataclass(frozen=True)
class MCField:
    x: GenSection
    v: Poly

    @property
    def D(self) -> int:
        return self.x.D

    @property
    def dim(self) -> int:
        return self.x.dim

    def element(self) -> LightElement:
        return LightElement.make(self.D, self.dim, x1=self.x, v1=self.v)

    @classmethod
    def with_eliminated_v(cls, x: GenSection, eta: Eta) -> "MCField":
        return cls(x, eliminate_v(x, eta))


@dataclass(frozen=True)
class GaugeParam:
    u: Poly

    def element(self) -> LightElement:
        return LightElement.make(self.u.num_vars, self.u.dim, u=self.u)


def _require_invertible_symmetric(eta: Eta) -> None:
    if not eta.symmetric:
        raise ValueError("eta must be symmetric here")
    eta.require_inverse()


def mc_residual(psi: MCField, eta: Eta, cal: SignCalibration = DEFAULT) -> LightElement:
    """``Q^eta Psi + mu0^eta(Psi, Psi) + n0(Psi, Psi, Psi)`` (ghost two)."""
    p = psi.element()
    return apply_Q_eta(p, eta, cal) + mu0_eta(p, p, eta, cal) + n0(p, p, p, cal)


def mc_variation(psi: MCField, delta: LightElement, eta: Eta,
                 cal: SignCalibration = DEFAULT) -> LightElement:
    """First-order change of ``mc_residual`` when ``Psi`` moves by ``delta``."""
    p = psi.element()
    return (apply_Q_eta(delta, eta, cal) + mu0_eta(delta, p, eta, cal) + mu0_eta(p, delta, eta, cal)
            + n0(delta, p, p, cal) + n0(p, delta, p, cal) + n0(p, p, delta, cal))


def eliminate_v(psi_x: GenSection, eta: Eta) -> Poly:
    """Solve the ghost-two function component of the residual for ``v``.

    ``v = -1/2 (div A + sum eta^{ij} d_j B_i) - 1/2 sum (A^i B_i + B_i A^i)``.
    """
    a, b = psi_x.vec, psi_x.form
    lin = divergence(a) + div_hat(b, eta.transpose())
    quad = contract(a, b) + contract_fb(b, a)
    return (lin + quad).scale(-HALF)


def gauge_variation(psi: MCField, u: GaugeParam, eta: Eta,
                    cal: SignCalibration = DEFAULT) -> LightElement:
    """``Q^eta u + mu0^eta(Psi, u) - mu0^eta(u, Psi)``."""
    p, g = psi.element(), u.element()
    return apply_Q_eta(g, eta, cal) + mu0_eta(p, g, eta, cal) - mu0_eta(g, p, eta, cal)


def _linear_v(x: GenSection, dx: GenSection, eta: Eta) -> Poly:
    # derivative of eliminate_v at x in the direction dx
    a, b, da, db = x.vec, x.form, dx.vec, dx.form
    lin = divergence(da) + div_hat(db, eta.transpose())
    quad = contract(da, b) + contract(a, db) + contract_fb(db, a) + contract_fb(b, da)
    return (lin + quad).scale(-HALF)


def gauge_transform(psi: MCField, u: GaugeParam, eps, eta: Eta,
                    cal: SignCalibration = DEFAULT) -> MCField:
    """First-order gauge transformation; ``v`` follows the linearized v-equation."""
    eps = Fraction(eps)
    dx = gauge_variation(psi, u, eta, cal).x1
    return MCField(psi.x + dx.scale(eps), psi.v + _linear_v(psi.x, dx, eta).scale(eps))


# --- covariant form -------------------------------------------------------------

def covariant_fields(psi_x: GenSection, eta: Eta) -> tuple[list[Poly], list[Poly]]:
    """``(calA_i, Phi_i)`` from ``(A, B)``."""
    _require_invertible_symmetric(eta)
    flat = lower_index(psi_x.vec, eta)
    calA = [(psi_x.form[i] + flat[i]).scale(HALF) for i in range(psi_x.D)]
    phi = [(psi_x.form[i] - flat[i]).scale(HALF) for i in range(psi_x.D)]
    return calA, phi


def _comm(p: Poly, q: Poly) -> Poly:
    return poly_mul(p, q) - poly_mul(q, p)


def covariant_ym_residual(psi: MCField, eta: Eta) -> tuple[list[Poly], list[Poly]]:
    """LHS - RHS of

        eta^{ij} [nabla_i, [nabla_j, nabla_k]] = eta^{ij} [[nabla_k, Phi_i], Phi_j]
        eta^{ij} [nabla_i, [nabla_j, Phi_k]]   = eta^{ij} [Phi_i, [Phi_j, Phi_k]]

    computed from operator commutators ``[nabla_i, P] = d_i P + [calA_i, P]``.
    """
    calA, phi = covariant_fields(psi.x, eta)
    D = psi.D
    cov = lambda i, p: partial(p, i) + _comm(calA[i], p)
    curv = [[partial(calA[k], j) - partial(calA[j], k) + _comm(calA[j], calA[k])
             for k in range(D)] for j in range(D)]
    zero = Poly.zero(D, psi.dim)
    first, second = [], []
    for k in range(D):
        e1, e2 = zero, zero
        for i in range(D):
            for j in range(D):
                g = eta[i, j]
                if not g:
                    continue
                lhs1 = cov(i, curv[j][k])
                rhs1 = _comm(cov(k, phi[i]), phi[j])
                lhs2 = cov(i, cov(j, phi[k]))
                rhs2 = _comm(phi[i], _comm(phi[j], phi[k]))
                e1 = e1 + (lhs1 - rhs1).scale(g)
                e2 = e2 + (lhs2 - rhs2).scale(g)
        first.append(e1)
        second.append(e2)
    return first, second


def residual_combinations(res: LightElement, eta: Eta) -> tuple[list[Poly], list[Poly]]:
    """``(R_B + R_A♭, R_B - R_A♭)`` from the section part of an MC residual."""
    flat = lower_index(res.x2.vec, eta)
    form = res.x2.form
    D = res.D
    return ([form[k] + flat[k] for k in range(D)], [form[k] - flat[k] for k in range(D)])


# Constant recombination: covariant residuals = RECOMBINATION * (R_B + R_A♭, R_B - R_A♭).
# Fixed by fit_recombination on a random sl(2) field and asserted on every trial.
RECOMBINATION = (Fraction(1, 2), Fraction(1, 2))


def recombination_defect(psi: MCField, eta: Eta,
                         weights: Sequence[Fraction] = RECOMBINATION,
                         cal: SignCalibration = DEFAULT) -> list[Poly]:
    """Componentwise difference between covariant residuals and the recombined MC residual."""
    res = mc_residual(psi, eta, cal)
    plus, minus = residual_combinations(res, eta)
    e1, e2 = covariant_ym_residual(psi, eta)
    out = [e1[k] - plus[k].scale(weights[0]) for k in range(psi.D)]
    out += [e2[k] - minus[k].scale(weights[1]) for k in range(psi.D)]
    out.append(res.v2)
    return out


def fit_recombination(psi: MCField, eta: Eta, cal: SignCalibration = DEFAULT) -> Optional[tuple]:
    """Find constants ``(c1, c2)`` with ``E1 = c1 (R_B + R_A♭)`` and ``E2 = c2 (R_B - R_A♭)``.

    Returns None if no such constants exist for this field. An entry is None
    when that residual vanishes identically, leaving its constant undetermined.
    """
    res = mc_residual(psi, eta, cal)
    plus, minus = residual_combinations(res, eta)
    e1, e2 = covariant_ym_residual(psi, eta)
    out = []
    for lhs, rhs in ((e1, plus), (e2, minus)):
        ratio = None
        for k in range(psi.D):
            keys = set(lhs[k].terms) | set(rhs[k].terms)
            for key in keys:
                a, b = lhs[k].coeff(key), rhs[k].coeff(key)
                for x, y in zip(a.entries, b.entries):
                    if y == 0:
                        if x != 0:
                            return None
                        continue
                    r = x / y
                    if ratio is None:
                        ratio = r
                    elif r != ratio:
                        return None
        out.append(ratio)
    return tuple(out)


# --- constant-field reduction ------------------------------------------------------

def heisenberg_ym_residual(fields: Sequence[MatCoeff], metric: Sequence[Sequence]) -> list[MatCoeff]:
    """``residual_k = sum_ij g^{ij} [A_i, [A_j, A_k]]``."""
    D = len(fields)
    g = Eta(metric)
    out = []
    for k in range(D):
        acc = MatCoeff.zero(fields[0].dim)
        for i in range(D):
            for j in range(D):
                if g[i, j]:
                    acc = acc + commutator(fields[i], commutator(fields[j], fields[k])).scale(g[i, j])
        out.append(acc)
    return out


def constant_pure_a_field(fields: Sequence[MatCoeff], eta: Eta, phi_zero: bool = False) -> MCField:
    """Constant ``A^i = fields[i]``; ``B = 0``, or ``B_i = sum_j eta_{ij} A^j`` when ``phi_zero``."""
    D, n = len(fields), fields[0].dim
    vec = VecField(tuple(Poly.constant(f, D, n) for f in fields))
    form = lower_index(vec, eta) if phi_zero else OneForm.zero(D, n)
    return MCField.with_eliminated_v(GenSection(vec, form), eta)


# --- three-subcomplex decomposition -------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Coordinates in the three subcomplexes.

    First: ``u -> b1 -> c1 -> w3`` with differentials ``d``, Maxwell, ``-div̂``.
    Second: ``b2 -> c2`` with ``Δ``. Third: ``v -> w`` with the identity.
    """
    u: Poly
    b1: OneForm
    c1: OneForm
    w3: Poly
    b2: OneForm
    c2: OneForm
    v: Poly
    w: Poly

    @classmethod
    def zero(cls, D: int, dim: int = 1) -> "Decomposition":
        z, f = Poly.zero(D, dim), OneForm.zero(D, dim)
        return cls(z, f, f, z, f, f, z, z)

    def is_zero(self) -> bool:
        return all(getattr(self, n).is_zero() for n in self.__dataclass_fields__)

    def __sub__(self, other: "Decomposition") -> "Decomposition":
        return Decomposition(*(getattr(self, n) - getattr(other, n) for n in self.__dataclass_fields__))

    def labeled(self) -> dict[str, dict[str, object]]:
        return {"first": {"u": self.u, "b1": self.b1, "c1": self.c1, "w3": self.w3},
                "second": {"b2": self.b2, "c2": self.c2},
                "third": {"v": self.v, "w": self.w}}


def maxwell(b: OneForm, eta: Eta) -> OneForm:
    """``M(B)_k = sum eta^{ij} d_i (d_j B_k - d_k B_j)``."""
    D = b.D
    return OneForm(tuple(laplacian(b[k], eta) - partial(div_hat(b, eta), k) for k in range(D)))


def embed(d: Decomposition, eta: Eta) -> LightElement:
    """``f1(B) = B + B* - div̂ B``, ``f2(B) = B - B*``, ``f3 = id``,
    ``g1 = B + B*``, ``g2 = B - B*``, ``g3(w) = w + dw + d̂w``."""
    _require_invertible_symmetric(eta)
    x1 = GenSection(raise_index(d.b1, eta) - raise_index(d.b2, eta), d.b1 + d.b2)
    v1 = d.v - div_hat(d.b1, eta)
    x2 = GenSection(raise_index(d.c1, eta) - raise_index(d.c2, eta) + grad_hat(d.w, eta),
                    d.c1 + d.c2 + exterior_d(d.w))
    return LightElement(d.u, x1, v1, x2, d.w, d.w3)


def decompose(a: LightElement, eta: Eta) -> Decomposition:
    """Inverse of :func:`embed`."""
    _require_invertible_symmetric(eta)
    flat1 = lower_index(a.x1.vec, eta)
    b1 = (a.x1.form + flat1).scale(HALF)
    b2 = (a.x1.form - flat1).scale(HALF)
    v = a.v1 + div_hat(b1, eta)
    w = a.v2
    flat2 = lower_index(a.x2.vec, eta)
    c1 = (a.x2.form + flat2).scale(HALF) - exterior_d(w)
    c2 = (a.x2.form - flat2).scale(HALF)
    return Decomposition(a.u, b1, c1, a.u3, b2, c2, v, w)


def decomposed_differential(d: Decomposition, eta: Eta) -> Decomposition:
    """The block differential the embedding intertwines with ``Q^eta``."""
    D, dim = d.u.num_vars, d.u.dim
    z, f = Poly.zero(D, dim), OneForm.zero(D, dim)
    return Decomposition(
        u=z, b1=exterior_d(d.u), c1=maxwell(d.b1, eta), w3=-div_hat(d.c1, eta),
        b2=f, c2=d.b2.map(lambda p: laplacian(p, eta)),
        v=z, w=d.v)
