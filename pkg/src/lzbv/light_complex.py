"""The six-slot light-mode complex and its differentials Q, b0, R^eta.

Slots and ghost numbers::

    u (0)   x1 (1)   v1 (1)   x2 (2)   v2 (2)   u3 (3)

``x1``/``x2`` hold generalized sections (weight-one states), the other slots
hold functions. Ghost factors are implicit in the slot name.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .calibration import DEFAULT, SignCalibration
from .polynomials import Poly, partial
from .sections import (Eta, GenSection, OneForm, VecField, divergence, exterior_d,
                       laplacian, grad_hat, div_hat)
from .scalars import DimensionError

HALF = Fraction(1, 2)
SLOTS = ("u", "x1", "v1", "x2", "v2", "u3")
GHOST = {"u": 0, "x1": 1, "v1": 1, "x2": 2, "v2": 2, "u3": 3}
SECTION_SLOTS = ("x1", "x2")


@dataclass(frozen=True)
class LightElement:
    u: Poly
    x1: GenSection
    v1: Poly
    x2: GenSection
    v2: Poly
    u3: Poly

    def __post_init__(self):
        D, dim = self.u.num_vars, self.u.dim
        for name in SLOTS:
            val = getattr(self, name)
            vd = val.D if isinstance(val, GenSection) else val.num_vars
            if vd != D or val.dim != dim:
                raise DimensionError(f"slot {name} is in (D={vd}, n={val.dim}), expected (D={D}, n={dim})")

    @property
    def D(self) -> int:
        return self.u.num_vars

    @property
    def dim(self) -> int:
        return self.u.dim

    @classmethod
    def zero(cls, D: int, dim: int = 1) -> "LightElement":
        z = Poly.zero(D, dim)
        s = GenSection.zero(D, dim)
        return cls(z, s, z, s, z, z)

    @classmethod
    def make(cls, D: int, dim: int = 1, **slots) -> "LightElement":
        """Zero element with the given slots filled in."""
        unknown = set(slots) - set(SLOTS)
        if unknown:
            raise KeyError(f"unknown slots {sorted(unknown)}")
        z = cls.zero(D, dim)
        return cls(**{n: slots.get(n, getattr(z, n)) for n in SLOTS})

    def is_zero(self) -> bool:
        return all(getattr(self, n).is_zero() for n in SLOTS)

    def nonzero_slots(self) -> list[str]:
        return [n for n in SLOTS if not getattr(self, n).is_zero()]

    def part(self, degree: int) -> "LightElement":
        """Ghost-degree-``degree`` component."""
        return LightElement.make(self.D, self.dim,
                                 **{n: getattr(self, n) for n in SLOTS if GHOST[n] == degree})

    def parts(self) -> list[tuple[int, "LightElement"]]:
        out = []
        for k in range(4):
            p = self.part(k)
            if not p.is_zero():
                out.append((k, p))
        return out

    def ghost_degree(self) -> Optional[int]:
        """Degree of a homogeneous element; None for zero; error if mixed."""
        degs = {GHOST[n] for n in self.nonzero_slots()}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not ghost-homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def _zip(self, other: "LightElement", op) -> "LightElement":
        return LightElement(*(op(getattr(self, n), getattr(other, n)) for n in SLOTS))

    def __add__(self, other: "LightElement") -> "LightElement":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "LightElement") -> "LightElement":
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> "LightElement":
        return LightElement(*(-getattr(self, n) for n in SLOTS))

    def scale(self, c) -> "LightElement":
        return LightElement(*(getattr(self, n).scale(c) for n in SLOTS))

    def map_polys(self, f: Callable[[Poly], Poly]) -> "LightElement":
        out = []
        for n in SLOTS:
            val = getattr(self, n)
            out.append(val.map(f) if isinstance(val, GenSection) else f(val))
        return LightElement(*out)

    def derivative(self, i: int) -> "LightElement":
        return self.map_polys(lambda p: partial(p, i))

    def to_json(self) -> dict:
        out = {}
        for n in SLOTS:
            val = getattr(self, n)
            if isinstance(val, GenSection):
                out[n] = {"vector": [c.to_json() for c in val.vec.components],
                          "oneform": [c.to_json() for c in val.form.components]}
            else:
                out[n] = val.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict, D: int, dim: int = 1) -> "LightElement":
        slots = {}
        for n in SLOTS:
            if n not in data:
                continue
            if n in SECTION_SLOTS:
                vec = VecField(tuple(Poly.from_json(t, D, dim) for t in data[n]["vector"]))
                form = OneForm(tuple(Poly.from_json(t, D, dim) for t in data[n]["oneform"]))
                slots[n] = GenSection(vec, form)
            else:
                slots[n] = Poly.from_json(data[n], D, dim)
        return cls.make(D, dim, **slots)


def sum_elements(items, D: int, dim: int) -> LightElement:
    out = LightElement.zero(D, dim)
    for x in items:
        out = out + x
    return out


def apply_Q(a: LightElement, cal: SignCalibration = DEFAULT) -> LightElement:
    """BRST differential on light modes."""
    D, dim = a.D, a.dim
    x1 = GenSection.of_form(exterior_d(a.u))
    x2 = GenSection.of_form(exterior_d(a.v1))
    v2 = divergence(a.x1.vec).scale(HALF) + a.v1.scale(cal.q_v_to_vtilde)
    u3 = divergence(a.x2.vec).scale(-HALF)
    return LightElement.make(D, dim, x1=x1, x2=x2, v2=v2, u3=u3)


def apply_b0(a: LightElement) -> LightElement:
    """Quasiclassical b0: v1 -> u, x2 -> -x1, u3 -> -v2."""
    return LightElement.make(a.D, a.dim, u=a.v1, x1=-a.x2, v2=-a.u3)


def apply_R_eta(a: LightElement, eta: Eta) -> LightElement:
    """Flat-background deformation sum_ij eta^{ij} mu0(f_i, {f_j, .}).

    Index placement follows that definition: the gradient is
    ``(grad u)^i = sum_j eta^{ij} d_j u``, i.e. the hatted operators with the
    transposed tensor. The two agree for symmetric eta.
    """
    D, dim = a.D, a.dim
    et = eta.transpose()
    x1 = GenSection.of_vec(grad_hat(a.u, et))
    v1 = -laplacian(a.u, eta)
    lap = lambda p: laplacian(p, eta)
    x2 = a.x1.map(lap) + GenSection.of_vec(grad_hat(a.v1, et))
    v2 = div_hat(a.x1.form, et).scale(HALF)
    u3 = laplacian(a.v2, eta) - div_hat(a.x2.form, et).scale(HALF)
    return LightElement.make(D, dim, x1=x1, v1=v1, x2=x2, v2=v2, u3=u3)


def apply_Q_eta(a: LightElement, eta: Eta, cal: SignCalibration = DEFAULT) -> LightElement:
    return apply_Q(a, cal) + apply_R_eta(a, eta)
