"""Functions, vector fields, one-forms and generalized sections over flat space.

Functions are plain :class:`~lzbv.polynomials.Poly` values (``Fun`` is an
alias). Direction indices are 0-based throughout. Every bilinear operation
multiplies coefficients with the first operand's factor on the left.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .polynomials import Poly, partial, poly_mul
from .scalars import DimensionError, parse_rational

Fun = Poly


def _sum(polys, num_vars: int, dim: int) -> Poly:
    out = Poly.zero(num_vars, dim)
    for p in polys:
        out = out + p
    return out


@dataclass(frozen=True)
class VecField:
    """Contravariant components ``A^i``."""
    components: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        _check_components(self.components)

    @property
    def D(self) -> int:
        return len(self.components)

    @property
    def dim(self) -> int:
        return self.components[0].dim

    @classmethod
    def zero(cls, D: int, dim: int = 1) -> "VecField":
        return cls(tuple(Poly.zero(D, dim) for _ in range(D)))

    @classmethod
    def coordinate(cls, i: int, D: int, dim: int = 1) -> "VecField":
        """The constant field ``∂_i``."""
        return cls(tuple(Poly.constant(1 if k == i else 0, D, dim) for k in range(D)))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __add__(self, other: "VecField") -> "VecField":
        return VecField(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "VecField") -> "VecField":
        return VecField(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "VecField":
        return VecField(tuple(-a for a in self.components))

    def scale(self, c) -> "VecField":
        return VecField(tuple(a.scale(c) for a in self.components))

    def map(self, f) -> "VecField":
        return VecField(tuple(f(a) for a in self.components))


@dataclass(frozen=True)
class OneForm:
    """Covariant components ``B_j``."""
    components: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        _check_components(self.components)

    @property
    def D(self) -> int:
        return len(self.components)

    @property
    def dim(self) -> int:
        return self.components[0].dim

    @classmethod
    def zero(cls, D: int, dim: int = 1) -> "OneForm":
        return cls(tuple(Poly.zero(D, dim) for _ in range(D)))

    @classmethod
    def coordinate(cls, i: int, D: int, dim: int = 1) -> "OneForm":
        """The constant form ``dx_i``."""
        return cls(tuple(Poly.constant(1 if k == i else 0, D, dim) for k in range(D)))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __getitem__(self, i: int) -> Poly:
        return self.components[i]

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "OneForm":
        return OneForm(tuple(-a for a in self.components))

    def scale(self, c) -> "OneForm":
        return OneForm(tuple(a.scale(c) for a in self.components))

    def map(self, f) -> "OneForm":
        return OneForm(tuple(f(a) for a in self.components))


def _check_components(comps: Sequence[Poly]) -> None:
    if not comps:
        raise DimensionError("a section needs at least one component")
    D, dim = len(comps), comps[0].dim
    for c in comps:
        if c.num_vars != D or c.dim != dim:
            raise DimensionError(f"component in (D={c.num_vars}, n={c.dim}), expected (D={D}, n={dim})")


@dataclass(frozen=True)
class GenSection:
    """A generalized section ``(A, B)`` of TM ⊕ T*M."""
    vec: VecField
    form: OneForm

    def __post_init__(self):
        if self.vec.D != self.form.D or self.vec.dim != self.form.dim:
            raise DimensionError("vector and form parts live in different spaces")

    @property
    def D(self) -> int:
        return self.vec.D

    @property
    def dim(self) -> int:
        return self.vec.dim

    @classmethod
    def zero(cls, D: int, dim: int = 1) -> "GenSection":
        return cls(VecField.zero(D, dim), OneForm.zero(D, dim))

    @classmethod
    def of_vec(cls, a: VecField) -> "GenSection":
        return cls(a, OneForm.zero(a.D, a.dim))

    @classmethod
    def of_form(cls, b: OneForm) -> "GenSection":
        return cls(VecField.zero(b.D, b.dim), b)

    def is_zero(self) -> bool:
        return self.vec.is_zero() and self.form.is_zero()

    def __add__(self, other: "GenSection") -> "GenSection":
        return GenSection(self.vec + other.vec, self.form + other.form)

    def __sub__(self, other: "GenSection") -> "GenSection":
        return GenSection(self.vec - other.vec, self.form - other.form)

    def __neg__(self) -> "GenSection":
        return GenSection(-self.vec, -self.form)

    def scale(self, c) -> "GenSection":
        return GenSection(self.vec.scale(c), self.form.scale(c))

    def map(self, f) -> "GenSection":
        return GenSection(self.vec.map(f), self.form.map(f))


class Eta:
    """Constant tensor ``η^{ij}`` with an optional exact inverse ``η_{ij}``."""

    def __init__(self, entries: Sequence[Sequence[Union[int, str, Fraction]]]):
        rows = tuple(tuple(parse_rational(x) for x in r) for r in entries)
        D = len(rows)
        if D == 0 or any(len(r) != D for r in rows):
            raise DimensionError("eta must be a square, non-empty grid")
        self.entries = rows
        self.D = D
        self.symmetric = all(rows[i][j] == rows[j][i] for i in range(D) for j in range(D))
        self._inverse: Optional[tuple] = None
        self._inverse_done = False

    @classmethod
    def identity(cls, D: int) -> "Eta":
        return cls([[1 if i == j else 0 for j in range(D)] for i in range(D)])

    @classmethod
    def zero(cls, D: int) -> "Eta":
        return cls([[0] * D for _ in range(D)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entries[ij[0]][ij[1]]

    def transpose(self) -> "Eta":
        return Eta([[self.entries[j][i] for j in range(self.D)] for i in range(self.D)])

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    @property
    def inverse(self) -> Optional[tuple[tuple[Fraction, ...], ...]]:
        """Exact inverse grid, or None when singular."""
        if not self._inverse_done:
            import sympy
            m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r]
                              for r in self.entries])
            if m.det() != 0:
                inv = m.inv()
                self._inverse = tuple(
                    tuple(Fraction(int(sympy.fraction(inv[i, j])[0]), int(sympy.fraction(inv[i, j])[1]))
                          for j in range(self.D)) for i in range(self.D))
            self._inverse_done = True
        return self._inverse

    def require_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        inv = self.inverse
        if inv is None:
            raise ValueError("eta is not invertible")
        return inv

    def to_json(self) -> list[list[str]]:
        from .scalars import format_rational
        return [[format_rational(x) for x in r] for r in self.entries]

    def __eq__(self, other) -> bool:
        return isinstance(other, Eta) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Eta({self.to_json()})"


# --- differential operators -------------------------------------------------

def exterior_d(u: Poly) -> OneForm:
    return OneForm(tuple(partial(u, i) for i in range(u.num_vars)))


def divergence(a: VecField, phi: Optional[Poly] = None) -> Poly:
    """``Σ ∂_i A^i``, or the volume-weighted ``Σ (∂_i A^i + ∂_i φ A^i)``."""
    out = _sum((partial(a[i], i) for i in range(a.D)), a.D, a.dim)
    if phi is not None:
        out = out + _sum((poly_mul(partial(phi, i), a[i]) for i in range(a.D)), a.D, a.dim)
    return out


def contract(a: VecField, b: OneForm) -> Poly:
    """``Σ A^i B_i`` in written order."""
    return _sum((poly_mul(a[i], b[i]) for i in range(a.D)), a.D, a.dim)


def contract_fb(b: OneForm, a: VecField) -> Poly:
    """``Σ B_i A^i`` in written order."""
    return _sum((poly_mul(b[i], a[i]) for i in range(a.D)), a.D, a.dim)


def directional(a: VecField, u: Poly) -> Poly:
    """``Σ A^i ∂_i u`` (the Lie derivative of a function)."""
    return _sum((poly_mul(a[i], partial(u, i)) for i in range(a.D)), a.D, a.dim)


def lie_derivative(a: VecField, target):
    if isinstance(target, Poly):
        return directional(a, target)
    if isinstance(target, VecField):
        return VecField(tuple(
            directional(a, target[j])
            - _sum((poly_mul(partial(a[j], i), target[i]) for i in range(a.D)), a.D, a.dim)
            for j in range(a.D)))
    if isinstance(target, OneForm):
        # Cartan: i_a d b + d(i_a b), operand order kept
        return OneForm(tuple(
            directional(a, target[j])
            + _sum((poly_mul(partial(a[i], j), target[i]) for i in range(a.D)), a.D, a.dim)
            for j in range(a.D)))
    raise TypeError(f"cannot take a Lie derivative of {type(target).__name__}")


def interior_d(a: VecField, b: OneForm) -> OneForm:
    """``i_a db`` with components ``Σ_i (∂_i b_j − ∂_j b_i) a^i``, ``b``'s factor left."""
    D = a.D
    return OneForm(tuple(
        _sum((poly_mul(partial(b[j], i) - partial(b[i], j), a[i]) for i in range(D)), D, a.dim)
        for j in range(D)))


def _dorfman_ordered(x1: GenSection, x2: GenSection) -> GenSection:
    # same formula as dorfman, with x1's coefficients always on the left
    D, dim = x1.D, x1.dim
    a1, b1, a2, b2 = x1.vec, x1.form, x2.vec, x2.form
    vec = VecField(tuple(
        directional(a1, a2[j])
        - _sum((poly_mul(partial(a1[j], i), a2[i]) for i in range(D)), D, dim)
        for j in range(D)))
    form = OneForm(tuple(
        directional(a1, b2[j])
        + _sum((poly_mul(partial(a1[i], j), b2[i]) for i in range(D)), D, dim)
        - _sum((poly_mul(partial(b1[j], i) - partial(b1[i], j), a2[i]) for i in range(D)), D, dim)
        for j in range(D)))
    return GenSection(vec, form)


def dorfman(x1: GenSection, x2: GenSection) -> GenSection:
    """``(L_{A1} A2, L_{A1} B2 − i_{A2} dB1)`` for commutative coefficients."""
    if x1.dim != 1 or x2.dim != 1:
        raise DimensionError("the Dorfman bracket is only defined for commutative coefficients")
    return _dorfman_ordered(x1, x2)


def pairing(x1: GenSection, x2: GenSection) -> Poly:
    """Natural pairing ``Σ (A1^i B2_i + B1_i A2^i)``."""
    return contract(x1.vec, x2.form) + contract_fb(x1.form, x2.vec)


# --- eta-dependent operators --------------------------------------------------

def _check_eta(eta: Eta, D: int) -> None:
    if eta.D != D:
        raise DimensionError(f"eta has size {eta.D}, sections have D={D}")


def laplacian(u: Poly, eta: Eta) -> Poly:
    """``Σ η^{ij} ∂_i ∂_j u``."""
    _check_eta(eta, u.num_vars)
    D = u.num_vars
    out = Poly.zero(D, u.dim)
    for i in range(D):
        di = partial(u, i)
        for j in range(D):
            if eta[i, j]:
                out = out + partial(di, j).scale(eta[i, j])
    return out


def grad_hat(u: Poly, eta: Eta) -> VecField:
    """``(d̂u)^j = Σ_i η^{ij} ∂_i u``."""
    _check_eta(eta, u.num_vars)
    D = u.num_vars
    du = [partial(u, i) for i in range(D)]
    return VecField(tuple(_sum((du[i].scale(eta[i, j]) for i in range(D) if eta[i, j]), D, u.dim)
                          for j in range(D)))


def div_hat(b: OneForm, eta: Eta) -> Poly:
    """``Σ η^{ij} ∂_i B_j``."""
    _check_eta(eta, b.D)
    D = b.D
    return _sum((partial(b[j], i).scale(eta[i, j]) for i in range(D) for j in range(D) if eta[i, j]),
                D, b.dim)


def raise_index(b: OneForm, eta: Eta) -> VecField:
    """``(B*)^i = Σ_j η^{ij} B_j``."""
    _check_eta(eta, b.D)
    D = b.D
    return VecField(tuple(_sum((b[j].scale(eta[i, j]) for j in range(D) if eta[i, j]), D, b.dim)
                          for i in range(D)))


def lower_index(a: VecField, eta: Eta) -> OneForm:
    """``(A♭)_i = Σ_j η_{ij} A^j`` using the exact inverse of ``eta``."""
    _check_eta(eta, a.D)
    inv = eta.require_inverse()
    D = a.D
    return OneForm(tuple(_sum((a[j].scale(inv[i][j]) for j in range(D) if inv[i][j]), D, a.dim)
                         for i in range(D)))
