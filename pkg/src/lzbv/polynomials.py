"""Sparse exact multivariate polynomials with matrix coefficients.

Formal power series in the coordinates are truncated to polynomials: every
operation used here (products, derivatives, contractions with constant
tensors) maps polynomials to polynomials, so identities are checked with no
truncation error.

Variables are indexed from 0. Coefficients multiply in the order the
operands are written, so ``p * q`` and ``q * p`` differ once the
coefficient dimension exceeds one.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .scalars import DimensionError, MatCoeff, Scalar, mat_mul

Exps = tuple[int, ...]


def term_key(exps: Exps):
    """Canonical order: total degree, then lexicographic by variable index."""
    return (sum(exps), tuple(-e for e in exps))


class Poly:
    __slots__ = ("num_vars", "dim", "terms", "_hash")

    def __init__(self, num_vars: int, dim: int = 1,
                 terms: Union[Mapping[Exps, MatCoeff], Iterable[tuple[Exps, MatCoeff]], None] = None):
        self.num_vars = num_vars
        self.dim = dim
        self._hash = None
        clean: dict[Exps, MatCoeff] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exps, c in items:
                exps = tuple(exps)
                if len(exps) != num_vars or any(e < 0 for e in exps):
                    raise DimensionError(f"bad exponent vector {exps} for {num_vars} variables")
                if not isinstance(c, MatCoeff):
                    c = MatCoeff.scalar(c, dim)
                if c.dim != dim:
                    raise DimensionError(f"coefficient dim {c.dim} != {dim}")
                prev = clean.get(exps)
                c = c if prev is None else prev + c
                if c.is_zero():
                    clean.pop(exps, None)
                else:
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def _raw(cls, num_vars: int, dim: int, terms: dict) -> "Poly":
        obj = object.__new__(cls)
        obj.num_vars = num_vars
        obj.dim = dim
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, num_vars: int, dim: int = 1) -> "Poly":
        return cls._raw(num_vars, dim, {})

    @classmethod
    def constant(cls, c: Union[Scalar, MatCoeff], num_vars: int, dim: int = 1) -> "Poly":
        return cls(num_vars, dim, {(0,) * num_vars: c})

    @classmethod
    def var(cls, i: int, num_vars: int, dim: int = 1) -> "Poly":
        if not 0 <= i < num_vars:
            raise IndexError(f"variable index {i} out of range for {num_vars} variables")
        exps = tuple(1 if k == i else 0 for k in range(num_vars))
        return cls(num_vars, dim, {exps: MatCoeff.identity(dim)})

    @classmethod
    def monomial(cls, exps: Exps, c: Union[Scalar, MatCoeff], dim: int = 1) -> "Poly":
        return cls(len(exps), dim, {tuple(exps): c})

    # queries ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeff(self, exps: Exps) -> MatCoeff:
        return self.terms.get(tuple(exps), MatCoeff.zero(self.dim))

    def sorted_terms(self) -> list[tuple[Exps, MatCoeff]]:
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]))

    def _check(self, other: "Poly") -> None:
        if self.num_vars != other.num_vars or self.dim != other.dim:
            raise DimensionError(
                f"polynomial spaces differ: (D={self.num_vars}, n={self.dim}) vs "
                f"(D={other.num_vars}, n={other.dim})")

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        return Poly._raw(self.num_vars, self.dim, out)

    def __neg__(self) -> "Poly":
        return Poly._raw(self.num_vars, self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.num_vars, self.dim)
        if c == 1:
            return self
        return Poly._raw(self.num_vars, self.dim, {e: v.scale(c) for e, v in self.terms.items()})

    def lmul(self, m: MatCoeff) -> "Poly":
        """Constant matrix times ``self`` (matrix on the left)."""
        return poly_mul(Poly.constant(m, self.num_vars, self.dim), self)

    def rmul(self, m: MatCoeff) -> "Poly":
        """``self`` times a constant matrix (matrix on the right)."""
        return poly_mul(self, Poly.constant(m, self.num_vars, self.dim))

    def __mul__(self, other):
        if isinstance(other, Poly):
            return poly_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.num_vars == other.num_vars and self.dim == other.dim
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num_vars, self.dim, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"

    # serialization ----------------------------------------------------------
    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict], num_vars: int, dim: int = 1) -> "Poly":
        terms = []
        for t in data:
            c = MatCoeff.from_json(t["coeff"])
            if c.dim == 1 and dim > 1:
                c = MatCoeff.scalar(c.entries[0], dim)
            terms.append((tuple(t["exps"]), c))
        return cls(num_vars, dim, terms)


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Exact product; coefficients multiply as ``coeff(p) @ coeff(q)``."""
    p._check(q)
    if not p.terms or not q.terms:
        return Poly.zero(p.num_vars, p.dim)
    out: dict[Exps, MatCoeff] = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            c = mat_mul(c1, c2)
            prev = out.get(e)
            out[e] = c if prev is None else prev + c
    return Poly._raw(p.num_vars, p.dim, {e: c for e, c in out.items() if not c.is_zero()})


def partial(p: Poly, i: int) -> Poly:
    """Formal partial derivative with respect to variable ``i`` (0-based)."""
    if not 0 <= i < p.num_vars:
        raise IndexError(f"direction {i} out of range for {p.num_vars} variables")
    out = {}
    for e, c in p.terms.items():
        k = e[i]
        if k:
            ne = e[:i] + (k - 1,) + e[i + 1:]
            out[ne] = c.scale(k)
    return Poly._raw(p.num_vars, p.dim, out)


def format_poly(p: Poly, names: Union[list[str], None] = None) -> str:
    """Human-readable rendering in canonical term order."""
    if p.is_zero():
        return "0"
    names = names or [f"x{k + 1}" for k in range(p.num_vars)]
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if c.dim == 1:
            cs = str(c.entries[0])
            if mono and cs in ("1", "-1"):
                parts.append(("-" if cs == "-1" else "") + mono)
            else:
                parts.append(cs + ("*" + mono if mono else ""))
        else:
            cs = "[" + ";".join(",".join(str(x) for x in r) for r in c.rows()) + "]"
            parts.append(cs + ("*" + mono if mono else ""))
    return " + ".join(parts).replace("+ -", "- ")
