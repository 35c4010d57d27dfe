"""Exact rationals and the square-matrix coefficient algebra.

Rationals are :class:`fractions.Fraction`. ``MatCoeff`` is an immutable
n x n matrix over them; ``n == 1`` recovers commutative scalars. Lie
algebras are always handled through a faithful matrix representation, so
the Lie bracket is the plain commutator.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


class DimensionError(ValueError):
    """Raised when operands live in incompatible spaces."""


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int. Floats and decimal strings are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise TypeError(f"refusing inexact value {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if not _RATIONAL.fullmatch(s):
        raise ValueError(f"not a rational of the form p/q: {text!r}")
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class MatCoeff:
    """Immutable ``dim x dim`` matrix of Fractions, row-major."""

    __slots__ = ("dim", "entries", "_hash")

    def __init__(self, dim: int, entries: Iterable[Scalar]):
        entries = tuple(Fraction(e) for e in entries)
        if dim < 1 or len(entries) != dim * dim:
            raise DimensionError(f"need {dim * dim} entries for dim {dim}, got {len(entries)}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MatCoeff is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def _raw(cls, dim: int, entries: tuple) -> "MatCoeff":
        # trusted fast path: entries already a tuple of Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "entries", entries)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def scalar(cls, value: Scalar, dim: int = 1) -> "MatCoeff":
        v = Fraction(value)
        zero = Fraction(0)
        return cls._raw(dim, tuple(v if i == j else zero for i in range(dim) for j in range(dim)))

    @classmethod
    def zero(cls, dim: int = 1) -> "MatCoeff":
        return cls.scalar(0, dim)

    @classmethod
    def identity(cls, dim: int = 1) -> "MatCoeff":
        return cls.scalar(1, dim)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[Scalar, str]]]) -> "MatCoeff":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square")
        return cls(n, [parse_rational(x) for r in rows for x in r])

    # queries ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.entries)

    def rows(self) -> list[list[Fraction]]:
        n = self.dim
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.dim + j]

    def _check(self, other: "MatCoeff") -> None:
        if self.dim != other.dim:
            raise DimensionError(f"coefficient dims differ: {self.dim} vs {other.dim}")

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: "MatCoeff") -> "MatCoeff":
        if not isinstance(other, MatCoeff):
            return NotImplemented
        self._check(other)
        return MatCoeff._raw(self.dim, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "MatCoeff") -> "MatCoeff":
        if not isinstance(other, MatCoeff):
            return NotImplemented
        self._check(other)
        return MatCoeff._raw(self.dim, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "MatCoeff":
        return MatCoeff._raw(self.dim, tuple(-a for a in self.entries))

    def scale(self, c: Scalar) -> "MatCoeff":
        c = Fraction(c)
        return MatCoeff._raw(self.dim, tuple(c * a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, MatCoeff):
            return mat_mul(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatCoeff):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.dim, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        if self.dim == 1:
            return f"MatCoeff({format_rational(self.entries[0])})"
        return f"MatCoeff({[[format_rational(x) for x in r] for r in self.rows()]})"

    def to_json(self):
        """Nested row-major lists of ``"p/q"`` strings."""
        return [[format_rational(x) for x in r] for r in self.rows()]

    @classmethod
    def from_json(cls, data) -> "MatCoeff":
        if isinstance(data, (str, int)):
            return cls.scalar(parse_rational(data))
        return cls.from_rows(data)


def mat_mul(a: MatCoeff, b: MatCoeff) -> MatCoeff:
    """Exact matrix product ``a @ b``."""
    a._check(b)
    n = a.dim
    if n == 1:
        return MatCoeff._raw(1, (a.entries[0] * b.entries[0],))
    ae, be = a.entries, b.entries
    out = []
    for i in range(n):
        row = ae[i * n:(i + 1) * n]
        for j in range(n):
            s = Fraction(0)
            for k in range(n):
                x = row[k]
                if x:
                    y = be[k * n + j]
                    if y:
                        s += x * y
            out.append(s)
    return MatCoeff._raw(n, tuple(out))


def commutator(a: MatCoeff, b: MatCoeff) -> MatCoeff:
    """``ab - ba``."""
    return mat_mul(a, b) - mat_mul(b, a)


def sl2_basis() -> dict[str, MatCoeff]:
    """Defining representation of sl(2): e, f, h with [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    return {
        "e": MatCoeff.from_rows([[0, 1], [0, 0]]),
        "f": MatCoeff.from_rows([[0, 0], [1, 0]]),
        "h": MatCoeff.from_rows([[1, 0], [0, -1]]),
    }
