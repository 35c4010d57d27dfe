from __future__ import annotations

import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lzbv.light_complex import LightElement
from lzbv.polynomials import Poly
from lzbv.scalars import MatCoeff
from lzbv.sections import GenSection, OneForm, VecField

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def P(D: int, terms: dict, dim: int = 1) -> Poly:
    """``P(2, {(1, 0): 3})`` is ``3 x1`` in two variables."""
    return Poly(D, dim, terms)


def C(c, D: int, dim: int = 1) -> Poly:
    return Poly.constant(c, D, dim)


def x(i: int, D: int, dim: int = 1) -> Poly:
    """Coordinate ``x_i`` with 1-based ``i``, as written on paper."""
    return Poly.var(i - 1, D, dim)


def vec(*comps: Poly) -> GenSection:
    return GenSection.of_vec(VecField(tuple(comps)))


def form(*comps: Poly) -> GenSection:
    return GenSection.of_form(OneForm(tuple(comps)))


def el(D: int, dim: int = 1, **slots) -> LightElement:
    return LightElement.make(D, dim, **slots)


rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


def matcoeffs(dim: int):
    return st.lists(rationals, min_size=dim * dim, max_size=dim * dim).map(lambda e: MatCoeff(dim, e))


def polys(D: int, dim: int = 1, max_degree: int = 3, max_terms: int = 3):
    exps = st.lists(st.integers(0, max_degree), min_size=D, max_size=D).map(tuple)
    return st.dictionaries(exps, matcoeffs(dim), max_size=max_terms).map(lambda t: Poly(D, dim, t))


def sections(D: int, dim: int = 1, max_degree: int = 2):
    comps = st.lists(polys(D, dim, max_degree, 2), min_size=D, max_size=D).map(tuple)
    return st.builds(lambda a, b: GenSection(VecField(a), OneForm(b)), comps, comps)


@pytest.fixture
def sl2():
    from lzbv.scalars import sl2_basis
    return sl2_basis()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        name, ok, detail = results[n]
        terminalreporter.write_line(f"ACCEPTANCE {n} {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
