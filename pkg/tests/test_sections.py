"""Exterior calculus on polynomial sections and the Courant structure."""
from fractions import Fraction

import pytest
from hypothesis import given

from lzbv.scalars import DimensionError
from lzbv.sections import (Eta, GenSection, OneForm, VecField, div_hat, divergence, dorfman,
                           exterior_d, grad_hat, interior_d, laplacian, lie_derivative, lower_index,
                           pairing, raise_index)

from conftest import C, P, form, polys, sections, vec, x

I2 = Eta.identity(2)
SWAP = Eta([[0, 1], [1, 0]])


def test_exterior_d_examples():
    assert exterior_d(x(1, 1)) == OneForm((C(1, 1),))
    assert exterior_d(C(5, 2)).is_zero()
    assert exterior_d(P(2, {(1, 1): 1})) == OneForm((x(2, 2), x(1, 2)))


def test_divergence_examples():
    assert divergence(VecField((P(1, {(2,): 1}),))) == P(1, {(1,): 2})
    assert divergence(VecField.coordinate(0, 1)).is_zero()
    # volume form e^phi with phi = x: div_phi A = div A + A(phi)
    assert divergence(VecField((P(1, {(2,): 1}),)), x(1, 1)) == P(1, {(1,): 2, (2,): 1})


def test_lie_derivative_examples():
    xd = VecField((x(1, 1),))
    assert lie_derivative(xd, P(1, {(2,): 1})) == P(1, {(2,): 2})
    assert lie_derivative(xd, VecField.coordinate(0, 1)) == VecField((C(-1, 1),))
    assert lie_derivative(VecField.coordinate(0, 2), OneForm((x(2, 2), C(0, 2)))).is_zero()


def test_lie_derivative_rejects_other_types():
    with pytest.raises(TypeError):
        lie_derivative(VecField.coordinate(0, 1), 3)


def test_dorfman_examples():
    assert dorfman(vec(x(1, 1)), vec(C(1, 1))) == vec(C(-1, 1))
    # [DERIVED] -i_{d1} d(x2 dx1) = +dx2
    assert dorfman(form(x(2, 2), C(0, 2)), vec(C(1, 2), C(0, 2))) == form(C(0, 2), C(1, 2))
    d1 = vec(C(1, 2), C(0, 2))
    assert dorfman(d1, d1).is_zero()


def test_dorfman_rejects_matrix_coefficients():
    s = vec(x(1, 1, dim=2))
    with pytest.raises(DimensionError):
        dorfman(s, s)


def test_pairing_examples():
    assert pairing(vec(C(1, 1)), form(C(1, 1))) == C(1, 1)
    assert pairing(vec(x(1, 1)), vec(C(3, 1))).is_zero()
    assert pairing(vec(P(1, {(2,): 1})), form(x(1, 1))) == P(1, {(3,): 1})


def test_laplacian_examples():
    assert laplacian(P(2, {(2, 0): 1, (1, 1): 1}), I2) == C(2, 2)
    assert laplacian(x(1, 2), SWAP).is_zero()
    assert laplacian(P(2, {(1, 1): 1}), SWAP) == C(2, 2)


def test_grad_hat_examples():
    assert grad_hat(x(1, 2), I2) == VecField.coordinate(0, 2)
    assert grad_hat(C(4, 2), I2).is_zero()
    assert grad_hat(x(2, 2), SWAP) == VecField.coordinate(0, 2)


def test_div_hat_examples():
    assert div_hat(OneForm((x(1, 2), C(0, 2))), I2) == C(1, 2)
    assert div_hat(OneForm.coordinate(0, 2), I2).is_zero()
    assert div_hat(OneForm((x(2, 2), C(0, 2))), I2).is_zero()


def test_raise_index_examples():
    assert raise_index(OneForm.coordinate(0, 2), I2) == VecField.coordinate(0, 2)
    assert raise_index(OneForm.coordinate(0, 2), Eta([[2, 0], [0, 3]])) == VecField((C(2, 2), C(0, 2)))
    assert raise_index(OneForm((x(2, 2), C(0, 2))), I2) == VecField((x(2, 2), C(0, 2)))


def test_lower_inverts_raise():
    eta = Eta([[2, 1], [1, 3]])
    b = OneForm((x(2, 2), P(2, {(2, 0): Fraction(1, 3)})))
    assert lower_index(raise_index(b, eta), eta) == b


def test_eta_inverse_and_singular():
    assert Eta([[2, 0], [0, 4]]).inverse == ((Fraction(1, 2), 0), (0, Fraction(1, 4)))
    singular = Eta([[1, 1], [1, 1]])
    assert singular.inverse is None
    with pytest.raises(ValueError):
        lower_index(VecField.coordinate(0, 2), singular)
    with pytest.raises(DimensionError):
        Eta([[1, 0]])


def test_eta_size_mismatch():
    with pytest.raises(DimensionError):
        laplacian(x(1, 2), Eta.identity(3))


@given(sections(2), sections(2), sections(2))
def test_dorfman_leibniz(x1, x2, x3):
    lhs = dorfman(x1, dorfman(x2, x3))
    rhs = dorfman(dorfman(x1, x2), x3) + dorfman(x2, dorfman(x1, x3))
    assert lhs == rhs


@given(sections(2), sections(2), sections(2))
def test_pairing_compatibility(x1, x2, x3):
    assert lie_derivative(x1.vec, pairing(x2, x3)) == pairing(dorfman(x1, x2), x3) + pairing(x2, dorfman(x1, x3))


@given(sections(2), sections(2))
def test_dorfman_symmetric_part_is_exact(x1, x2):
    # [X1,X2] + [X2,X1] = d<X1,X2>
    sym = dorfman(x1, x2) + dorfman(x2, x1)
    assert sym == GenSection.of_form(exterior_d(pairing(x1, x2)))


@given(sections(2))
def test_cartan_formula(s):
    a, b = s.vec, s.form
    from lzbv.sections import contract
    assert lie_derivative(a, b) == interior_d(a, b) + exterior_d(contract(a, b))


@given(polys(2, max_degree=4))
def test_laplacian_is_div_hat_of_d(u):
    eta = Eta([[1, 2], [2, -1]])
    assert laplacian(u, eta) == div_hat(exterior_d(u), eta)
    assert divergence(grad_hat(u, eta)) == laplacian(u, eta)
