from fractions import Fraction

import numpy as np
import pytest
import sympy

from invsurf.errors import (DegenerateInVar, DimensionMismatch,
                            UnsupportedDimension, ZeroDivisor)
from invsurf.exact import RATIONALS
from invsurf.poly import (MPoly, NotDivisible, PolyVectorField, Quotient,
                          char_poly, determinant, divergence, exact_divide,
                          lie_derivative, sylvester_resultant, univariate,
                          variables)

from .conftest import N_RANDOM, random_field, random_fraction, random_poly


def to_sympy(p, syms):
    expr = sympy.Integer(0)
    for exp, c in p.terms.items():
        q = c.rational()
        term = sympy.Rational(q.numerator, q.denominator)
        for s, k in zip(syms, exp):
            term *= s ** k
        expr += term
    return expr


def test_arithmetic_basics():
    x1, x2 = variables(2)
    p = (x1 + x2) ** 2
    assert p == x1 * x1 + 2 * x1 * x2 + x2 * x2
    assert p.degree() == 2
    assert (p - p).is_zero()
    assert p.lead_term()[0] == (2, 0)
    assert p.evaluate([Fraction(1), Fraction(2)]) == 9
    assert p.compose([x2, x1]) == p
    assert [str(t[0]) for t in p.sorted_terms()] == ['(2, 0)', '(1, 1)', '(0, 2)']


def test_grevlex_order():
    x1, x2, x3 = variables(3)
    p = x1 * x3 + x2 * x2 + x1 ** 3
    exps = [e for e, _ in p.sorted_terms()]
    assert exps == [(3, 0, 0), (0, 2, 0), (1, 0, 1)]


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        variables(2)[0] + variables(3)[0]
    with pytest.raises(DimensionMismatch):
        PolyVectorField(variables(3)[:2])


def test_mixed_towers(k235):
    s2 = k235.gen(0)
    x1, x2 = variables(2)
    p = x1 * s2 + x2
    assert p.tower == k235
    assert (p * p).coeff((2, 0)) == 2


def test_lie_derivative_is_a_derivation(rng):
    for _ in range(N_RANDOM):
        f = random_field(rng, 3, 2)
        p = random_poly(rng, 3, 2)
        q = random_poly(rng, 3, 2)
        lhs = lie_derivative(f, p * q)
        rhs = p * lie_derivative(f, q) + q * lie_derivative(f, p)
        assert lhs == rhs


def test_cofactors_add():
    x1, x2, x3 = variables(3)
    f = PolyVectorField([x1, 2 * x2, 3 * x3])
    assert lie_derivative(f, x1) == x1
    assert lie_derivative(f, x2) == 2 * x2
    assert lie_derivative(f, x1 * x2) == 3 * x1 * x2
    assert divergence(f) == 6


def _cofactor(f, psi):
    res = exact_divide(lie_derivative(f, psi), psi)
    assert isinstance(res, Quotient)
    return res.q


def test_cofactors_add_on_random_semi_invariants(rng):
    # every monomial is a semi-invariant of x_i g_i(x)
    x = variables(3)
    for _ in range(N_RANDOM):
        m = int(rng.integers(1, 4))
        f = PolyVectorField([xi * random_poly(rng, 3, m - 1) for xi in x])
        exps = rng.integers(0, 3, size=(2, 3))
        psi1, psi2 = [MPoly.monomial(tuple(int(k) for k in e), random_fraction(rng) or 1)
                      for e in exps]
        k1, k2 = _cofactor(f, psi1), _cofactor(f, psi2)
        assert _cofactor(f, psi1 * psi2) == k1 + k2
        assert lie_derivative(f, psi1 * psi2) == (k1 + k2) * psi1 * psi2


def test_exact_divide(rng):
    for _ in range(N_RANDOM // 4):
        p = random_poly(rng, 3, 2)
        q = random_poly(rng, 3, 2)
        if q.is_zero():
            continue
        res = exact_divide(p * q, q)
        assert isinstance(res, Quotient)
        assert res.q == p
    x1, x2 = variables(2)
    assert isinstance(exact_divide(x1 * x1 + 2, x1 + 1), NotDivisible)
    with pytest.raises(ZeroDivisor):
        exact_divide(x1, MPoly.zero(2))


def test_field_accessors():
    x1, x2 = variables(2)
    f = PolyVectorField([x1 * x1 + x2, x1 * x2 + 1])
    assert f.m == 2
    assert not f.is_homogeneous()
    assert f.top().is_homogeneous()
    assert f.top()[1] == x1 * x2
    J = f.jacobian_at([Fraction(1), Fraction(2)])
    assert J[0, 0] == 2 and J[0, 1] == 1
    assert J[1, 0] == 2 and J[1, 1] == 1
    L = f.linear_part()
    assert L[0, 1] == 1 and L[0, 0] == 0


def test_sylvester_resultant_against_sympy(rng):
    syms = sympy.symbols('x1 x2 x3')
    x1, x2, x3 = variables(3)
    for _ in range(10):
        p = random_poly(rng, 3, 2) + x1 ** 3
        q = random_poly(rng, 3, 2) + x1 * x1 * x3
        r = sylvester_resultant(p, q, 0)
        assert r.degree_in(0) in (0, float('-inf'))
        expected = sympy.resultant(to_sympy(p, syms), to_sympy(q, syms), syms[0])
        assert sympy.expand(to_sympy(r, syms) - expected) == 0


def test_resultant_is_multiplicative(rng):
    checked = 0
    while checked < N_RANDOM:
        p1, p2, q = [random_poly(rng, 2, 2, nterms=3) for _ in range(3)]
        if min(p.degree_in(0) for p in (p1, p2, q)) < 1:
            continue
        lhs = sylvester_resultant(p1 * p2, q, 0)
        assert lhs == sylvester_resultant(p1, q, 0) * sylvester_resultant(p2, q, 0)
        checked += 1


def test_resultant_needs_the_variable():
    x1, x2 = variables(2)
    with pytest.raises(DegenerateInVar):
        sylvester_resultant(x2 + 1, x1 * x2, 0)


def test_determinant_against_sympy(rng):
    for n in (1, 2, 3, 4):
        M = [[random_fraction(rng) for _ in range(n)] for _ in range(n)]
        det = determinant([[RATIONALS(x) for x in row] for row in M])
        expected = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                                 for row in M]).det()
        assert det == Fraction(int(sympy.fraction(expected)[0]),
                               int(sympy.fraction(expected)[1]))


def test_determinant_of_polynomial_matrix():
    x1, x2 = variables(2)
    assert determinant([[x1, x2], [x2, x1]]) == x1 * x1 - x2 * x2


def test_char_poly():
    M = np.array([[RATIONALS(2), RATIONALS(0)], [RATIONALS(0), RATIONALS(3)]], dtype=object)
    assert char_poly(M) == univariate([6, -5, 1])
    R = np.array([[RATIONALS(0), RATIONALS(-1)], [RATIONALS(1), RATIONALS(0)]], dtype=object)
    assert char_poly(R) == univariate([1, 0, 1])
    with pytest.raises(UnsupportedDimension):
        char_poly(np.array([[RATIONALS(0)] * 5] * 5, dtype=object))


def test_char_poly_over_tower(k235):
    s2 = k235.gen(0)
    M = np.array([[s2, RATIONALS(1)], [RATIONALS(0), -s2]], dtype=object)
    assert char_poly(M) == univariate([-2, 0, 1], k235)


def test_field_needs_components():
    with pytest.raises(DimensionMismatch):
        PolyVectorField([])
