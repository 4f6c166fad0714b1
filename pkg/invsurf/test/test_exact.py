from fractions import Fraction

import pytest

from invsurf.errors import (DivisionByZero, NotSquareFree, RedundantGenerator,
                            SquareRadicand, TowerMismatch, TowerTooHigh,
                            ZeroRadicand)
from invsurf.exact import (RATIONALS, FieldElem, NotSquare, QuadExt, Square,
                           create_tower, elem_arith, elem_from_json, elem_to_json,
                           promote, rank, rational_kernel, solve_linear,
                           sqrt_in_field, to_decimal)

from .conftest import N_RANDOM, random_elem, random_nonzero_elem


def test_create_tower_rejects_bad_generators():
    with pytest.raises(RedundantGenerator):
        create_tower([2, 8])
    with pytest.raises(RedundantGenerator):
        create_tower([2, 3, 6])
    with pytest.raises(NotSquareFree):
        create_tower([12])
    with pytest.raises(TowerTooHigh):
        create_tower([2, 3, 5, 7, 11])


@pytest.mark.parametrize('discriminants, location', [
    ([0], 0), ([1], 0), ([2, 1], 1), ([3, 0], 1)])
def test_zero_and_one_are_not_generators(discriminants, location):
    with pytest.raises(NotSquareFree) as info:
        create_tower(discriminants)
    assert info.value.location == location
    assert 'not allowed' in info.value.message


def test_redundant_generator_location():
    with pytest.raises(RedundantGenerator) as info:
        create_tower([2, 3, 6])
    assert info.value.location == 2
    assert info.value.as_dict()['error'] == 'RedundantGenerator'


def test_basis_order(k235):
    s2, s3, s5 = k235.gens()
    assert s2 * s3 == k235.basis_element(3)
    assert s2 * s5 == k235.basis_element(5)
    assert s2 * s3 * s5 == k235.basis_element(7)
    assert s2 * s2 == 2
    assert (s3 * s5) * (s3 * s5) == 15
    assert k235.basis_label(6) == 'sqrt3*sqrt5'


def test_field_axioms(rng, k235):
    one = k235.one()
    for _ in range(N_RANDOM):
        a, b, c = [random_elem(rng, k235) for _ in range(3)]
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == k235.zero()
        if not a.is_zero():
            assert a * a.inverse() == one
            assert (b / a) * a == b


def test_division_by_zero(k235):
    with pytest.raises(DivisionByZero):
        k235.gen(0) / k235.zero()
    with pytest.raises(DivisionByZero):
        k235.zero().inverse()


def test_promotion_between_towers():
    k2 = create_tower([2])
    k23 = create_tower([2, 3])
    x = k2.gen(0) + 1
    y = promote(x, k23)
    assert y.tower == k23
    assert y == x
    assert x + k23.gen(1) == k23.gen(0) + k23.gen(1) + 1
    with pytest.raises(TowerMismatch):
        create_tower([3]).gen(0) + create_tower([5]).gen(0)


def test_sqrt_in_field_rational():
    assert sqrt_in_field(Fraction(9, 4)) == Square(RATIONALS(Fraction(3, 2)))
    assert sqrt_in_field(2) == NotSquare(None)
    with pytest.raises(ZeroRadicand):
        sqrt_in_field(0)


def test_sqrt_in_field_tower():
    k = create_tower([2, 3])
    s2, s3 = k.gens()
    a = 5 + 2 * s2 * s3
    res = sqrt_in_field(a)
    assert isinstance(res, Square)
    assert res.root * res.root == a
    assert isinstance(sqrt_in_field(promote(RATIONALS(5), k)), NotSquare)


def test_sqrt_of_squares(rng, k235):
    for _ in range(5):
        x = random_nonzero_elem(rng, k235)
        res = sqrt_in_field(x * x)
        assert isinstance(res, Square)
        assert res.root in (x, -x)


def test_quadratic_extension():
    ext = QuadExt(RATIONALS(2))
    r = ext.sqrt_radicand()
    assert r * r == 2
    assert ext.certificate == {'method': 'exact'}
    z = ext(1, 1)
    assert z * z.conjugate() == -1
    assert (z / z) == 1
    assert z.norm() == -1
    with pytest.raises(SquareRadicand):
        QuadExt(RATIONALS(4))
    with pytest.raises(ZeroRadicand):
        QuadExt(0)


def test_quadratic_extension_over_tower_records_precision():
    k = create_tower([2])
    with pytest.warns(UserWarning):
        ext = QuadExt(k.gen(0) + 1)
    assert ext.certificate['method'] == 'embedding'
    r = ext.sqrt_radicand()
    assert r * r == k.gen(0) + 1


def test_rational_kernel_and_rank():
    assert rational_kernel([[1, 2], [2, 4]]) == [[Fraction(-2), Fraction(1)]]
    assert rational_kernel([[1, 0], [0, 1]]) == []
    assert rank([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 2
    kernel = rational_kernel([[Fraction(1, 2), Fraction(1, 3), 1]])
    assert len(kernel) == 2
    for vec in kernel:
        assert Fraction(1, 2) * vec[0] + Fraction(1, 3) * vec[1] + vec[2] == 0


def test_solve_linear(k235):
    s2, s3, _ = k235.gens()
    M = [[s2, 1], [1, s3]]
    x = solve_linear(M, [1, 0])
    assert s2 * x[0] + x[1] == 1
    assert x[0] + s3 * x[1] == 0
    with pytest.raises(DivisionByZero):
        solve_linear([[1, 2], [2, 4]], [1, 1])


def test_json_round_trip(rng, k235):
    x = random_nonzero_elem(rng, k235)
    d = elem_to_json(x)
    assert d['tower'] == [2, 3, 5]
    assert len(d['coords']) == 8
    assert elem_from_json(d) == x
    assert elem_to_json(RATIONALS(Fraction(-3, 4))) == {'tower': [], 'coords': ['-3/4']}


def test_decimal_rendering(k235):
    assert to_decimal(k235.gen(0)).startswith('1.414213562373095048801688724')
    assert to_decimal(Fraction(1, 4)) == '0.25'


def test_embedding_signs(k235):
    s2 = k235.gen(0)
    assert float(s2) > 0
    assert s2.embed(1) < 0
    assert s2.embed(2) > 0


def test_elements_are_immutable(k235):
    x = k235.gen(0)
    with pytest.raises(AttributeError):
        x.coords = (1,)
    assert isinstance(x, FieldElem)


def test_elem_arith(k235):
    s2, s3, _ = k235.gens()
    assert elem_arith('add', s2, s3) == s2 + s3
    assert elem_arith('mul', s2, s2) == 2
    assert elem_arith('div', 1, 1 + s2) == s2 - 1
    assert elem_arith('sub', Fraction(1, 2), s3).tower == k235
    with pytest.raises(DivisionByZero):
        elem_arith('div', s2, k235.zero())
    with pytest.raises(ValueError):
        elem_arith('pow', s2, s3)
