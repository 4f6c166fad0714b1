import io
import json
from fractions import Fraction

import pytest

from invsurf.errors import (NegativeExponent, ParseSyntaxError, SchemaError,
                            UnknownSymbol)
from invsurf.exact import RATIONALS
from invsurf.parse_io import (ParseContext, dump_json, field_from_json,
                              field_to_json, load_factors, load_gamma_spec,
                              load_lines, parse_constant, parse_poly,
                              poly_from_json, poly_to_json, print_poly,
                              value_to_json)
from invsurf.poly import variables

from .conftest import N_RANDOM, data_path, random_poly

ROUND_TRIPS = 1000


def test_parse_simple():
    ctx = ParseContext(3)
    x1, x2, x3 = variables(3)
    assert parse_poly('x1^2 + (3/2)*x1*x2', ctx) == x1 * x1 + Fraction(3, 2) * x1 * x2
    assert parse_poly('-x3 - 2*x2/4', ctx) == -x3 - Fraction(1, 2) * x2
    assert parse_poly('(x1 + 1)^2', ctx) == x1 * x1 + 2 * x1 + 1
    assert parse_poly('0', ctx).is_zero()


def test_parse_surds(k235):
    ctx = ParseContext(2, k235)
    s2, s3, _ = k235.gens()
    x1, x2 = variables(2, k235)
    p = parse_poly('sqrt2*x1 - (sqrt2*sqrt3 - 1)/2*x2', ctx)
    assert p == x1 * s2 - x2 * ((s2 * s3 - 1) / 2)
    assert parse_constant('sqrt5^2', ctx) == 5


def test_print_parse_round_trip(rng, k235):
    for tower, nvars in ((RATIONALS, 3), (k235, 2)):
        ctx = ParseContext(nvars, tower)
        for _ in range(ROUND_TRIPS // 2):
            p = random_poly(rng, nvars, 3, tower)
            assert parse_poly(print_poly(p, ctx), ctx) == p


def test_print_canonical():
    ctx = ParseContext(2)
    x1, x2 = variables(2)
    assert print_poly(x2 - x1 * x1 + Fraction(1, 3), ctx) == '-x1^2 + x2 + 1/3'
    assert print_poly(Fraction(-3, 2) * x1 * x2, ctx) == '-(3/2)*x1*x2'


@pytest.mark.parametrize('text, kind, location', [
    ('x1 +', ParseSyntaxError, 4),
    ('x1 + y', UnknownSymbol, 5),
    ('x1^-2', NegativeExponent, 3),
    ('x1/0', ParseSyntaxError, 3),
    ('x1/x2', ParseSyntaxError, 3),
    ('x1 $ x2', ParseSyntaxError, 3),
    ('(x1 + x2', ParseSyntaxError, 8),
    ('', ParseSyntaxError, 0),
    ('(x1+x2+1)^1000', ParseSyntaxError, 10),
    ('x1*(x1 + x2 + x3)^600', ParseSyntaxError, 18),
])
def test_parse_errors(text, kind, location):
    ctx = ParseContext(3)
    with pytest.raises(kind) as info:
        parse_poly(text, ctx)
    assert info.value.location == location
    d = info.value.as_dict()
    assert d['location'] == location
    assert d['expected']


def test_error_kinds():
    ctx = ParseContext(3)
    with pytest.raises(ParseSyntaxError) as info:
        parse_poly('x1 +', ctx)
    assert info.value.kind == 'SyntaxError'
    assert 'end of input' in info.value.message
    with pytest.raises(UnknownSymbol) as info:
        parse_poly('sqrt7*x1', ctx)
    assert info.value.kind == 'UnknownSymbol'


def test_constant_must_be_constant():
    with pytest.raises(ParseSyntaxError):
        parse_constant('x1 + 1', ParseContext(1))


def test_expansion_is_bounded():
    ctx = ParseContext(3)
    x1, x2, x3 = variables(3)
    assert len(parse_poly('(x1 + x2 + 1)^20', ctx).terms) == 231
    assert parse_poly('x1^5000', ctx) == x1 ** 5000
    with pytest.raises(ParseSyntaxError) as info:
        parse_poly('x2 + (x1 + x2 + 1)^1000', ctx)
    assert info.value.message == 'expansion too large'
    assert info.value.location == 19
    assert 'terms after expansion' in info.value.expected


def test_poly_json(rng, k235):
    p = random_poly(rng, 3, 2, k235)
    d = poly_to_json(p)
    assert d['nvars'] == 3 and d['tower'] == [2, 3, 5]
    assert poly_from_json(json.loads(json.dumps(d))) == p
    with pytest.raises(SchemaError):
        poly_from_json({'nvars': 2})


def test_example_field(sqrt235_field, k235):
    f = sqrt235_field
    assert f.n == 3 and f.m == 2
    assert f.tower == k235
    assert f.is_homogeneous()
    d = field_to_json(f)
    assert d['n'] == 3 and d['m'] == 2 and d['tower'] == [2, 3, 5]
    assert field_from_json(d) == f


def test_field_schema_errors():
    with pytest.raises(SchemaError):
        field_from_json({'n': 2, 'components': ['x1']})
    with pytest.raises(SchemaError):
        field_from_json({'n': 2, 'm': 3, 'components': ['x1^2', 'x2']})
    with pytest.raises(SchemaError):
        field_from_json({'components': ['x1']})
    with pytest.raises(SchemaError):
        field_from_json({'n': 1, 'tower': 5, 'components': ['x1']})
    with pytest.raises(SchemaError):
        field_from_json({'n': 'abc', 'components': ['x1']})
    with pytest.raises(SchemaError):
        field_from_json({'n': 0, 'components': []})
    with pytest.raises(SchemaError):
        field_from_json({'n': 1, 'tower': [2], 'variables': ['sqrt2'], 'components': ['1']})
    with pytest.raises(SchemaError):
        load_factors({'factors': ['x1']}, ParseContext(1))


def test_named_variables():
    f = field_from_json({'n': 2, 'variables': ['x', 'y'], 'components': ['y', '-x']})
    x, y = variables(2)
    assert f[0] == y and f[1] == -x


def test_gamma_and_lines(sqrt235_lines, k235):
    rows = load_gamma_spec(data_path('rational_gamma.json'))
    assert rows == [[-1, 3, 2], [1, 1, -2], [0, 1, -3]]
    rows = load_gamma_spec(data_path('sqrt235_gamma.json'))
    assert len(rows) == 3 and rows[0][0].tower == k235
    assert len(sqrt235_lines) == 7
    assert sqrt235_lines[0] == [1, 0, 0]
    with pytest.raises(SchemaError):
        load_gamma_spec({'gamma': [[1, 2], [3, 4]]})
    with pytest.raises(SchemaError):
        load_lines({'tower': []})


def test_factors():
    ctx = ParseContext(2)
    x1, x2 = variables(2)
    factors = load_factors({'factors': [{'poly': 'x1', 'exponent': '-1/2'},
                                        {'poly': 'x2'}]}, ctx)
    assert factors == [(x1, Fraction(-1, 2)), (x2, Fraction(1))]
    with pytest.raises(SchemaError):
        load_factors({'factors': [{'exponent': 1}]}, ctx)


def test_value_and_dump(k235):
    v = value_to_json(k235.gen(0))
    assert v['text'] == 'sqrt2'
    assert v['decimal'].startswith('1.41421356')
    assert v['exact']['coords'][1] == '1/1'
    out = io.StringIO()
    dump_json({'b': 1, 'a': [Fraction(1, 2).numerator]}, out)
    assert out.getvalue() == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'
