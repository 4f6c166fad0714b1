from fractions import Fraction

import pytest

from invsurf.errors import DuplicateLine, NotInvariantLine, UnsupportedDimension
from invsurf.exact import RATIONALS, QuadElem
from invsurf.infinity import (Cond1, Cond2, Incomplete, Line, Neither,
                              NotInvariant, Satisfied, Violated,
                              classify_conditions, infinity_spectrum,
                              normalize_direction, property_e_report,
                              ratio_positive_rational, verify_invariant_line)
from invsurf.parse_io import ParseContext, parse_constant
from invsurf.poly import PolyVectorField, variables

# eigenvalues of Dp at e1, e2, e3, v1, v2, v3 of the worked example
SQRT235_SPECTRA = [
    ['-(sqrt5 - 1)*sqrt2/2', '-sqrt2*(sqrt3 - 1)/2', '2'],
    ['-(sqrt5 - 1)*sqrt3/3', '-sqrt3*(sqrt2 - 1)/3', '2'],
    ['-sqrt5*(sqrt3 - 1)/5', '-sqrt5*(sqrt2 - 1)/5', '2'],
    ['2', 'sqrt2 + sqrt3', '-2*sqrt5 + 2'],
    ['2', '-2*sqrt2 + 2', 'sqrt5 + sqrt3'],
    ['2', '-2*sqrt3 + 2', 'sqrt5 + sqrt2'],
]

SEVENTH_CENTER = ('((794929*sqrt2 + 762999)*sqrt3 + 880620*sqrt2 + 1744545)*sqrt5/4061514'
                  ' + (1796931*sqrt2 + 3382333)*sqrt3/4061514'
                  ' + 776393*sqrt2/676919 + 3211015/1353838')
SEVENTH_RADICAND = ('((-6061791842292*sqrt5 + 20403579754296)*sqrt3'
                    ' - 10627847112816*sqrt5 + 45521293739166)*sqrt2'
                    ' + (-8804787537402*sqrt5 + 29950278886104)*sqrt3'
                    ' - 15500011528278*sqrt5 + 66711726928548')
SEVENTH_DENOMINATOR = 4061514


@pytest.fixture(scope='module')
def example_report(sqrt235_field, sqrt235_lines):
    return property_e_report(sqrt235_field, sqrt235_lines)


def constants(texts, tower):
    ctx = ParseContext(0, tower)
    return [parse_constant(t, ctx) for t in texts]


def test_verify_invariant_line(sqrt235_field):
    assert verify_invariant_line(sqrt235_field, [1, 0, 0]) == Line(1)
    assert verify_invariant_line(sqrt235_field, [2, 0, 0]) == Line(2)
    assert verify_invariant_line(sqrt235_field, [1, 1, 0]) == NotInvariant()


def test_normalize_direction(k235):
    s2, s3, _ = k235.gens()
    assert normalize_direction([0, s2, s3]) == (0, 1, s3 / s2)
    assert normalize_direction([0, 2, 4]) == normalize_direction([0, 1, 2])


def test_example_spectra_at_prescribed_idempotents(example_report, k235):
    for point, expected in zip(example_report.points[:6], SQRT235_SPECTRA):
        assert point.gamma == 1
        assert point.dp_spectrum[0] == 2
        assert sorted(map(str, point.dp_spectrum)) == \
            sorted(map(str, constants(expected, k235)))
        assert point.ext is None
        assert point.cross_check is True


def test_example_spectrum_at_seventh_idempotent(sqrt235_df, k235):
    report = infinity_spectrum(sqrt235_df.field, sqrt235_df.seventh)
    assert report.gamma == 1
    assert report.dp_spectrum[0] == 2
    betas = report.dp_spectrum[1:]
    assert all(isinstance(b, QuadElem) for b in betas)
    center, radicand = constants([SEVENTH_CENTER, SEVENTH_RADICAND], k235)
    assert all(b.u == center for b in betas)
    assert sorted(b.v.rational() for b in betas) == [Fraction(-1, 2), Fraction(1, 2)]
    assert report.ext.radicand == radicand * Fraction(4, SEVENTH_DENOMINATOR ** 2)
    assert report.ext.certificate['method'] == 'embedding'
    assert isinstance(report.classification, Cond1)


def test_example_has_property_e(example_report):
    report = example_report
    assert all(isinstance(p.classification, Cond1) for p in report.points)
    assert report.verdict == Satisfied()
    assert report.expected_count == 7 and report.distinct_count == 7
    assert report.complete
    assert report.curve_bound == 7
    assert report.dicritical_witnesses == []
    d = report.as_dict()
    assert d['verdict'] == {'status': 'Satisfied'}
    assert [p['classification'] for p in d['points']] == ['Cond1'] * 7


def test_incomplete_and_duplicate(sqrt235_field, sqrt235_lines):
    report = property_e_report(sqrt235_field, sqrt235_lines[:6])
    assert isinstance(report.verdict, Incomplete)
    assert report.curve_bound is None
    with pytest.raises(DuplicateLine) as info:
        property_e_report(sqrt235_field, [[1, 0, 0], [2, 0, 0]])
    assert info.value.location == 1


def test_not_invariant_line(sqrt235_field):
    with pytest.raises(NotInvariantLine) as info:
        property_e_report(sqrt235_field, [[1, 0, 0], [1, 1, 0]])
    assert info.value.location == 1
    assert info.value.kind == 'NotInvariant'


def test_violated():
    x1, x2, x3 = variables(3)
    f = PolyVectorField([x1 * x1, x2 * x2, x3 * x3])
    report = property_e_report(f, [[1, 0, 0], [1, 1, 1]])
    assert report.verdict == Violated(0)
    assert isinstance(report.points[0].classification, Neither)
    assert isinstance(report.points[1].classification, Neither)
    assert report.points[0].inf_spectrum == [-1, -1, -1]


def test_classify_conditions(k235):
    s2, s3, _ = k235.gens()
    assert classify_conditions([RATIONALS(1), s2]) == Cond1()
    assert classify_conditions([RATIONALS(1), RATIONALS(-1)]) == Cond2((1, 1))
    assert classify_conditions([s2, s3, -s2 - s3]) == Cond2((1, 1, 1))
    assert classify_conditions([RATIONALS(1), RATIONALS(2)]) == Neither(((-2, 1),))
    assert isinstance(classify_conditions([s2, -2 * s2, RATIONALS(1)]), Neither)


def test_ratio_positive_rational(k235):
    s2 = k235.gen(0)
    one = k235.one()
    assert ratio_positive_rational(one, [one + s2, one + 3 * s2])
    assert not ratio_positive_rational(one, [one + s2, one - s2])
    assert ratio_positive_rational(one, [one, s2])
    assert ratio_positive_rational(one, [s2]) is None


def test_linear_field_spectrum():
    x1, x2, x3 = variables(3)
    f = PolyVectorField([x1, 2 * x2, 3 * x3])
    report = infinity_spectrum(f, [0, 1, 0])
    assert report.gamma == 2
    assert sorted(map(str, report.inf_spectrum)) == ['-1', '-2', '1']
    assert report.cross_check is True


def test_dimension_limit():
    xs = variables(4)
    f = PolyVectorField([x * x for x in xs])
    with pytest.raises(UnsupportedDimension):
        infinity_spectrum(f, [1, 0, 0, 0])
