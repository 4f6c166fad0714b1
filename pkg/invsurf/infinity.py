'''
Stationary points at infinity and property E

An invariant line C v of the top-degree part p = f^(m), p(v) = gamma v, is a
stationary point at infinity.  The Jacobian Dp(v) has the eigenvalue
m gamma at v and further eigenvalues beta_2, ..., beta_n; the linearization
of the Poincare transform at the point has eigenvalues
-gamma, beta_2 - gamma, ..., beta_n - gamma.  Property E asks that each of
these spectra be either Q-linearly independent (Cond1) or span a space of
dimension n-1 with a positive integer relation (Cond2).

Contains
--------

    verify_invariant_line(f, v)   ->  Line(gamma) | NotInvariant()
    normalize_direction(v)
    infinity_spectrum(f, v)       ->  InfinityPointReport
    classify_conditions(spectrum) ->  Cond1() | Cond2(m) | Neither(kernel)
    property_e_report(f, lines)   ->  PropertyEReport

Usage Examples
--------------

    >>> f = load_field_spec('invsurf/data/sqrt235_field.json')
    >>> report = property_e_report(f, load_lines('invsurf/data/sqrt235_lines.json'))
    >>> report.verdict
    Satisfied()

'''
from __future__ import absolute_import, division, print_function

import logging
import warnings
from collections import namedtuple
from fractions import Fraction

from .errors import (DimensionMismatch, DuplicateLine, ExtensionTooDeep,
                     NotInvariantLine, UnsupportedDimension,
                     VerificationFailed, ZeroVector)
from .exact import (DEFAULT_PRECISION, QuadElem, QuadExt, Square,
                    promote, rational_coordinates, rational_kernel,
                    sqrt_in_field)
from .parse_io import value_to_json, vector_to_json
from .poly import MPoly, Quotient, _tower_of, char_poly, exact_divide
from .transform import make_chart, poincare_field

log = logging.getLogger(__name__)

Line = namedtuple('Line', 'gamma')
NotInvariant = namedtuple('NotInvariant', '')

Cond1 = namedtuple('Cond1', '')
Cond2 = namedtuple('Cond2', 'm')
Neither = namedtuple('Neither', 'kernel')

Satisfied = namedtuple('Satisfied', '')
Violated = namedtuple('Violated', 'witness')
Incomplete = namedtuple('Incomplete', 'reason')

MAX_SPECTRUM_DIM = 3
PROPERTY_S_NOTE = ('property S holds automatically in dimension 3; '
                   'it is not checked')


def _direction(f, v):
    v = list(v)
    if len(v) != f.n:
        raise DimensionMismatch('direction has %d entries, field dimension is %d'
                                % (len(v), f.n))
    if any(isinstance(c, QuadElem) for c in v):
        raise ExtensionTooDeep('directions must lie in a tower, not a quadratic '
                               'extension of one')
    tower = _tower_of(v, f.tower)
    v = [promote(c, tower) for c in v]
    if all(c.is_zero() for c in v):
        raise ZeroVector('the zero vector spans no line')
    return v


def verify_invariant_line(f, v):
    '''
    Decide whether f^(m)(v) = gamma v for some scalar gamma

    gamma is read off the first nonzero coordinate of v and every coordinate
    is then checked exactly.
    '''
    v = _direction(f, v)
    w = f.top().evaluate(v)
    i = [k for k, c in enumerate(v) if not c.is_zero()][0]
    gamma = w[i] / v[i]
    if all(wj == gamma * vj for wj, vj in zip(w, v)):
        return Line(gamma)
    return NotInvariant()


def normalize_direction(v):
    '''Scale v so that its first nonzero coordinate is 1'''
    v = list(v)
    tower = _tower_of(v)
    v = [promote(c, tower) for c in v]
    nz = [c for c in v if not c.is_zero()]
    if not nz:
        raise ZeroVector('the zero vector has no direction')
    inv = nz[0].inverse()
    return tuple(c * inv for c in v)


def _quadratic_roots(b, c, precision):
    '''Roots of t^2 + b t + c, adjoining sqrt(discriminant) when needed'''
    disc = b * b - 4 * c
    if disc.is_zero():
        r = -b / 2
        return [r, r], None
    answer = sqrt_in_field(disc, precision)
    if isinstance(answer, Square):
        s = answer.root
        return [(-b + s) / 2, (-b - s) / 2], None
    ext = QuadExt(disc, precision)
    half = Fraction(1, 2)
    return [ext(-b / 2, half), ext(-b / 2, -half)], ext


def _residual_roots(q, precision):
    coeffs = q.univariate_coeffs()
    if len(coeffs) == 1:
        return [], None
    if len(coeffs) == 2:
        return [-coeffs[0]], None
    assert len(coeffs) == 3, 'residual factor has degree at most two'
    return _quadratic_roots(coeffs[1], coeffs[0], precision)


def _rational_value(x):
    if isinstance(x, QuadElem):
        if not x.v.is_zero():
            return None
        x = x.u
    if not x.is_rational():
        return None
    return x.rational()


def ratio_positive_rational(gamma, betas):
    '''
    True when (beta_3 - gamma)/(beta_2 - gamma) is a positive rational or a
    shift beta_i - gamma vanishes (n = 3 only)
    '''
    if len(betas) != 2:
        return None
    a, b = [beta - gamma for beta in betas]
    if a.is_zero() or b.is_zero():
        return True
    q = _rational_value(b / a)
    return q is not None and q > 0


class InfinityPointReport(object):
    '''
    Spectral data at the stationary point at infinity given by direction v

    dp_spectrum is [m gamma, beta_2, ...] and inf_spectrum the shifted
    [-gamma, beta_2 - gamma, ...].  ext is the quadratic extension the
    betas live in, or None.
    '''

    def __init__(self, v, gamma, m, betas, ext, char_poly_dp, cross_check):
        self.v = tuple(v)
        self.direction = normalize_direction(v)
        self.gamma = gamma
        self.m = m
        self.dp_spectrum = [gamma * m] + list(betas)
        self.inf_spectrum = [-gamma] + [beta - gamma for beta in betas]
        self.ext = ext
        self.char_poly_dp = char_poly_dp
        self.cross_check = cross_check
        self.classification = classify_conditions(self.inf_spectrum)
        self.multiplicity_one = all(not x.is_zero() for x in self.inf_spectrum)
        self.ratio_positive_rational = ratio_positive_rational(gamma, betas)

    def __repr__(self):
        return 'InfinityPointReport(v=%s, gamma=%s, %s)' % (
            list(self.v), self.gamma, self.classification)

    def as_dict(self):
        cls = self.classification
        d = {'v': vector_to_json(self.v),
             'direction': vector_to_json(self.direction),
             'gamma': value_to_json(self.gamma),
             'dp_spectrum': vector_to_json(self.dp_spectrum),
             'inf_spectrum': vector_to_json(self.inf_spectrum),
             'classification': type(cls).__name__,
             'multiplicity_one': self.multiplicity_one,
             'ratio_positive_rational': self.ratio_positive_rational,
             'cross_check': self.cross_check}
        if isinstance(cls, Cond2):
            d['cond2_multipliers'] = list(cls.m)
        if self.ext is not None:
            d['extension'] = {'radicand': value_to_json(self.ext.radicand),
                              'certificate': self.ext.certificate}
        return d


def _poincare_cross_check(f, v, gamma, q):
    '''
    char_poly of the linearized Poincare transform at v against
    (t + gamma) q(t + gamma), q the residual factor of char_poly(Dp(v))
    '''
    g = poincare_field(f, make_chart(v))
    lhs = char_poly(g.linear_part())
    tower = _tower_of([gamma], lhs.tower)
    t = MPoly.var(1, 0, tower)
    shifted = q.compose([t + gamma])
    rhs = (t + gamma) * shifted
    return lhs == rhs


def infinity_spectrum(f, v, precision=DEFAULT_PRECISION, cross_check=True):
    '''
    Spectra of Dp(v) and of the Poincare transform at an invariant line

    The known root m gamma is divided out of char_poly(Dp(v)) exactly and
    the residual linear or quadratic factor is solved, adjoining one
    square root when its discriminant is not a square in the tower.
    '''
    if f.n > MAX_SPECTRUM_DIM:
        raise UnsupportedDimension('eigenvalues are extracted for n <= %d only'
                                   % MAX_SPECTRUM_DIM)
    line = verify_invariant_line(f, v)
    if isinstance(line, NotInvariant):
        raise NotInvariantLine('f^(m)(v) is not a multiple of v for v = %s'
                               % ', '.join(str(c) for c in v))
    v = _direction(f, v)
    gamma = line.gamma
    m = f.m
    J = f.top().jacobian_at(v)
    cp = char_poly(J)
    tower = cp.tower
    t = MPoly.var(1, 0, tower)
    res = exact_divide(cp, t - gamma * m)
    if not isinstance(res, Quotient):
        raise VerificationFailed('m*gamma = %s is not a root of char_poly(Dp(v))'
                                 % (gamma * m))
    q = res.q
    betas, ext = _residual_roots(q, precision)
    ok = None
    if cross_check:
        ok = _poincare_cross_check(f, v, gamma, q)
        if not ok:
            raise VerificationFailed('Poincare transform spectrum disagrees with '
                                     'the shifted Jacobian spectrum at %s' % v)
    log.debug('point at infinity %s: gamma=%s, betas=%s', v, gamma, betas)
    return InfinityPointReport(v, gamma, m, betas, ext, cp, ok)


def _coordinate_matrix(spectrum):
    ext = None
    for x in spectrum:
        if isinstance(x, QuadElem):
            if ext is not None and x.ext != ext:
                raise ExtensionTooDeep('spectrum spans two quadratic extensions')
            ext = x.ext
    if ext is not None:
        base = ext.base
        for x in spectrum:
            if not isinstance(x, QuadElem):
                base = _tower_of([x], base)
        assert base == ext.base, 'eigenvalue outside the extension base'
        cols = [rational_coordinates(x, ext) for x in spectrum]
    else:
        tower = _tower_of(spectrum)
        cols = [rational_coordinates(promote(x, tower)) for x in spectrum]
    return [[col[i] for col in cols] for i in range(len(cols[0]))]


def classify_conditions(spectrum):
    '''
    Cond1 when the spectrum is Q-linearly independent, Cond2(m) when its
    relations are spanned by one vector of strictly positive integers m,
    Neither otherwise
    '''
    spectrum = list(spectrum)
    assert len(spectrum) >= 1, 'empty spectrum'
    kernel = rational_kernel(_coordinate_matrix(spectrum))
    if not kernel:
        return Cond1()
    if len(kernel) == 1 and all(c > 0 for c in kernel[0]):
        return Cond2(tuple(int(c) for c in kernel[0]))
    return Neither(tuple(tuple(int(c) for c in vec) for vec in kernel))


class PropertyEReport(object):
    '''Classification of a list of stationary points at infinity'''

    def __init__(self, f, points):
        self.n = f.n
        self.m = f.m
        self.points = points
        m, n = f.m, f.n
        self.expected_count = n if m == 1 else (m ** n - 1) // (m - 1)
        self.distinct_count = len(points)
        self.complete = self.distinct_count == self.expected_count and \
            all(p.multiplicity_one for p in points)
        bad = [i for i, p in enumerate(points)
               if not isinstance(p.classification, (Cond1, Cond2))]
        if bad:
            self.verdict = Violated(bad[0])
        elif not self.complete:
            self.verdict = Incomplete('%d of %d stationary points at infinity supplied'
                                      % (self.distinct_count, self.expected_count))
        else:
            self.verdict = Satisfied()
        self.curve_bound = self.expected_count if self.satisfied else None
        self.dicritical_witnesses = [i for i, p in enumerate(points)
                                     if p.ratio_positive_rational]
        self.property_s_note = PROPERTY_S_NOTE if n == 3 else None

    @property
    def satisfied(self):
        return isinstance(self.verdict, Satisfied)

    def __repr__(self):
        return 'PropertyEReport(%d points, %s)' % (len(self.points), self.verdict)

    def as_dict(self):
        verdict = {'status': type(self.verdict).__name__}
        if isinstance(self.verdict, Violated):
            verdict['witness'] = self.verdict.witness
            verdict['direction'] = vector_to_json(self.points[self.verdict.witness].direction)
        elif isinstance(self.verdict, Incomplete):
            verdict['reason'] = self.verdict.reason
        return {'n': self.n,
                'm': self.m,
                'points': [p.as_dict() for p in self.points],
                'complete': self.complete,
                'expected_count': self.expected_count,
                'distinct_count': self.distinct_count,
                'verdict': verdict,
                'invariant_curve_bound': self.curve_bound,
                'dicritical_witnesses': self.dicritical_witnesses,
                'property_s': self.property_s_note}


def check_distinct(f, lines):
    '''Raise DuplicateLine, located at the later index, if two lines are proportional'''
    seen = {}
    for i, v in enumerate(lines):
        key = normalize_direction(_direction(f, v))
        if key in seen:
            raise DuplicateLine('lines %d and %d are proportional' % (seen[key], i),
                                location=i)
        seen[key] = i


def property_e_report(f, lines, precision=DEFAULT_PRECISION):
    '''
    Classify every supplied invariant line and decide property E

    A Neither point violates property E outright.  Otherwise property E is
    certified only when the supplied lines are all (m^n - 1)/(m - 1) of them
    and each has multiplicity one.
    '''
    check_distinct(f, lines)
    points = []
    for i, v in enumerate(lines):
        try:
            points.append(infinity_spectrum(f, v, precision))
        except NotInvariantLine as err:
            err.location = i
            raise
    report = PropertyEReport(f, points)
    if report.dicritical_witnesses and report.satisfied:
        warnings.warn('a dicritical ratio occurs at points %s'
                      % report.dicritical_witnesses)
    log.info('property E: %s (%d/%d points)', type(report.verdict).__name__,
             report.distinct_count, report.expected_count)
    return report
