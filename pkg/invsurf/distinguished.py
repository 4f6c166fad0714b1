'''
Distinguished quadratic vector fields in dimension three

A homogeneous quadratic field p on 3-space is distinguished when e1, e2, e3
and three further vectors v_i = sum_j gamma_ij e_j are idempotents
(p(v) = v) and the matrix A with rows

    (gamma_i1 gamma_i2, gamma_i2 gamma_i3, gamma_i3 gamma_i1)

is invertible.  Such a field has the form

    p_k(x) = x_k^2 + theta_{3k-2} x1 x2 + theta_{3k-1} x2 x3 + theta_{3k} x3 x1

and generically exactly one more idempotent, whose coordinates lie in the
field of the gamma_ij.

Contains
--------

    gs = GammaSpec([[s2, s3, 0], [0, s3, s5], [s2, 0, s5]])
    df = construct_distinguished(gs)
    theta_vector(df)
    seventh_idempotent(df)
    sample_genericity(count, coeff_range, seed)

Usage Examples
--------------

Check the worked example over Q(sqrt2, sqrt3, sqrt5):

    python -m invsurf.distinguished

'''
from __future__ import absolute_import, division, print_function

import logging
from collections import Counter
from fractions import Fraction

import numpy as np

from .errors import (B1Vanishes, DegenerateFactorization, DivisionByZero,
                     ExtensionTooDeep, InvalidParameter, InvsurfError,
                     SchemaError, SingularA, VerificationFailed)
from .exact import (DEFAULT_PRECISION, RATIONALS, create_tower, promote,
                    solve_linear)
from .infinity import check_distinct, property_e_report
from .parse_io import ParseContext, print_poly, value_to_json, vector_to_json
from .poly import (MPoly, PolyVectorField, Quotient, _tower_of, determinant,
                   exact_divide, sylvester_resultant)

log = logging.getLogger(__name__)

SEVENTH_BY_RESULTANT = 'resultant'
SEVENTH_BY_COORDINATE_PLANES = 'coordinate-planes'

# cross-term monomials of each component, in theta order
_CROSS_TERMS = [(1, 1, 0), (0, 1, 1), (1, 0, 1)]


class GammaSpec(object):
    '''Rows of gamma are the prescribed idempotents v1, v2, v3'''

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise SchemaError('gamma must be a 3x3 matrix')
        tower = _tower_of([c for r in rows for c in r])
        self.tower = tower
        self.rows = tuple(tuple(promote(c, tower) for c in r) for r in rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return 'GammaSpec(%s)' % [[str(c) for c in r] for r in self.rows]

    def matrix_A(self):
        A = np.empty((3, 3), dtype=object)
        for i, (a, b, c) in enumerate(self.rows):
            A[i] = [a * b, b * c, c * a]
        return A

    def as_dict(self):
        return {'tower': list(self.tower.discriminants),
                'gamma': [vector_to_json(r) for r in self.rows]}


class DistinguishedField(object):
    '''
    A constructed distinguished field with its prescribed idempotents

    idempotents lists e1, e2, e3, v1, v2, v3 in that order; seventh is set by
    seventh_idempotent.
    '''

    def __init__(self, gamma, theta, field):
        self.gamma = gamma
        self.theta = tuple(theta)
        self.field = field
        self.tower = field.tower
        one, zero = self.tower.one(), self.tower.zero()
        units = [tuple(one if i == j else zero for j in range(3)) for i in range(3)]
        self.idempotents = units + [tuple(r) for r in gamma.rows]
        self.seventh = None
        self.seventh_method = None

    def __repr__(self):
        return 'DistinguishedField(%r)' % (self.gamma,)

    def all_idempotents(self):
        if self.seventh is None:
            return list(self.idempotents)
        return list(self.idempotents) + [self.seventh]

    def as_dict(self):
        ctx = ParseContext(3, self.tower)
        d = {'gamma': self.gamma.as_dict(),
             'theta': vector_to_json(self.theta),
             'components': [print_poly(c, ctx) for c in self.field.components],
             'idempotents': [vector_to_json(v) for v in self.idempotents]}
        if self.seventh is not None:
            d['seventh'] = vector_to_json(self.seventh)
            d['seventh_method'] = self.seventh_method
        return d


def is_idempotent(p, v):
    v = list(v)
    return any(not c.is_zero() for c in v) and \
        all(a == b for a, b in zip(p.evaluate(v), v))


def proportional(u, v):
    return all(u[i] * v[j] == u[j] * v[i] for i in range(3) for j in range(i + 1, 3))


def _field_from_theta(theta, tower):
    comps = []
    for k in range(3):
        sq = [0, 0, 0]
        sq[k] = 2
        terms = {tuple(sq): 1}
        for t, mono in zip(theta[3 * k:3 * k + 3], _CROSS_TERMS):
            terms[mono] = t
        comps.append(MPoly(3, terms, tower))
    return PolyVectorField(comps)


def construct_distinguished(gamma):
    '''
    Distinguished field with idempotents e1, e2, e3 and the rows of gamma

    For each output coordinate k the off-diagonal values w_ij = phat(e_i, e_j)_k
    of the symmetric bilinear form solve 2A w = (gamma_ik - gamma_ik^2)_i;
    the cross-term coefficients are theta = 2w.
    '''
    if not isinstance(gamma, GammaSpec):
        gamma = GammaSpec(gamma)
    tower = gamma.tower
    A = gamma.matrix_A()
    det = determinant(A)
    if det.is_zero():
        raise SingularA('the matrix A of products gamma_ij gamma_ik is singular')
    twoA = np.array([[2 * a for a in row] for row in A], dtype=object)
    theta = []
    for k in range(3):
        rhs = [gamma[i, k] - gamma[i, k] * gamma[i, k] for i in range(3)]
        w = solve_linear(twoA, rhs)
        theta.extend(2 * promote(c, tower) for c in w)
    field = _field_from_theta(theta, tower)
    df = DistinguishedField(gamma, theta, field)
    for v in df.idempotents:
        if not is_idempotent(field, v):
            raise VerificationFailed('constructed field does not fix %s'
                                     % [str(c) for c in v])
    log.debug('constructed distinguished field over %r', tower)
    return df


def theta_vector(df):
    '''theta_1..theta_9: x1x2, x2x3, x3x1 coefficients of p1, p2, p3'''
    return list(df.theta)


######################################################################
# Seventh idempotent

def _elimination_system(df):
    '''
    The A, B, C forms of p(x) - x in (x2, x3) and the two equations left
    after substituting x1 = -B2/B1
    '''
    t = df.theta
    tower = df.tower
    x2, x3 = MPoly.var(2, 0, tower), MPoly.var(2, 1, tower)
    one = MPoly.constant(2, 1, tower)
    forms = {
        'A1': x2.scale(t[0]) + x3.scale(t[2]) - one,
        'A2': (x2 * x3).scale(t[1]),
        'B1': x2.scale(t[3]) + x3.scale(t[5]),
        'B2': x2 * x2 - x2 + (x2 * x3).scale(t[4]),
        'C1': x2.scale(t[6]) + x3.scale(t[8]),
        'C2': x3 * x3 - x3 + (x2 * x3).scale(t[7]),
    }
    A1, A2, B1, B2, C1, C2 = [forms[k] for k in ('A1', 'A2', 'B1', 'B2', 'C1', 'C2')]
    E1 = B1 * C2 - C1 * B2
    E2 = B2 * B2 - A1 * B1 * B2 + A2 * B1 * B1
    return forms, E1, E2


def _fourth_root(R, shape, known, label):
    '''
    Divide the resultant by its expected factors and recover the remaining
    root of the monic quartic from the sum of its roots
    '''
    if R.degree() != 12:
        raise DegenerateFactorization('resultant in %s has degree %s, expected 12'
                                      % (label, R.degree()))
    res = exact_divide(R, shape)
    if not isinstance(res, Quotient) or res.q.degree() != 4:
        raise DegenerateFactorization('resultant in %s lacks the expected factors'
                                      % label)
    T4 = res.q.monic()
    tower = T4.tower
    x = MPoly.var(1, 0, tower)
    known_part = MPoly.constant(1, 1, tower)
    for g in known:
        known_part = known_part * (x - g)
    if not isinstance(exact_divide(T4, known_part), Quotient):
        raise DegenerateFactorization('the quartic in %s does not vanish at the '
                                      'prescribed coordinates' % label)
    s = -T4.coeff((3,))
    for g in known:
        s = s - g
    log.debug('fourth root in %s: %s', label, s)
    return s


def _seventh_by_resultant(df):
    t = df.theta
    b11, b12, b13 = t[3], t[5], t[4]
    if b12.is_zero():
        raise DegenerateFactorization('b12 vanishes: x1 = -B2/B1 leaves a common '
                                      'factor and the resultant is zero')
    forms, E1, E2 = _elimination_system(df)
    tower = df.tower
    x = MPoly.var(1, 0, tower)
    lin = b11 * b13 - b12

    R3 = sylvester_resultant(E1, E2, 0).remap(1, [None, 0])
    shape3 = x ** 5 * (x - 1) * (x.scale(lin) - b11) ** 2
    s3 = _fourth_root(R3, shape3, [df.gamma[i, 2] for i in range(3)], 'x3')

    R2 = sylvester_resultant(E1, E2, 1).remap(1, [0, None])
    shape2 = x ** 5 * (x - 1) * (x.scale(lin) + b12) ** 2
    s2 = _fourth_root(R2, shape2, [df.gamma[i, 1] for i in range(3)], 'x2')

    point = (s2, s3)
    B1v = forms['B1'].evaluate(point)
    if not B1v.is_zero():
        return -forms['B2'].evaluate(point) / B1v, s2, s3
    C1v = forms['C1'].evaluate(point)
    if not C1v.is_zero():
        return -forms['C2'].evaluate(point) / C1v, s2, s3
    raise B1Vanishes('B1 and C1 both vanish at (s2, s3) = (%s, %s)' % (s2, s3))


def _coordinate_plane_class(df):
    t = df.theta
    return t[1].is_zero() and t[5].is_zero() and t[6].is_zero()


def _seventh_by_coordinate_planes(df):
    '''
    When x_i divides p_i for each i, an idempotent off the coordinate planes
    solves the linear system p_i(x)/x_i = 1
    '''
    t = df.theta
    one = df.tower.one()
    M = [[one, t[0], t[2]],
         [t[3], one, t[4]],
         [t[8], t[7], one]]
    try:
        return tuple(solve_linear(M, [one, one, one]))
    except DivisionByZero:
        raise DegenerateFactorization('the coordinate-plane system is singular')


def seventh_idempotent(df):
    '''
    The idempotent not among e1, e2, e3, v1, v2, v3

    s3 and s2 come from resultants of the eliminated system: after dividing
    out the factors belonging to e1, e2, e3 and to the common zeros of B1 and
    B2, the remaining quartic has the prescribed third (second) coordinates
    as three of its roots, and its x^3 coefficient gives the fourth.  Then
    s1 = -B2(s2, s3)/B1(s2, s3).  When every x_i divides p_i the eliminated
    equations share the factor x2 and the linear system on the coordinate
    planes is solved instead.  The result is always checked exactly, and a
    candidate that repeats a prescribed idempotent is rejected.
    '''
    try:
        s = _seventh_by_resultant(df)
        method = SEVENTH_BY_RESULTANT
    except DegenerateFactorization:
        if not _coordinate_plane_class(df):
            raise
        s = _seventh_by_coordinate_planes(df)
        method = SEVENTH_BY_COORDINATE_PLANES
    s = tuple(promote(c, df.tower) for c in s)
    if not is_idempotent(df.field, s):
        raise VerificationFailed('candidate %s is not an idempotent' % [str(c) for c in s])
    if any(proportional(s, v) for v in df.idempotents):
        raise VerificationFailed('candidate %s repeats a prescribed idempotent'
                                 % [str(c) for c in s])
    df.seventh = s
    df.seventh_method = method
    log.info('seventh idempotent by %s', method)
    return s


######################################################################
# Sampling

STAGES = ('det_nonzero', 'constructed', 'seventh_found', 'seven_distinct')
PROPERTY_E_ERROR = 'Error'


def _sample_gamma(rng, coeff_range, zeros):
    values = np.concatenate([np.arange(-coeff_range, 0), np.arange(1, coeff_range + 1)])
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            if (i, j) in zeros:
                row.append(RATIONALS.zero())
            else:
                num, den = rng.choice(values, size=2)
                row.append(RATIONALS(Fraction(int(num), int(den))))
        rows.append(row)
    return rows


def _trial(rows, precision):
    '''Outcome of one sampled gamma: the stages passed and the verdict'''
    out = {'passed': [], 'verdict': None, 'failure': None}
    try:
        gamma = GammaSpec(rows)
        if determinant(gamma.matrix_A()).is_zero():
            out['failure'] = 'SingularA'
            return out
        out['passed'].append('det_nonzero')
        df = construct_distinguished(gamma)
        out['passed'].append('constructed')
        seventh_idempotent(df)
        out['passed'].append('seventh_found')
        lines = df.all_idempotents()
        check_distinct(df.field, lines)
        out['passed'].append('seven_distinct')
        try:
            report = property_e_report(df.field, lines, precision)
        except (ExtensionTooDeep, VerificationFailed) as err:
            out['verdict'] = PROPERTY_E_ERROR
            out['failure'] = err.kind
            return out
        out['verdict'] = type(report.verdict).__name__
    except InvsurfError as err:
        out['failure'] = err.kind
    return out


def sample_genericity(count, coeff_range=10, seed=0, inject=(), zeros=(),
                      precision=DEFAULT_PRECISION):
    '''
    Seeded experiment on how often random gamma give seven idempotents and
    property E

    gamma entries are p/q with p and q drawn uniformly from
    [-coeff_range, coeff_range] without 0; entries listed in zeros are set to
    0.  Matrices in inject are used for the first trials.  Failures are
    tallied by error kind, never raised.
    A trial whose property E analysis fails keeps the stages it passed and
    is tallied under the verdict 'Error'.
    '''
    if count < 1:
        raise InvalidParameter('count must be positive, got %d' % count)
    if coeff_range < 1:
        raise InvalidParameter('coeff_range must be positive, got %d' % coeff_range)
    rng = np.random.default_rng(seed)
    zeros = set(tuple(z) for z in zeros)
    trials = [list(g) for g in inject][:count]
    while len(trials) < count:
        trials.append(_sample_gamma(rng, coeff_range, zeros))

    stages = Counter()
    verdicts = Counter()
    failures = Counter()
    for rows in trials:
        out = _trial(rows, precision)
        stages.update(out['passed'])
        if out['verdict'] is not None:
            verdicts[out['verdict']] += 1
        if out['failure'] is not None:
            failures[out['failure']] += 1
    log.info('sampled %d distinguished fields: %s', count, dict(stages))
    return {'count': count,
            'seed': seed,
            'coeff_range': coeff_range,
            'injected': min(len(inject), count),
            'zeros': sorted(list(z) for z in zeros),
            'stages': dict((s, stages[s]) for s in STAGES),
            'fractions': dict((s, stages[s] / count) for s in STAGES),
            'property_e': dict(verdicts),
            'failures': dict(failures)}


def sqrt235_gamma():
    '''gamma of the worked example over Q(sqrt2, sqrt3, sqrt5)'''
    tower = create_tower([2, 3, 5])
    r2, r3, r5 = tower.gens()
    zero = tower.zero()
    return GammaSpec([[r2, r3, zero], [zero, r3, r5], [r2, zero, r5]])


if __name__ == '__main__':
    df = construct_distinguished(sqrt235_gamma())
    ctx = ParseContext(3, df.tower)
    for k, c in enumerate(df.field.components):
        print('p%d = %s' % (k + 1, print_poly(c, ctx)))
    s = seventh_idempotent(df)
    print('seventh idempotent (%s):' % df.seventh_method)
    for k, c in enumerate(s):
        print('  s%d = %s' % (k + 1, value_to_json(c)['decimal']))
    report = property_e_report(df.field, df.all_idempotents())
    print('property E:', report.verdict)
