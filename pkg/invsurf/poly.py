'''
Sparse multivariate polynomials and polynomial vector fields

Polynomials are dictionaries from exponent tuples to nonzero FieldElem
coefficients of one tower.  The term order is graded reverse lexicographic
everywhere (printing, leading terms, division).

Contains
--------

Polynomials:
    p = MPoly(nvars, {(2, 0, 0): 1, (1, 1, 0): Fraction(3, 2)})
    x1, x2, x3 = variables(3)
    p.degree(), p.parts(), p.diff(i), p.evaluate(point), p.compose(subs)

Vector fields:
    f = PolyVectorField([p1, p2, p3])
    f.m, f.parts, f.top(), f.jacobian_at(v)

Operations:
    lie_derivative(f, psi)
    divergence(f)
    exact_divide(psi, phi)      ->  Quotient(q) | NotDivisible()
    sylvester_resultant(p, q, var)
    char_poly(M)
    determinant(M)

'''
from __future__ import absolute_import, division, print_function

import logging
from collections import namedtuple
from fractions import Fraction

import numpy as np

from .errors import (DegenerateInVar, DimensionMismatch, UnsupportedDimension,
                     ZeroDivisor)
from .exact import RATIONALS, FieldElem, common_tower, promote

log = logging.getLogger(__name__)

NEG_INF = float('-inf')
MAX_CHARPOLY_SIZE = 4

Quotient = namedtuple('Quotient', 'q')
NotDivisible = namedtuple('NotDivisible', '')


def grevlex_key(exp):
    '''Sort key: larger key means larger monomial in grevlex'''
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _tower_of(values, default=RATIONALS):
    tower = default
    for c in values:
        if isinstance(c, FieldElem):
            tower = common_tower(tower, c.tower)
    return tower


class MPoly(object):
    '''
    Sparse polynomial in nvars variables over a FieldTower

    Coefficients may be given as ints, Fractions or FieldElems; they are
    promoted to one tower (the largest one involved, or the tower argument)
    and zero coefficients are dropped.
    '''
    __slots__ = ('nvars', 'terms', 'tower')

    def __init__(self, nvars, terms=None, tower=None):
        terms = dict(terms or {})
        if tower is None:
            tower = _tower_of(terms.values())
        else:
            tower = _tower_of(terms.values(), tower)
        clean = {}
        for exp, c in terms.items():
            exp = tuple(int(e) for e in exp)
            assert len(exp) == nvars, 'exponent length must equal nvars'
            c = promote(c, tower)
            if not c.is_zero():
                clean[exp] = c
        self.nvars = nvars
        self.terms = clean
        self.tower = tower

    @classmethod
    def _make(cls, nvars, terms, tower):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj.tower = tower
        return obj

    # constructors

    @classmethod
    def constant(cls, nvars, c, tower=None):
        return cls(nvars, {(0,) * nvars: c}, tower)

    @classmethod
    def zero(cls, nvars, tower=RATIONALS):
        return cls._make(nvars, {}, tower)

    @classmethod
    def var(cls, nvars, i, tower=RATIONALS):
        exp = [0] * nvars
        exp[i] = 1
        return cls._make(nvars, {tuple(exp): tower.one()}, tower)

    @classmethod
    def monomial(cls, exp, c=1, tower=None):
        return cls(len(exp), {tuple(exp): c}, tower)

    # predicates and accessors

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    __nonzero__ = __bool__

    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return NEG_INF
        return max(e[i] for e in self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.tower.zero())

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.tower.zero())

    def is_homogeneous(self, degree=None):
        degs = set(sum(e) for e in self.terms)
        if degree is not None:
            return degs <= set([degree])
        return len(degs) <= 1

    def sorted_terms(self, descending=True):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]),
                      reverse=descending)

    def lead_term(self):
        '''(exponent, coefficient) of the grevlex-largest term'''
        assert self.terms, 'zero polynomial has no leading term'
        exp = max(self.terms, key=grevlex_key)
        return exp, self.terms[exp]

    def homogeneous_part(self, k):
        return MPoly._make(self.nvars, dict((e, c) for e, c in self.terms.items()
                                            if sum(e) == k), self.tower)

    def parts(self):
        '''[psi^(0), ..., psi^(r)]; empty for the zero polynomial'''
        d = self.degree()
        if d == NEG_INF:
            return []
        return [self.homogeneous_part(k) for k in range(d + 1)]

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise DimensionMismatch('polynomials in %d and %d variables'
                                        % (self.nvars, other.nvars))
            if other.tower == self.tower:
                return self, other
            tower = common_tower(self.tower, other.tower)
            return self.over(tower), other.over(tower)
        if isinstance(other, (int, Fraction, FieldElem)):
            c = MPoly.constant(self.nvars, other, self.tower)
            if c.tower != self.tower:
                return self.over(c.tower), c
            return self, c
        return None, None

    def over(self, tower):
        if tower == self.tower:
            return self
        return MPoly._make(self.nvars, dict((e, promote(c, tower))
                                            for e, c in self.terms.items()), tower)

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return MPoly._make(a.nvars, terms, a.tower)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._make(self.nvars, dict((e, -c) for e, c in self.terms.items()),
                           self.tower)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if isinstance(c, FieldElem) and c.tower != self.tower:
            tower = common_tower(self.tower, c.tower)
            return self.over(tower).scale(promote(c, tower))
        if not c:
            return MPoly.zero(self.nvars, self.tower)
        return MPoly._make(self.nvars, dict((e, v * c) for e, v in self.terms.items()),
                           self.tower)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.scale(other)
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                p = c1 * c2
                s = terms.get(e)
                terms[e] = p if s is None else s + p
        terms = dict((e, c) for e, c in terms.items() if not c.is_zero())
        return MPoly._make(a.nvars, terms, a.tower)

    __rmul__ = __mul__

    def __pow__(self, k):
        assert isinstance(k, int) and k >= 0, 'only non-negative integer powers'
        result = MPoly.constant(self.nvars, 1, self.tower)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = MPoly.constant(self.nvars, other, self.tower)
        if not isinstance(other, MPoly):
            return NotImplemented
        if other.nvars != self.nvars or set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[e] for e, c in self.terms.items())

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # calculus and substitution

    def diff(self, i):
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = c * e[i]
        return MPoly._make(self.nvars, terms, self.tower)

    def evaluate(self, point):
        '''Value at a point whose entries are field elements or rationals'''
        assert len(point) == self.nvars, 'point has the wrong dimension'
        total = self.tower.zero()
        powers = [{} for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    if k not in powers[i]:
                        powers[i][k] = point[i] ** k
                    term = term * powers[i][k]
            total = total + term
        return total

    __call__ = evaluate

    def substitute(self, i, value):
        '''Replace variable i by a field element; variable i stays unused'''
        terms = {}
        for e, c in self.terms.items():
            d = list(e)
            k = d[i]
            d[i] = 0
            d = tuple(d)
            v = c * (value ** k) if k else c
            terms[d] = terms[d] + v if d in terms else v
        return MPoly(self.nvars, terms, self.tower)

    def compose(self, subs):
        '''self(subs[0], ..., subs[n-1]) for MPolys subs in a common ring'''
        assert len(subs) == self.nvars, 'need one substitute per variable'
        nv = subs[0].nvars
        tower = _tower_of([s.tower.one() for s in subs], self.tower)
        result = MPoly.zero(nv, tower)
        cache = {}
        for e, c in self.terms.items():
            term = MPoly.constant(nv, c, tower)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = subs[i] ** k
                    term = term * cache[(i, k)]
            result = result + term
        return result

    def remap(self, nvars, index):
        '''
        Move variable i to slot index[i] of a ring with nvars variables

        Variables mapped to None must not occur.
        '''
        terms = {}
        for e, c in self.terms.items():
            d = [0] * nvars
            for i, k in enumerate(e):
                if k:
                    assert index[i] is not None, 'dropped variable occurs'
                    d[index[i]] += k
            terms[tuple(d)] = c
        return MPoly._make(nvars, terms, self.tower)

    def coefficients_in(self, i):
        '''{power: MPoly coefficient} viewing self as univariate in variable i'''
        out = {}
        for e, c in self.terms.items():
            d = list(e)
            k = d[i]
            d[i] = 0
            out.setdefault(k, {})[tuple(d)] = c
        return dict((k, MPoly._make(self.nvars, t, self.tower)) for k, t in out.items())

    def univariate_coeffs(self):
        '''Coefficient list [c0, c1, ...] of a polynomial in one variable'''
        assert self.nvars == 1, 'polynomial is not univariate'
        if not self.terms:
            return []
        d = self.degree()
        return [self.coeff((k,)) for k in range(d + 1)]

    def monic(self):
        _, lc = self.lead_term()
        return self.scale(lc.inverse())

    def __repr__(self):
        if not self.terms:
            return 'MPoly(%d, 0)' % self.nvars
        body = ' + '.join('(%s)*x^%s' % (c, list(e)) for e, c in self.sorted_terms())
        return 'MPoly(%d, %s)' % (self.nvars, body)


def variables(nvars, tower=RATIONALS):
    return [MPoly.var(nvars, i, tower) for i in range(nvars)]


def univariate(coeffs, tower=None):
    '''MPoly in one variable from [c0, c1, ...]'''
    return MPoly(1, dict(((k,), c) for k, c in enumerate(coeffs)), tower)


######################################################################
# Vector fields

class PolyVectorField(object):
    '''
    Polynomial vector field f = (f_1, ..., f_n) on n-space

    The degree m is the largest component degree; parts[k] holds the
    homogeneous components f^(k) for k = 0..m.
    '''

    def __init__(self, components):
        components = list(components)
        n = len(components)
        if n < 1:
            raise DimensionMismatch('a vector field needs at least one component')
        for c in components:
            if c.nvars != n:
                raise DimensionMismatch('component in %d variables for a field in '
                                        'dimension %d' % (c.nvars, n))
        tower = _tower_of([c.tower.one() for c in components])
        self.components = tuple(c.over(tower) for c in components)
        self.n = n
        self.tower = tower
        degs = [c.degree() for c in self.components]
        self.m = max(0, max(degs))
        self.parts = [tuple(c.homogeneous_part(k) for c in self.components)
                      for k in range(self.m + 1)]

    def __getitem__(self, i):
        return self.components[i]

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        return isinstance(other, PolyVectorField) and \
            self.components == other.components

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return 'PolyVectorField(n=%d, m=%d)' % (self.n, self.m)

    def top(self):
        '''The homogeneous field f^(m)'''
        return PolyVectorField(self.parts[self.m])

    def is_homogeneous(self):
        return all(c.is_homogeneous(self.m) for c in self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def evaluate(self, point):
        return [c.evaluate(point) for c in self.components]

    __call__ = evaluate

    def jacobian(self):
        return [[c.diff(j) for j in range(self.n)] for c in self.components]

    def jacobian_at(self, point):
        '''Df(point) as a square numpy object array of field elements'''
        J = np.empty((self.n, self.n), dtype=object)
        for i, row in enumerate(self.jacobian()):
            for j, d in enumerate(row):
                J[i, j] = d.evaluate(point)
        return J

    def linear_part(self):
        '''Jacobian at the origin, read off the degree-one terms'''
        J = np.empty((self.n, self.n), dtype=object)
        for i, c in enumerate(self.components):
            for j in range(self.n):
                exp = [0] * self.n
                exp[j] = 1
                J[i, j] = c.coeff(exp)
        return J


######################################################################
# Operations

def lie_derivative(f, psi):
    '''X_f(psi) = sum_i f_i * d(psi)/dx_i'''
    if psi.nvars != f.n:
        raise DimensionMismatch('polynomial in %d variables, field in dimension %d'
                                % (psi.nvars, f.n))
    result = MPoly.zero(f.n, f.tower)
    for i, fi in enumerate(f.components):
        d = psi.diff(i)
        if d:
            result = result + fi * d
    return result


def divergence(f):
    result = MPoly.zero(f.n, f.tower)
    for i, fi in enumerate(f.components):
        result = result + fi.diff(i)
    return result


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def exact_divide(psi, phi):
    '''
    Divide psi by phi with grevlex leading terms

    With a single divisor the remainder is zero exactly when phi divides psi,
    so the loop stops at the first leading term phi cannot absorb.
    '''
    if phi.is_zero():
        raise ZeroDivisor('division by the zero polynomial')
    psi, phi = psi._coerce(phi)
    lexp, lc = phi.lead_term()
    inv = lc.inverse()
    rem = dict(psi.terms)
    quot = {}
    phi_terms = list(phi.terms.items())
    while rem:
        rexp = max(rem, key=grevlex_key)
        if not _divides(lexp, rexp):
            return NotDivisible()
        qexp = tuple(r - l for r, l in zip(rexp, lexp))
        qc = rem[rexp] * inv
        quot[qexp] = qc
        for e, c in phi_terms:
            t = tuple(x + y for x, y in zip(e, qexp))
            v = rem.get(t)
            v = -(c * qc) if v is None else v - c * qc
            if v.is_zero():
                rem.pop(t, None)
            else:
                rem[t] = v
    return Quotient(MPoly._make(psi.nvars, quot, psi.tower))


def _exact_quotient(a, b):
    res = exact_divide(a, b)
    assert isinstance(res, Quotient), 'fraction-free step left a remainder'
    return res.q


def _bareiss_det(M, zero, divide):
    '''
    Fraction-free determinant of a square list-of-lists matrix

    divide(a, b) must return the exact quotient a / b.  Zero pivots are
    handled by row exchange.
    '''
    M = [list(row) for row in M]
    n = len(M)
    if n == 0:
        return None
    sign = 1
    prev = None
    for k in range(n - 1):
        if not M[k][k]:
            swap = [i for i in range(k + 1, n) if M[i][k]]
            if not swap:
                return zero
            i = swap[0]
            M[k], M[i] = M[i], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num if prev is None else divide(num, prev)
            M[i][k] = zero
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def determinant(M):
    '''Determinant of a square matrix of field elements or MPolys'''
    M = [list(row) for row in np.asarray(M, dtype=object)]
    n = len(M)
    assert all(len(row) == n for row in M), 'matrix must be square'
    sample = M[0][0]
    if isinstance(sample, MPoly):
        return _bareiss_det(M, MPoly.zero(sample.nvars, sample.tower), _exact_quotient)
    tower = _tower_of([x for row in M for x in row if isinstance(x, FieldElem)])
    M = [[promote(x, tower) for x in row] for row in M]
    if n == 1:
        return M[0][0]
    return _bareiss_det(M, tower.zero(), lambda a, b: a / b)


def sylvester_matrix(p, q, var):
    '''Sylvester matrix of p and q as univariate polynomials in variable var'''
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp < 1 or dq < 1:
        raise DegenerateInVar('both polynomials must involve variable %d '
                              '(degrees %s and %s)' % (var, dp, dq))
    p, q = p._coerce(q)
    pc, qc = p.coefficients_in(var), q.coefficients_in(var)
    zero = MPoly.zero(p.nvars, p.tower)
    size = dp + dq
    S = [[zero] * size for _ in range(size)]
    for r in range(dq):
        for k in range(dp + 1):
            S[r][r + dp - k] = pc.get(k, zero)
    for r in range(dp):
        for k in range(dq + 1):
            S[dq + r][r + dq - k] = qc.get(k, zero)
    return S


def sylvester_resultant(p, q, var):
    '''
    Resultant of p and q with respect to variable var

    Determinant of the Sylvester matrix, computed fraction-free over the
    polynomial ring in the remaining variables.  The result lives in the same
    ring as p and q and does not involve var.
    '''
    S = sylvester_matrix(p, q, var)
    log.debug('resultant in x%d: Sylvester matrix of size %d', var + 1, len(S))
    return _bareiss_det(S, S[0][0] * 0, _exact_quotient)


def char_poly(M):
    '''det(tI - M) as a monic MPoly in one variable t'''
    M = np.asarray(M, dtype=object)
    n = M.shape[0]
    assert M.shape == (n, n), 'matrix must be square'
    if n > MAX_CHARPOLY_SIZE:
        raise UnsupportedDimension('characteristic polynomials are limited to '
                                   '%dx%d matrices' % (MAX_CHARPOLY_SIZE, MAX_CHARPOLY_SIZE))
    tower = _tower_of([x for x in M.flat if isinstance(x, FieldElem)])
    t = MPoly.var(1, 0, tower)
    entries = [[(t if i == j else 0) - MPoly.constant(1, M[i, j], tower)
                for j in range(n)] for i in range(n)]
    if n == 1:
        return entries[0][0]
    return _bareiss_det(entries, MPoly.zero(1, tower), _exact_quotient)
