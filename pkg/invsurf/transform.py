'''
Homogenization, Poincare transforms and reduction of dimension

A Poincare chart at a direction v moves v to e1 by a fixed linear change of
coordinates T and then looks at the hyperplane x1 = 1 of the homogenized
system.  The new variables x2, ..., x_{n+1} occupy slots 0..n-1 of the
resulting polynomials; slot n-1 is the variable at infinity.

Contains
--------

    chart = make_chart([1, 2, 0])
    homogenize(psi)
    poincare_poly(psi, chart)
    poincare_field(f, chart)
    reduce_dim(p)
    reduce_dim_alpha(p, alpha)
    reduction_infinity_free(p)   ->  Free | HasPointsAtInfinity | Degenerate

'''
from __future__ import absolute_import, division, print_function

import logging
from collections import namedtuple

import numpy as np

from .errors import (DimensionMismatch, NotHomogeneous, UnsupportedDimension,
                     ZeroPolynomial, ZeroVector)
from .exact import promote
from .parse_io import vector_to_json
from .poly import MPoly, PolyVectorField, _tower_of, sylvester_resultant

log = logging.getLogger(__name__)

Free = namedtuple('Free', '')
HasPointsAtInfinity = namedtuple('HasPointsAtInfinity', 'points')
Degenerate = namedtuple('Degenerate', 'reason')


class PoincareChart(object):
    '''
    Linear change of coordinates T with T v = e1

    The inverse has columns [v, e_j (j != pivot)], where pivot is the first
    nonzero coordinate of v, so T is a shear-and-scale when v1 != 0 and
    involves a permutation otherwise.
    '''

    def __init__(self, direction):
        direction = list(direction)
        n = len(direction)
        tower = _tower_of(direction)
        v = [promote(c, tower) for c in direction]
        nonzero = [i for i, c in enumerate(v) if not c.is_zero()]
        if not nonzero:
            raise ZeroVector('the direction of a Poincare chart must be nonzero')
        k = nonzero[0]
        others = [j for j in range(n) if j != k]

        zero, one = tower.zero(), tower.one()
        T_inv = np.empty((n, n), dtype=object)
        T_inv[:, :] = zero
        T_inv[:, 0] = v
        for col, j in enumerate(others, start=1):
            T_inv[j, col] = one

        inv_vk = v[k].inverse()
        T = np.empty((n, n), dtype=object)
        T[:, :] = zero
        T[0, k] = inv_vk
        for row, j in enumerate(others, start=1):
            T[row, j] = one
            T[row, k] = -v[j] * inv_vk

        self.direction = v
        self.n = n
        self.pivot = k
        self.tower = tower
        self.T = T
        self.T_inv = T_inv

    def __repr__(self):
        return 'PoincareChart(%s)' % ', '.join(str(c) for c in self.direction)

    def _linear_subs(self, M, tower):
        n = self.n
        return [MPoly(n, dict(((tuple(1 if c == j else 0 for c in range(n))), M[i, j])
                              for j in range(n)), tower)
                for i in range(n)]

    def pullback(self, psi):
        '''psi o T^-1'''
        tower = _tower_of([self.tower.one()], psi.tower)
        return psi.compose(self._linear_subs(self.T_inv, tower))

    def conjugate(self, f):
        '''T o f o T^-1'''
        tower = _tower_of([self.tower.one()], f.tower)
        subs = self._linear_subs(self.T_inv, tower)
        moved = [c.compose(subs) for c in f.components]
        out = []
        for i in range(self.n):
            comp = MPoly.zero(self.n, tower)
            for j in range(self.n):
                if not self.T[i, j].is_zero():
                    comp = comp + moved[j].scale(self.T[i, j])
            out.append(comp)
        return PolyVectorField(out)

    def as_dict(self):
        return {'direction': vector_to_json(self.direction),
                'pivot': self.pivot,
                'T': [vector_to_json(row) for row in self.T],
                'T_inv': [vector_to_json(row) for row in self.T_inv]}


def make_chart(direction):
    return PoincareChart(direction)


def homogenize(psi, degree=None):
    '''
    Homogenization of psi with respect to a new last variable

    With degree given (at least deg psi) the result is homogeneous of that
    degree, which is how the components of a vector field are homogenized
    together.
    '''
    if psi.is_zero():
        raise ZeroPolynomial('cannot homogenize the zero polynomial')
    r = psi.degree() if degree is None else degree
    assert r >= psi.degree(), 'homogenization degree below the polynomial degree'
    terms = dict((e + (r - sum(e),), c) for e, c in psi.terms.items())
    return MPoly._make(psi.nvars + 1, terms, psi.tower)


def _dehomogenize_first(h):
    '''h(1, x2, ..., x_{n+1}) moved to slots 0..n-1'''
    n1 = h.nvars
    return h.substitute(0, 1).remap(n1 - 1, [None] + list(range(n1 - 1)))


def poincare_poly(psi, chart):
    '''Poincare transform of psi at the chart direction, in x2..x_{n+1}'''
    if psi.is_zero():
        raise ZeroPolynomial('the Poincare transform of 0 is undefined')
    if psi.nvars != chart.n:
        raise DimensionMismatch('polynomial in %d variables, chart in dimension %d'
                                % (psi.nvars, chart.n))
    return _dehomogenize_first(homogenize(chart.pullback(psi)))


def poincare_field(f, chart):
    '''
    Poincare transform of a vector field at the chart direction

    With g the joint homogenization of T o f o T^-1 and G_j = g_j(1, ...),
    the components are -G_1 x_j + G_j for j = 2..n and -G_1 x_{n+1}.  The
    hyperplane at infinity x_{n+1} = 0 is therefore always invariant.
    '''
    if f.is_zero():
        raise ZeroPolynomial('the Poincare transform of the zero field is undefined')
    if f.n != chart.n:
        raise DimensionMismatch('field in dimension %d, chart in dimension %d'
                                % (f.n, chart.n))
    g = chart.conjugate(f)
    n, m = f.n, f.m
    G = [_dehomogenize_first(homogenize(c, m)) if c else MPoly.zero(n, g.tower)
         for c in g.components]
    y = [MPoly.var(n, i, g.tower) for i in range(n)]
    comps = [G[j] - G[0] * y[j - 1] for j in range(1, n)]
    comps.append(-(G[0] * y[n - 1]))
    return PolyVectorField(comps)


def _require_homogeneous(p):
    if not p.is_homogeneous():
        raise NotHomogeneous('the field must be homogeneous of degree %d' % p.m)


def reduce_dim(p):
    '''
    Reduction of a homogeneous field along its scaling symmetry

    q_i(y) = p_i(y, 1) - y_i p_n(y, 1) for i < n, a field in n-1 variables
    whose stationary points are the invariant lines of p with v_n != 0.
    '''
    _require_homogeneous(p)
    n = p.n
    if n < 2:
        raise UnsupportedDimension('reduction needs dimension at least 2')
    index = list(range(n - 1)) + [None]
    P = [c.substitute(n - 1, 1).remap(n - 1, index) for c in p.components]
    y = [MPoly.var(n - 1, i, p.tower) for i in range(n - 1)]
    return PolyVectorField([P[i] - y[i] * P[n - 1] for i in range(n - 1)])


def reduce_dim_alpha(p, alpha):
    '''
    Q(x) = alpha(x) p(x) - alpha(p(x)) x, which has alpha as a first integral

    For alpha = e_n and x_n = 1 the first n-1 components agree with
    reduce_dim(p).
    '''
    _require_homogeneous(p)
    alpha = list(alpha)
    if len(alpha) != p.n:
        raise DimensionMismatch('alpha has %d entries, field dimension is %d'
                                % (len(alpha), p.n))
    tower = _tower_of(alpha, p.tower)
    alpha = [promote(a, tower) for a in alpha]
    if all(a.is_zero() for a in alpha):
        raise ZeroVector('alpha must be a nonzero linear form')
    n = p.n
    x = [MPoly.var(n, i, tower) for i in range(n)]
    comps = [c.over(tower) for c in p.components]
    ax = MPoly.zero(n, tower)
    ap = MPoly.zero(n, tower)
    for a, xi, pi in zip(alpha, x, comps):
        if not a.is_zero():
            ax = ax + xi.scale(a)
            ap = ap + pi.scale(a)
    return PolyVectorField([ax * pi - ap * xi for xi, pi in zip(x, comps)])


def _binary_top_forms(p):
    '''h_i^(m)(w1, w2) = p_i(w1, w2, 0) as polynomials in two variables'''
    m = p.m
    out = []
    for c in p.components:
        top = dict((e[:2], v) for e, v in c.terms.items() if e[2] == 0 and sum(e) == m)
        out.append(MPoly(2, top, p.tower))
    return out


def reduction_infinity_free(p):
    '''
    Decide whether the reduced system of a homogeneous 3D field has
    stationary points at infinity

    The binary forms F = w1 h2 - w2 h1 and H = h3 (top-degree parts of the
    dehomogenized components) have a common projective zero exactly when it
    does.  The point w1 = 0 is checked directly and the rest through the
    resultant of F(1, t) and H(1, t).
    '''
    _require_homogeneous(p)
    if p.n != 3:
        raise UnsupportedDimension('the infinity check is implemented for n = 3')
    h1, h2, h3 = _binary_top_forms(p)
    w1, w2 = MPoly.var(2, 0, p.tower), MPoly.var(2, 1, p.tower)
    F = w1 * h2 - w2 * h1
    H = h3
    if F.is_zero():
        return Degenerate('F vanishes identically')
    if H.is_zero():
        return Degenerate('H vanishes identically')

    points = []
    at_w1_zero = (p.tower.zero(), p.tower.one())
    if F.evaluate(at_w1_zero).is_zero() and H.evaluate(at_w1_zero).is_zero():
        points.append('w1=0')

    f_t = F.substitute(0, 1).remap(1, [None, 0])
    h_t = H.substitute(0, 1).remap(1, [None, 0])
    if f_t.degree() >= 1 and h_t.degree() >= 1:
        res = sylvester_resultant(f_t, h_t, 0)
        log.debug('infinity check: resultant %s', res.constant_term())
        if res.is_zero():
            points.append('w1!=0')
    if points:
        return HasPointsAtInfinity(points)
    return Free()

