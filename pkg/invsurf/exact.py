'''
Exact arithmetic over the rationals and multiquadratic number fields

A multiquadratic tower Q(sqrt d1, ..., sqrt dk) is stored by its ordered list
of square-free discriminants.  Elements carry 2**k rational coordinates over
the subset-product basis in binary-counter order, so the basis of [2, 3, 5]
reads 1, sqrt2, sqrt3, sqrt2*sqrt3, sqrt5, sqrt2*sqrt5, sqrt3*sqrt5,
sqrt2*sqrt3*sqrt5.  One further quadratic layer u + v*sqrt(A) can be adjoined
on top of a tower with QuadExt.

Contains
--------

Towers and elements:
    K = create_tower([2, 3, 5])
    s2, s3, s5 = K.gens()
    x = elem_arith('div', K(1), K(1) + s2)
    x = promote(y, K)

Square roots and the dynamic quadratic layer:
    sqrt_in_field(a)  ->  Square(root) | NotSquare(precision_bits)
    L = QuadExt(A)
    lam = L(u, v)

Rational linear algebra:
    rational_kernel(M)
    rank(M)
    solve_linear(M, rhs)

Serialization:
    elem_to_json(x), elem_from_json(d), to_decimal(x)

Usage Examples
--------------

    >>> K = create_tower([2, 3])
    >>> s2, s3 = K.gens()
    >>> s2 * s3 == K.basis_element(3)
    True
    >>> sqrt_in_field(5 + 2*s2*s3)
    Square(root=sqrt2 + sqrt3)
    >>> rational_kernel([[1, 2], [2, 4]])
    [[Fraction(-2, 1), Fraction(1, 1)]]

'''
from __future__ import absolute_import, division, print_function

import itertools
import logging
import warnings
from collections import namedtuple
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt

import mpmath
import numpy as np
import sympy

from .errors import (DivisionByZero, NotSquareFree, RedundantGenerator,
                     SchemaError, SquareRadicand, TowerMismatch,
                     TowerTooHigh, ZeroRadicand)

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 256
MAX_TOWER_HEIGHT = 4

_ZERO = Fraction(0)
_ONE = Fraction(1)

Square = namedtuple('Square', 'root')
NotSquare = namedtuple('NotSquare', 'precision_bits')


def as_fraction(value):
    '''Return value as a Fraction; accepts int, Fraction and "p/q" strings'''
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError('not a rational literal: %r' % value)
    if isinstance(value, FieldElem) and value.is_rational():
        return value.rational()
    raise TypeError('cannot interpret %r as a rational number' % (value,))


def _is_int_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


def _popcount(mask):
    return bin(mask).count('1')


######################################################################
# Towers

class FieldTower(object):
    '''
    The multiquadratic field Q(sqrt d1, ..., sqrt dk), k <= MAX_TOWER_HEIGHT

    Use create_tower to build one: the constructor does not validate the
    discriminants.  Towers compare equal when their discriminant lists do.
    '''

    def __init__(self, discriminants):
        self.discriminants = tuple(int(d) for d in discriminants)
        self.height = len(self.discriminants)
        self.degree = 2 ** self.height
        self._embedding_cache = {}
        # _factor[a][b]: rational factor of basis(a)*basis(b) = f * basis(a ^ b)
        self._factor = [[self._common_factor(a, b) for b in range(self.degree)]
                        for a in range(self.degree)]

    def _common_factor(self, a, b):
        f = 1
        for i, d in enumerate(self.discriminants):
            if (a & b) >> i & 1:
                f *= d
        return f

    def __eq__(self, other):
        return isinstance(other, FieldTower) and \
            self.discriminants == other.discriminants

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('FieldTower', self.discriminants))

    def __repr__(self):
        if not self.discriminants:
            return 'FieldTower(QQ)'
        return 'FieldTower(%s)' % list(self.discriminants)

    def __call__(self, value=0):
        '''Coerce an int, Fraction, "p/q" string or subtower element'''
        if isinstance(value, FieldElem):
            return promote(value, self)
        return self.rational(as_fraction(value))

    def rational(self, q):
        coords = [_ZERO] * self.degree
        coords[0] = Fraction(q)
        return FieldElem._make(self, tuple(coords))

    def zero(self):
        return self.rational(_ZERO)

    def one(self):
        return self.rational(_ONE)

    def basis_element(self, mask):
        assert 0 <= mask < self.degree, 'basis index out of range'
        coords = [_ZERO] * self.degree
        coords[mask] = _ONE
        return FieldElem._make(self, tuple(coords))

    def gen(self, i):
        '''Return sqrt(d_i)'''
        return self.basis_element(1 << i)

    def gens(self):
        return [self.gen(i) for i in range(self.height)]

    def basis_radicand(self, mask):
        return self._common_factor(mask, mask)

    def basis_label(self, mask):
        '''Printable name of a basis element, e.g. "sqrt2*sqrt5"'''
        if mask == 0:
            return '1'
        return '*'.join(surd_symbol(d) for i, d in enumerate(self.discriminants)
                        if mask >> i & 1)

    def index_map(self, sub):
        '''Positions of the generators of sub inside self, or None'''
        try:
            return [self.discriminants.index(d) for d in sub.discriminants]
        except ValueError:
            return None

    def contains(self, sub):
        return self.index_map(sub) is not None

    def embedding_values(self, prec=DEFAULT_PRECISION):
        '''
        Values of the basis under every embedding, as mpmath numbers

        Embedding e (a bit mask) sends sqrt(d_i) to -sqrt(d_i) when bit i of e
        is set.  Returns an array vals[e][b].
        '''
        cache = self._embedding_cache
        if prec in cache:
            return cache[prec]
        with mpmath.workprec(prec):
            roots = [mpmath.sqrt(mpmath.mpf(d)) for d in self.discriminants]
            base = []
            for b in range(self.degree):
                v = mpmath.mpf(1)
                for i, r in enumerate(roots):
                    if b >> i & 1:
                        v *= r
                base.append(v)
            vals = [[base[b] * (-1 if _popcount(b & e) % 2 else 1)
                     for b in range(self.degree)]
                    for e in range(self.degree)]
        cache[prec] = vals
        return vals


def surd_symbol(d):
    '''Parser/printer symbol for sqrt(d): sqrt5, or sqrtm1 for sqrt(-1)'''
    return 'sqrt%d' % d if d > 0 else 'sqrtm%d' % (-d)


def create_tower(discriminants=()):
    '''
    Build and validate the tower Q(sqrt d1, ..., sqrt dk)

    Each generator must be square-free, differ from 0 and 1, and its square
    root must not already lie in the tower built from the previous ones.
    The latter holds exactly when d_j times the product over some subset of
    the earlier discriminants is a perfect square.
    '''
    discriminants = [int(d) for d in discriminants]
    if len(discriminants) > MAX_TOWER_HEIGHT:
        raise TowerTooHigh('at most %d generators are supported, got %d'
                           % (MAX_TOWER_HEIGHT, len(discriminants)))
    for j, d in enumerate(discriminants):
        if d in (0, 1):
            raise NotSquareFree('discriminant %d is not allowed' % d, location=j)
        previous = discriminants[:j]
        for k in range(len(previous) + 1):
            for subset in itertools.combinations(previous, k):
                if _is_int_square(d * reduce(lambda x, y: x * y, subset, 1)):
                    raise RedundantGenerator(
                        'sqrt(%d) already lies in Q(%s)'
                        % (d, ', '.join('sqrt(%d)' % p for p in previous)),
                        location=j)
        if any(e > 1 for e in sympy.factorint(abs(d)).values()):
            raise NotSquareFree('%d is not square-free' % d, location=j)
    log.debug('created tower %s', discriminants)
    return FieldTower(discriminants)


RATIONALS = FieldTower(())


def common_tower(t1, t2):
    if t1 == t2 or t2.contains(t1):
        return t2
    if t1.contains(t2):
        return t1
    raise TowerMismatch('elements of %r and %r cannot be combined' % (t1, t2))


def promote(x, tower):
    '''Embed an element of a subtower (or a rational) into tower'''
    if not isinstance(x, FieldElem):
        return tower(x)
    if x.tower == tower:
        return x
    positions = tower.index_map(x.tower)
    if positions is None:
        raise TowerMismatch('%r is not a subtower of %r' % (x.tower, tower))
    coords = [_ZERO] * tower.degree
    for mask, c in enumerate(x.coords):
        if c:
            big = 0
            for i, p in enumerate(positions):
                if mask >> i & 1:
                    big |= 1 << p
            coords[big] = c
    return FieldElem._make(tower, tuple(coords))


######################################################################
# Elements

class FieldElem(object):
    '''
    Element of a FieldTower, stored as exact rational coordinates

    Instances are immutable.  Arithmetic accepts ints, Fractions and elements
    of subtowers, which are promoted first.
    '''
    __slots__ = ('tower', 'coords')

    def __init__(self, tower, coords):
        coords = tuple(as_fraction(c) for c in coords)
        if len(coords) != tower.degree:
            raise SchemaError('expected %d coordinates for %r, got %d'
                              % (tower.degree, tower, len(coords)))
        object.__setattr__(self, 'tower', tower)
        object.__setattr__(self, 'coords', coords)

    @classmethod
    def _make(cls, tower, coords):
        obj = object.__new__(cls)
        object.__setattr__(obj, 'tower', tower)
        object.__setattr__(obj, 'coords', coords)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError('FieldElem is immutable')

    def __reduce__(self):
        return (FieldElem, (self.tower, self.coords))

    # coercion

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.tower == self.tower:
                return self, other
            tower = common_tower(self.tower, other.tower)
            return promote(self, tower), promote(other, tower)
        if isinstance(other, (int, Fraction, np.integer)):
            return self, self.tower.rational(other)
        return None, None

    # predicates

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    __nonzero__ = __bool__

    def is_rational(self):
        return not any(self.coords[1:])

    def rational(self):
        assert self.is_rational(), 'element is not rational'
        return self.coords[0]

    # arithmetic

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return FieldElem._make(a.tower, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem._make(self.tower, tuple(-x for x in self.coords))

    def __pos__(self):
        return self

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return FieldElem._make(a.tower, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b - a

    def scale(self, q):
        return FieldElem._make(self.tower, tuple(q * x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if b.is_rational():
            return a.scale(b.coords[0])
        if a.is_rational():
            return b.scale(a.coords[0])
        factor = a.tower._factor
        out = [_ZERO] * a.tower.degree
        bnz = [(j, y) for j, y in enumerate(b.coords) if y]
        for i, x in enumerate(a.coords):
            if x:
                fi = factor[i]
                for j, y in bnz:
                    out[i ^ j] += fi[j] * x * y
        return FieldElem._make(a.tower, tuple(out))

    __rmul__ = __mul__

    def multiplication_matrix(self):
        '''Matrix of x -> self*x on the coordinate vectors'''
        deg = self.tower.degree
        factor = self.tower._factor
        M = np.full((deg, deg), _ZERO, dtype=object)
        for j in range(deg):
            for c, bc in enumerate(self.coords):
                if bc:
                    M[c ^ j, j] += bc * factor[c][j]
        return M

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero('division by zero in %r' % (self.tower,))
        if self.is_rational():
            return self.tower.rational(1 / self.coords[0])
        rhs = [_ZERO] * self.tower.degree
        rhs[0] = _ONE
        return FieldElem._make(self.tower,
                               tuple(solve_linear(self.multiplication_matrix(), rhs)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero('division by zero')
            return self.scale(1 / Fraction(other))
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if b.is_zero():
            raise DivisionByZero('division by zero in %r' % (b.tower,))
        if b.is_rational():
            return a.scale(1 / b.coords[0])
        x = solve_linear(b.multiplication_matrix(), list(a.coords))
        return FieldElem._make(a.tower, tuple(x))

    __div__ = __truediv__

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b / a

    __rdiv__ = __rtruediv__

    def __pow__(self, k):
        assert isinstance(k, int), 'only integer powers are supported'
        if k < 0:
            return self.inverse() ** (-k)
        result = self.tower.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return other == self
        try:
            a, b = self._coerce(other)
        except TowerMismatch:
            return False
        if a is None:
            return NotImplemented
        return a.coords == b.coords

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(frozenset((self.tower.basis_radicand(m), c)
                              for m, c in enumerate(self.coords) if c))

    # numerics and printing

    def embed(self, embedding=0, prec=DEFAULT_PRECISION):
        '''Value under the given embedding (0 = all square roots positive)'''
        vals = self.tower.embedding_values(prec)[embedding]
        with mpmath.workprec(prec):
            return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * v
                               for c, v in zip(self.coords, vals) if c)

    def __float__(self):
        return float(mpmath.re(self.embed(prec=64)))

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return format_elem(self)


def format_elem(x):
    '''Plain text such as 1/2 + 3*sqrt2 - sqrt2*sqrt3'''
    parts = []
    for mask, c in enumerate(x.coords):
        if not c:
            continue
        sign = '-' if c < 0 else '+'
        mag = abs(c)
        if mask == 0:
            body = str(mag)
        elif mag == 1:
            body = x.tower.basis_label(mask)
        elif mag.denominator == 1:
            body = '%s*%s' % (mag, x.tower.basis_label(mask))
        else:
            body = '(%s)*%s' % (mag, x.tower.basis_label(mask))
        parts.append((sign, body))
    if not parts:
        return '0'
    text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, body in parts[1:]:
        text += ' %s %s' % (sign, body)
    return text


def elem_arith(op, a, b):
    '''Apply op in {add, sub, mul, div} to two tower elements'''
    ops = {'add': lambda x, y: x + y,
           'sub': lambda x, y: x - y,
           'mul': lambda x, y: x * y,
           'div': lambda x, y: x / y}
    if op not in ops:
        raise ValueError('op must be one of add, sub, mul, div')
    if not isinstance(a, FieldElem):
        a = (b.tower if isinstance(b, FieldElem) else RATIONALS)(a)
    return ops[op](a, b)


######################################################################
# Square roots

def _reconstruct_rational(x, prec):
    '''Rational with small height close to x, found by integer relation'''
    with mpmath.workprec(prec):
        if isinstance(x, mpmath.mpc):
            if abs(x.imag) > mpmath.mpf(2) ** (-(prec // 2)):
                return None
            x = x.real
        if abs(x) < mpmath.mpf(2) ** (-(prec // 2)):
            return _ZERO
        rel = mpmath.pslq([x, 1], maxcoeff=2 ** (prec // 3), maxsteps=4 * prec)
    if rel is None or rel[0] == 0:
        return None
    return Fraction(-rel[1], rel[0])


def sqrt_in_field(a, precision=DEFAULT_PRECISION):
    '''
    Decide whether a is a square in its tower

    Over Q the decision is exact.  Over a proper tower the square root is
    recovered from the 2**k embeddings: every sign choice for the embedded
    square roots (up to a global sign) gives candidate coordinates by the
    inverse character transform, which are rationally reconstructed and
    checked exactly.  A Square answer is therefore always correct; a
    NotSquare answer records the precision it was obtained at.
    '''
    if not isinstance(a, FieldElem):
        a = RATIONALS(a)
    if a.is_zero():
        raise ZeroRadicand('square root of zero requested')
    tower = a.tower
    if tower.height == 0:
        q = a.coords[0]
        if _is_int_square(q.numerator) and _is_int_square(q.denominator):
            return Square(tower.rational(Fraction(isqrt(q.numerator),
                                                  isqrt(q.denominator))))
        return NotSquare(None)

    deg = tower.degree
    vals = tower.embedding_values(precision)
    with mpmath.workprec(precision + 32):
        images = [mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * v
                              for c, v in zip(a.coords, vals[e]) if c)
                  for e in range(deg)]
        roots = [mpmath.sqrt(z) for z in images]
        for signs in itertools.product((1, -1), repeat=deg - 1):
            r = [roots[0]] + [s * z for s, z in zip(signs, roots[1:])]
            coords = []
            for b in range(deg):
                acc = mpmath.fsum(r[e] * (-1 if _popcount(b & e) % 2 else 1)
                                  for e in range(deg))
                c = _reconstruct_rational(acc / (deg * vals[0][b]), precision)
                if c is None:
                    break
                coords.append(c)
            else:
                candidate = FieldElem._make(tower, tuple(coords))
                if candidate * candidate == a:
                    return Square(candidate)
    log.debug('no square root of %s found at %d bits', a, precision)
    return NotSquare(precision)


######################################################################
# One dynamic quadratic extension

class QuadExt(object):
    '''
    The field base(sqrt A) for a non-square A of a FieldTower

    The non-squareness certificate is kept in ``certificate``: exact over Q,
    otherwise the embedding precision at which no square root was found.
    '''

    def __init__(self, radicand, precision=DEFAULT_PRECISION):
        if not isinstance(radicand, FieldElem):
            radicand = RATIONALS(radicand)
        if radicand.is_zero():
            raise ZeroRadicand('radicand of a quadratic extension is zero')
        answer = sqrt_in_field(radicand, precision)
        if isinstance(answer, Square):
            raise SquareRadicand('%s is the square of %s' % (radicand, answer.root))
        self.base = radicand.tower
        self.radicand = radicand
        if answer.precision_bits is None:
            self.certificate = {'method': 'exact'}
        else:
            self.certificate = {'method': 'embedding',
                                'precision_bits': answer.precision_bits}
            warnings.warn('non-squareness of %s certified numerically at %d bits'
                          % (radicand, answer.precision_bits))

    def __eq__(self, other):
        return isinstance(other, QuadExt) and self.base == other.base \
            and self.radicand == other.radicand

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('QuadExt', self.base, self.radicand))

    def __repr__(self):
        return 'QuadExt(%r, sqrt(%s))' % (self.base, self.radicand)

    def __call__(self, u, v=0):
        return QuadElem(self, u, v)

    def sqrt_radicand(self):
        return QuadElem(self, self.base.zero(), self.base.one())


class QuadElem(object):
    '''u + v*sqrt(A) with u, v in the base tower of ext'''
    __slots__ = ('ext', 'u', 'v')

    def __init__(self, ext, u, v):
        self.ext = ext
        self.u = promote(u, ext.base)
        self.v = promote(v, ext.base)

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.ext != self.ext:
                raise TowerMismatch('elements of different quadratic extensions')
            return other
        if isinstance(other, (FieldElem, int, Fraction)):
            return QuadElem(self.ext, other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.ext, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.ext, -self.u, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.ext, self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        A = self.ext.radicand
        return QuadElem(self.ext, self.u * o.u + self.v * o.v * A,
                        self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def __pow__(self, k):
        assert isinstance(k, int) and k >= 0, 'only non-negative integer powers'
        result = QuadElem(self.ext, 1, 0)
        for _ in range(k):
            result = result * self
        return result

    def conjugate(self):
        return QuadElem(self.ext, self.u, -self.v)

    def norm(self):
        return self.u * self.u - self.v * self.v * self.ext.radicand

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n.is_zero():
            raise DivisionByZero('division by zero in %r' % (self.ext,))
        num = self * o.conjugate()
        return QuadElem(self.ext, num.u / n, num.v / n)

    __div__ = __truediv__

    def is_zero(self):
        return self.u.is_zero() and self.v.is_zero()

    def __bool__(self):
        return not self.is_zero()

    __nonzero__ = __bool__

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.ext == other.ext and self.u == other.u and self.v == other.v
        if isinstance(other, (FieldElem, int, Fraction)):
            return self.v.is_zero() and self.u == other
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self.v.is_zero():
            return hash(self.u)
        return hash((self.ext, self.u, self.v))

    def embed(self, embedding=0, prec=DEFAULT_PRECISION):
        with mpmath.workprec(prec):
            return self.u.embed(embedding, prec) + \
                self.v.embed(embedding, prec) * mpmath.sqrt(self.ext.radicand.embed(embedding, prec))

    def __str__(self):
        if self.v.is_zero():
            return str(self.u)
        return '%s + (%s)*sqrtA' % (self.u, self.v)

    __repr__ = __str__


def rational_coordinates(x, ext=None):
    '''
    Coordinates of a FieldElem or QuadElem as one list of Fractions

    With ext given, plain FieldElems get zero second-layer coordinates so
    that vectors from both kinds of element line up.
    '''
    if isinstance(x, QuadElem):
        return list(x.u.coords) + list(x.v.coords)
    if not isinstance(x, FieldElem):
        x = RATIONALS(x)
    if ext is not None:
        x = promote(x, ext.base)
        return list(x.coords) + [_ZERO] * ext.base.degree
    return list(x.coords)


######################################################################
# Rational linear algebra

def _integer_rows(M):
    '''Object array of Python ints, each row scaled to clear its denominators'''
    rows = [[as_fraction(c) for c in row] for row in M]
    out = []
    for row in rows:
        lcm = 1
        for c in row:
            lcm = lcm * c.denominator // gcd(lcm, c.denominator)
        out.append([int(c * lcm) for c in row])
    return np.array(out, dtype=object).reshape(len(rows), len(rows[0]) if rows else 0)


def _bareiss_echelon(A):
    '''
    Fraction-free forward elimination of an integer object array in place

    Returns the pivot columns.  Every intermediate entry is a minor of the
    input, so the divisions by the previous pivot are exact.
    '''
    nrows, ncols = A.shape
    prev = 1
    piv_r = 0
    pivots = []
    for c in range(ncols):
        if piv_r == nrows:
            break
        nz = [r for r in range(piv_r, nrows) if A[r, c] != 0]
        if not nz:
            continue
        r = nz[0]
        if r != piv_r:
            A[[piv_r, r]] = A[[r, piv_r]]
        p = A[piv_r, c]
        for i in range(piv_r + 1, nrows):
            A[i, c + 1:] = (p * A[i, c + 1:] - A[i, c] * A[piv_r, c + 1:]) // prev
            A[i, c] = 0
        prev = p
        pivots.append(c)
        piv_r += 1
    return pivots


def rational_kernel(M):
    '''
    Basis of the right null space of a rational matrix

    Each basis vector is scaled to coprime integer entries with its last
    nonzero entry positive.  An empty list means the kernel is trivial.
    '''
    A = _integer_rows(M)
    assert A.ndim == 2 and A.shape[0] >= 1 and A.shape[1] >= 1, \
        'matrix must have at least one row and one column'
    ncols = A.shape[1]
    pivots = _bareiss_echelon(A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        sol = [_ZERO] * ncols
        sol[f] = _ONE
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((A[r, c] * sol[c] for c in range(pc + 1, ncols)), _ZERO)
            sol[pc] = -s / A[r, pc]
        basis.append(_primitive(sol))
    return basis


def _primitive(vec):
    den = 1
    for c in vec:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in vec]
    g = reduce(gcd, (abs(i) for i in ints), 0) or 1
    ints = [i // g for i in ints]
    last = [i for i in ints if i][-1]
    if last < 0:
        ints = [-i for i in ints]
    return [Fraction(i) for i in ints]


def rank(M):
    A = _integer_rows(M)
    return len(_bareiss_echelon(A))


def solve_linear(M, rhs):
    '''
    Solve the square system M x = rhs over any exact field

    Entries may be Fractions or FieldElems; plain Gaussian elimination with
    the first nonzero pivot.  Raises DivisionByZero for singular M.
    '''
    M = np.array(M, dtype=object)
    n = M.shape[0]
    assert M.shape == (n, n), 'system matrix must be square'
    aug = np.empty((n, n + 1), dtype=object)
    aug[:, :n] = M
    aug[:, n] = list(rhs)
    for c in range(n):
        nz = [r for r in range(c, n) if aug[r, c] != 0]
        if not nz:
            raise DivisionByZero('singular linear system')
        r = nz[0]
        if r != c:
            aug[[c, r]] = aug[[r, c]]
        p = aug[c, c]
        inv = _ONE / p if isinstance(p, (int, Fraction)) else p.inverse()
        aug[c, c:] = [inv * v for v in aug[c, c:]]
        for i in range(n):
            if i != c and aug[i, c] != 0:
                f = aug[i, c]
                aug[i, c:] = [a - f * b for a, b in zip(aug[i, c:], aug[c, c:])]
    return list(aug[:, n])


######################################################################
# Serialization and rendering

def fraction_to_str(q):
    q = as_fraction(q)
    return '%d/%d' % (q.numerator, q.denominator)


def elem_to_json(x):
    if isinstance(x, QuadElem):
        return {'tower': list(x.ext.base.discriminants),
                'radicand': [fraction_to_str(c) for c in x.ext.radicand.coords],
                'u': [fraction_to_str(c) for c in x.u.coords],
                'v': [fraction_to_str(c) for c in x.v.coords]}
    if not isinstance(x, FieldElem):
        x = RATIONALS(x)
    return {'tower': list(x.tower.discriminants),
            'coords': [fraction_to_str(c) for c in x.coords]}


def elem_from_json(d, tower=None):
    '''Inverse of elem_to_json; tower (if given) must match or contain it'''
    try:
        own = create_tower(d['tower'])
        if 'coords' in d:
            x = FieldElem(own, d['coords'])
        else:
            ext = QuadExt(FieldElem(own, d['radicand']))
            return QuadElem(ext, FieldElem(own, d['u']), FieldElem(own, d['v']))
    except (KeyError, TypeError) as err:
        raise SchemaError('malformed field element: %s' % err)
    return promote(x, tower) if tower is not None else x


def to_decimal(x, digits=30):
    '''Decimal rendering under the all-positive embedding'''
    if isinstance(x, (int, Fraction)):
        x = RATIONALS(x)
    prec = max(DEFAULT_PRECISION, int(digits * 3.33) + 64)
    with mpmath.workprec(prec):
        return mpmath.nstr(x.embed(0, prec), digits)
