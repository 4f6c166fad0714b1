'''
Text and JSON input/output for polynomials, vector fields and reports

The polynomial language is

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor | '/' INT)*
    factor := atom ('^' INT)?
    atom   := INT | surd | var | '(' expr ')'

with variables named by the ParseContext (x1..xn by default) and surd symbols
sqrt<d> (sqrtm<d> for negative d) bound to the generators of the tower.
Division is only by integer literals, so every parse is a polynomial.

Contains
--------

    ctx = ParseContext(3, tower)
    psi = parse_poly("x1^2 + (3/2)*x1*x2", ctx)
    c = parse_constant("sqrt2 - 1", ctx)
    text = print_poly(psi, ctx)

JSON:
    poly_to_json / poly_from_json
    field_to_json / field_from_json
    load_field_spec, load_gamma_spec, load_lines, load_factors
    value_to_json  (exact coordinates plus a 30 digit decimal)

'''
from __future__ import absolute_import, division, print_function

import json
import logging
import re
from fractions import Fraction
from math import comb

from .errors import (InvsurfError, NegativeExponent, ParseSyntaxError,
                     SchemaError, UnknownSymbol)
from .exact import (RATIONALS, as_fraction, create_tower, elem_from_json,
                    elem_to_json, format_elem, surd_symbol, to_decimal)
from .poly import MPoly, PolyVectorField

log = logging.getLogger(__name__)

DECIMAL_DIGITS = 30
MAX_NESTING = 200
MAX_EXPONENT = 1000
MAX_EXPANDED_TERMS = 5000

_TOKEN = re.compile(r'\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])|(?P<bad>\S))')


def _power_terms(base, k):
    '''Upper bound on the number of terms of base ** k'''
    t = len(base.terms)
    if t <= 1:
        return 1
    n, d = base.nvars, base.degree()
    return min(comb(k + t - 1, t - 1), comb(k * d + n, n))


class ParseContext(object):
    '''
    Variable names and surd symbols used by parse_poly and print_poly

    Variables are positional: the i-th name is exponent slot i.
    '''

    def __init__(self, nvars, tower=RATIONALS, names=None):
        if names is None:
            names = ['x%d' % (i + 1) for i in range(nvars)]
        names = list(names)
        assert len(names) == nvars, 'need one name per variable'
        assert len(set(names)) == nvars, 'variable names must be distinct'
        self.nvars = nvars
        self.names = names
        self.tower = tower
        self.surds = dict((surd_symbol(d), tower.gen(i))
                          for i, d in enumerate(tower.discriminants))
        clash = set(self.surds) & set(names)
        assert not clash, 'variable names clash with surd symbols: %s' % sorted(clash)
        self.index = dict((name, i) for i, name in enumerate(names))

    def __repr__(self):
        return 'ParseContext(%s, %r)' % (self.names, self.tower)


def _byte_offset(text, pos):
    return len(text[:pos].encode('utf-8'))


class _Parser(object):

    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.tokens = []
        for m in _TOKEN.finditer(text):
            kind = m.lastgroup
            if kind == 'bad':
                raise ParseSyntaxError('unexpected character %r' % m.group('bad'),
                                       _byte_offset(text, m.start('bad')),
                                       'operand or operator')
            self.tokens.append((kind, m.group(kind), m.start(kind)))
        self.pos = 0
        self.depth = 0

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ('end', None, len(self.text))

    def advance(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def error(self, message, tok, expected, cls=ParseSyntaxError):
        return cls(message, _byte_offset(self.text, tok[2]), expected)

    def expect_int(self, expected):
        tok = self.advance()
        if tok[0] == 'op' and tok[1] == '-' and expected == 'exponent':
            raise self.error('negative exponent', tok, 'non-negative integer',
                             NegativeExponent)
        if tok[0] != 'int':
            raise self.error('expected %s' % expected, tok, expected)
        return self.literal(tok)

    def literal(self, tok):
        try:
            return int(tok[1])
        except ValueError:
            raise self.error('integer literal too long', tok, 'shorter literal')

    def parse(self):
        if not self.tokens:
            raise ParseSyntaxError('empty input', 0, 'expression')
        result = self.expr()
        tok = self.peek()
        if tok[0] != 'end':
            raise self.error('unexpected %r' % tok[1], tok, "'+', '-', '*', '/' or end")
        return result

    def expr(self):
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self.error('expression nested too deeply', self.peek(), 'shallower input')
        sign = 1
        tok = self.peek()
        if tok[0] == 'op' and tok[1] in '+-':
            self.advance()
            sign = -1 if tok[1] == '-' else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            tok = self.peek()
            if tok[0] == 'op' and tok[1] in '+-':
                self.advance()
                rhs = self.term()
                result = result + rhs if tok[1] == '+' else result - rhs
            else:
                break
        self.depth -= 1
        return result

    def term(self):
        result = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == 'op' and tok[1] == '*':
                self.advance()
                result = result * self.factor()
            elif tok[0] == 'op' and tok[1] == '/':
                self.advance()
                div_tok = self.peek()
                d = self.expect_int('integer literal')
                if d == 0:
                    raise self.error('division by zero', div_tok, 'nonzero integer')
                result = result * Fraction(1, d)
            else:
                return result

    def factor(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == 'op' and tok[1] == '^':
            self.advance()
            exp_tok = self.peek()
            k = self.expect_int('exponent')
            simple = len(base.terms) == 1 and \
                all(c.is_rational() and abs(c.rational()) == 1
                    for c in base.terms.values())
            if k > MAX_EXPONENT and not simple:
                raise self.error('exponent too large', exp_tok,
                                 'exponent <= %d' % MAX_EXPONENT)
            if _power_terms(base, k) > MAX_EXPANDED_TERMS:
                raise self.error('expansion too large', exp_tok,
                                 'at most %d terms after expansion' % MAX_EXPANDED_TERMS)
            base = base ** k
        return base

    def atom(self):
        ctx = self.ctx
        tok = self.advance()
        kind, value = tok[0], tok[1]
        if kind == 'int':
            return MPoly.constant(ctx.nvars, self.literal(tok), ctx.tower)
        if kind == 'name':
            if value in ctx.index:
                return MPoly.var(ctx.nvars, ctx.index[value], ctx.tower)
            if value in ctx.surds:
                return MPoly.constant(ctx.nvars, ctx.surds[value], ctx.tower)
            raise self.error('unknown symbol %r' % value, tok,
                             'one of %s' % ', '.join(ctx.names + sorted(ctx.surds)),
                             UnknownSymbol)
        if kind == 'op' and value == '(':
            inner = self.expr()
            close = self.advance()
            if close[0] != 'op' or close[1] != ')':
                raise self.error("expected ')'", close, "')'")
            return inner
        raise self.error('unexpected %s' % (repr(value) if value else 'end of input'),
                         tok, 'integer, surd, variable or (')


def parse_poly(text, ctx):
    '''Parse text into an MPoly over ctx.tower in ctx.nvars variables'''
    if not isinstance(text, str):
        raise ParseSyntaxError('polynomial text must be a string', 0, 'string')
    return _Parser(text, ctx).parse()


def parse_constant(text, ctx):
    '''Parse a variable-free expression into a FieldElem'''
    if isinstance(text, (int, Fraction)):
        return ctx.tower(text)
    if isinstance(text, dict):
        return elem_from_json(text, ctx.tower)
    p = parse_poly(text, ctx)
    if not p.is_constant():
        raise ParseSyntaxError('expected a constant, got %r' % text, 0, 'constant')
    return p.constant_term()


def _format_monomial(exp, ctx):
    parts = []
    for i, k in enumerate(exp):
        if k == 1:
            parts.append(ctx.names[i])
        elif k > 1:
            parts.append('%s^%d' % (ctx.names[i], k))
    return '*'.join(parts)


def print_poly(psi, ctx):
    '''
    Canonical text for psi: terms in descending grevlex order

    parse_poly(print_poly(psi, ctx), ctx) == psi for every psi.
    '''
    if psi.is_zero():
        return '0'
    pieces = []
    for exp, c in psi.sorted_terms():
        mono = _format_monomial(exp, ctx)
        if c.is_rational():
            q = c.rational()
            sign = '-' if q < 0 else '+'
            mag = abs(q)
            if not mono:
                body = str(mag) if mag.denominator == 1 else '%d/%d' % (mag.numerator, mag.denominator)
            elif mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = '%d*%s' % (mag.numerator, mono)
            else:
                body = '(%d/%d)*%s' % (mag.numerator, mag.denominator, mono)
        else:
            sign = '+'
            body = '(%s)' % format_elem(c)
            if mono:
                body += '*' + mono
        pieces.append((sign, body))
    text = ('-' if pieces[0][0] == '-' else '') + pieces[0][1]
    for sign, body in pieces[1:]:
        text += ' %s %s' % (sign, body)
    return text


######################################################################
# JSON

def load_json(path_or_obj):
    '''Read JSON from a path or pass dicts and lists through'''
    if isinstance(path_or_obj, (dict, list)):
        return path_or_obj
    try:
        with open(path_or_obj) as f:
            return json.load(f)
    except ValueError as err:
        raise SchemaError('invalid JSON in %s: %s' % (path_or_obj, err))


def tower_from_json(d):
    try:
        return create_tower(d.get('tower', []))
    except InvsurfError:
        raise
    except (TypeError, ValueError, AttributeError):
        raise SchemaError('field spec must be an object with a "tower" list of integers')


def poly_to_json(psi):
    return {'nvars': psi.nvars,
            'tower': list(psi.tower.discriminants),
            'terms': [{'exp': list(e), 'coef': elem_to_json(c)}
                      for e, c in psi.sorted_terms()]}


def poly_from_json(d, ctx=None):
    '''Inverse of poly_to_json; strings are parsed with ctx'''
    if isinstance(d, str):
        assert ctx is not None, 'a parse context is needed for polynomial text'
        return parse_poly(d, ctx)
    try:
        tower = create_tower(d.get('tower', []))
        if ctx is not None:
            tower = ctx.tower if ctx.tower.contains(tower) else tower
        terms = dict((tuple(t['exp']), elem_from_json(t['coef'], tower))
                     for t in d['terms'])
        return MPoly(int(d['nvars']), terms, tower)
    except InvsurfError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, AssertionError) as err:
        raise SchemaError('malformed polynomial: %s' % err)


def field_to_json(f, ctx=None):
    ctx = ctx or ParseContext(f.n, f.tower)
    return {'n': f.n,
            'm': f.m,
            'tower': list(f.tower.discriminants),
            'components': [print_poly(c, ctx) for c in f.components],
            'exact': [poly_to_json(c) for c in f.components]}


def _count_field(d, key, minimum):
    '''Integer entry of a JSON object; bools and non-integral numbers are rejected'''
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError('"%s" must be an integer, got %r' % (key, value))
    try:
        value = int(value)
    except ValueError:
        raise SchemaError('"%s" must be an integer, got %r' % (key, value))
    if value < minimum:
        raise SchemaError('"%s" must be at least %d, got %d' % (key, minimum, value))
    return value


def field_from_json(d):
    '''
    Vector field from {"n", "m", "tower", "components"}

    Components are polynomial strings or poly JSON objects.  A stated "m"
    must agree with the parsed degree.
    '''
    d = load_json(d)
    if not isinstance(d, dict):
        raise SchemaError('vector field spec must be a JSON object')
    try:
        tower = tower_from_json(d)
        n = _count_field(d, 'n', 1)
        names = d.get('variables')
        comps = d['components']
    except KeyError as err:
        raise SchemaError('vector field spec is missing %s' % err)
    if not isinstance(comps, list):
        raise SchemaError('"components" must be a list')
    if len(comps) != n:
        raise SchemaError('expected %d components, got %d' % (n, len(comps)))
    if names is not None:
        if not isinstance(names, list) or not all(isinstance(x, str) for x in names) \
                or len(names) != n or len(set(names)) != n:
            raise SchemaError('"variables" must list %d distinct names' % n)
        if set(names) & set(surd_symbol(p) for p in tower.discriminants):
            raise SchemaError('variable names clash with surd symbols')
    ctx = ParseContext(n, tower, names)
    f = PolyVectorField([poly_from_json(c, ctx) for c in comps])
    if 'm' in d and _count_field(d, 'm', 0) != f.m:
        raise SchemaError('stated degree m=%s, components have degree %d' % (d['m'], f.m))
    return f


def load_field_spec(path_or_obj):
    return field_from_json(load_json(path_or_obj))


def _vector_from_json(row, ctx):
    return [parse_constant(x, ctx) for x in row]


def load_gamma_spec(path_or_obj):
    '''γ matrix: {"tower": [...], "gamma": [[...], [...], [...]]}'''
    d = load_json(path_or_obj)
    tower = tower_from_json(d)
    ctx = ParseContext(0, tower)
    try:
        rows = [_vector_from_json(row, ctx) for row in d['gamma']]
    except KeyError:
        raise SchemaError('gamma spec is missing "gamma"')
    except TypeError:
        raise SchemaError('gamma must be a 3x3 matrix of numbers or strings')
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise SchemaError('gamma must be a 3x3 matrix')
    return rows


def load_lines(path_or_obj, tower=RATIONALS):
    '''Directions: {"tower": [...], "lines": [[...], ...]}'''
    d = load_json(path_or_obj)
    if isinstance(d, dict):
        own = tower_from_json(d)
        if own.contains(tower):
            tower = own
        rows = d.get('lines')
        if rows is None:
            raise SchemaError('lines spec is missing "lines"')
    else:
        rows = d
    ctx = ParseContext(0, tower)
    try:
        return [_vector_from_json(row, ctx) for row in rows]
    except TypeError:
        raise SchemaError('lines must be a list of coordinate lists')


def load_factors(path_or_obj, ctx):
    '''Multiplier factors: {"factors": [{"poly": ..., "exponent": "p/q"}, ...]}'''
    d = load_json(path_or_obj)
    try:
        rows = d['factors'] if isinstance(d, dict) else d
        return [(poly_from_json(r['poly'], ctx), as_fraction(r.get('exponent', 1)))
                for r in rows]
    except (KeyError, TypeError, AttributeError) as err:
        raise SchemaError('malformed factor list: %s' % err)


def value_to_json(x, digits=DECIMAL_DIGITS):
    '''Exact coordinates, plain text and an advisory decimal for a field value'''
    if isinstance(x, (int, Fraction)):
        x = RATIONALS(x)
    return {'exact': elem_to_json(x),
            'text': str(x),
            'decimal': to_decimal(x, digits)}


def vector_to_json(v, digits=DECIMAL_DIGITS):
    return [value_to_json(x, digits) for x in v]


def dump_json(obj, stream):
    '''Deterministic JSON: sorted keys, fixed indentation'''
    json.dump(obj, stream, sort_keys=True, indent=2)
    stream.write('\n')
