'''
Semi-invariants, Jacobi multipliers and degree bounds

A semi-invariant (Darboux polynomial) of the field f is a nonconstant psi
with X_f(psi) = lambda psi for a polynomial cofactor lambda of degree at most
m - 1.

Contains
--------

    verify_semi_invariant(f, psi)          ->  Verified | NotSemiInvariant
    search_semi_invariants(f, d_max)       ->  SearchResult
    verify_jacobi_multiplier(f, factors)   ->  Valid | Invalid
    bounds_report(m, n, degrees=...)       ->  BoundsReport

The search works over Q only.  For each degree d and each monomial x^a of
degree d it fixes the coefficient of x^a to one, sets every grevlex-larger
coefficient to zero and solves the bilinear equations X_f(psi) - lambda psi
= 0 for the remaining coefficients of psi and lambda with a bounded
Buchberger elimination.

'''
from __future__ import absolute_import, division, print_function

import itertools
import logging
import warnings
from collections import namedtuple
from fractions import Fraction

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex
from sympy.polys.rings import ring

from .errors import (ConstantInput, EliminationBudgetExceeded,
                     FactorNotSemiInvariant, InvalidParameter,
                     UnsupportedCoefficientField, UnsupportedDimension,
                     VerificationFailed)
from .exact import as_fraction, fraction_to_str, rational_kernel
from .infinity import Cond1
from .parse_io import ParseContext, poly_to_json, print_poly
from .poly import (MPoly, Quotient, divergence, exact_divide, grevlex_key,
                   lie_derivative)
from .transform import Degenerate, Free, reduction_infinity_free

log = logging.getLogger(__name__)

DEFAULT_BASIS_BUDGET = 400
IRREDUCIBILITY_NOTE = 'irreducibility not certified'

PASS = 'Pass'
FAIL = 'Fail'
NOT_APPLICABLE = 'NotApplicable'

Verified = namedtuple('Verified', 'semi')
NotSemiInvariant = namedtuple('NotSemiInvariant', '')
Valid = namedtuple('Valid', '')
Invalid = namedtuple('Invalid', 'residual')
Family = namedtuple('Family', 'degree leading unknowns')


######################################################################
# Verification

class SemiInvariant(object):
    '''psi together with its cofactor, X_f(psi) = cofactor * psi'''

    def __init__(self, psi, cofactor):
        self.psi = psi
        self.cofactor = cofactor
        self.degree = psi.degree()

    def __repr__(self):
        return 'SemiInvariant(%r, cofactor=%r)' % (self.psi, self.cofactor)

    def __eq__(self, other):
        return isinstance(other, SemiInvariant) and self.psi == other.psi

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.psi)

    def as_dict(self, ctx=None):
        ctx = ctx or ParseContext(self.psi.nvars, self.psi.tower)
        return {'psi': print_poly(self.psi, ctx),
                'cofactor': print_poly(self.cofactor, ctx),
                'degree': self.degree,
                'exact': poly_to_json(self.psi)}


def verify_semi_invariant(f, psi):
    '''Exact check of X_f(psi) = lambda psi, with lambda read off by division'''
    if psi.is_constant():
        raise ConstantInput('a semi-invariant must be nonconstant')
    res = exact_divide(lie_derivative(f, psi), psi)
    if not isinstance(res, Quotient):
        return NotSemiInvariant()
    cofactor = res.q
    assert cofactor.is_zero() or cofactor.degree() <= f.m - 1, \
        'cofactor degree exceeds m - 1'
    return Verified(SemiInvariant(psi, cofactor))


######################################################################
# Bounded Buchberger elimination over QQ

def _spoly(f, g, lmf, lmg):
    R = f.ring
    lcm = R.monomial_lcm(lmf, lmg)
    s1 = f.mul_monom(R.monomial_div(lcm, lmf))
    s2 = g.mul_monom(R.monomial_div(lcm, lmg))
    return s1 - s2


def _select(G, P):
    '''normal strategy: the pair with the smallest lcm'''
    R = G[0].ring
    return min(P, key=lambda p: (R.order(R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)), p))


def _update(G, P, f, lmG):
    '''Gebauer-Moeller pair update when f joins the basis G'''
    lmf = f.LM
    R = f.ring
    lcm = R.monomial_lcm
    mul = R.monomial_mul
    div = R.monomial_div

    P = set(p for p in P if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf) or
                             lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf) or
                             lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf)))
    lcm_dict = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized = []
    for L in sorted(lcm_dict, key=R.order):
        if all(not div(L, L_) for L_ in minimalized):
            minimalized.append(L)
    new = set()
    for L in minimalized:
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | new


def _minimalize(G):
    R = G[0].ring
    Gmin = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in Gmin):
            Gmin.append(f)
    return Gmin


def _interreduce(G):
    return [G[i].rem(G[:i] + G[i + 1:]).monic() for i in range(len(G))]


def _total_degree(p):
    return max(sum(mon) for mon in p.monoms())


def bounded_groebner(F, budget=DEFAULT_BASIS_BUDGET, degree_cap=None):
    '''
    Reduced grevlex Groebner basis of the nonzero ring elements F

    Raises EliminationBudgetExceeded once the basis would grow beyond budget
    elements or a new element would exceed total degree degree_cap.
    '''
    F = [f for f in F if f]
    assert F, 'need at least one nonzero generator'
    R = F[0].ring
    G, lmG, P = [], [], set()
    for f in F:
        if f.is_ground:
            return [R.one]
        G, P = _update(G, P, f.monic(), lmG)
        lmG.append(f.LM)

    while P:
        i, j = _select(G, P)
        P.remove((i, j))
        r = _spoly(G[i], G[j], lmG[i], lmG[j]).rem(G)
        if not r:
            continue
        if r.is_ground:
            return [R.one]
        if degree_cap is not None and _total_degree(r) > degree_cap:
            raise EliminationBudgetExceeded('elimination passed total degree %d'
                                            % degree_cap)
        if len(G) >= budget:
            raise EliminationBudgetExceeded('Groebner basis passed %d elements'
                                            % budget)
        G, P = _update(G, P, r.monic(), lmG)
        lmG.append(r.LM)

    return _interreduce(_minimalize(G))


def _is_unit_ideal(G):
    return any(g.is_ground for g in G)


def _is_zero_dimensional(G):
    R = G[0].ring
    for k in range(R.ngens):
        if not any(g.LM[k] > 0 and sum(g.LM) == g.LM[k] for g in G):
            return False
    return True


def _standard_monomials(G):
    R = G[0].ring
    box = []
    for k in range(R.ngens):
        box.append(min(g.LM[k] for g in G if sum(g.LM) == g.LM[k] > 0))
    return [mon for mon in itertools.product(*[range(e) for e in box])
            if not any(R.monomial_div(mon, g.LM) for g in G)]


def _to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


def _minimal_polynomial(G, k):
    '''Coefficients [c0, c1, ...] of the minimal polynomial of generator k modulo G'''
    R = G[0].ring
    z = R.gens[k]
    basis = _standard_monomials(G)
    columns = []
    for deg in range(len(basis) + 1):
        nf = (z ** deg).rem(G)
        columns.append([_to_fraction(nf.get(mon, QQ.zero)) for mon in basis])
        M = [[col[r] for col in columns] for r in range(len(basis))]
        kernel = rational_kernel(M)
        if kernel:
            return kernel[0]
    raise AssertionError('normal forms of powers must become dependent')


def _rational_roots(coeffs):
    z = sp.Symbol('z')
    poly = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
                   z, domain=QQ)
    roots = poly.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


def _rational_points(G, k, nfix, budget, degree_cap):
    '''Rational values of generators k..nfix-1 over a zero-dimensional ideal'''
    if _is_unit_ideal(G):
        return []
    if k == nfix:
        return [()]
    R = G[0].ring
    z = R.gens[k]
    points = []
    for r in _rational_roots(_minimal_polynomial(G, k)):
        sub = bounded_groebner(G + [z - QQ(r.numerator, r.denominator)],
                               budget, degree_cap)
        points.extend((r,) + rest
                      for rest in _rational_points(sub, k + 1, nfix, budget, degree_cap))
    return points


######################################################################
# Search

def _monomials(n, max_degree):
    '''All exponents in n variables of degree <= max_degree, grevlex ascending'''
    out = []
    for d in range(max_degree + 1):
        out.extend(e for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d)
    return sorted(out, key=grevlex_key)


def _add(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def _bilinear_system(f, lead, lower, cofactor_monos, lie_cache):
    '''Ring, generator split and equations for psi = x^lead + sum c_a x^a'''
    names = ['c%d' % i for i in range(len(lower))] + \
            ['l%d' % i for i in range(len(cofactor_monos))]
    R = ring(names, QQ, grevlex)[0]
    gens = R.gens
    psi = [(lead, R.one)] + list(zip(lower, gens[:len(lower)]))
    lam = list(zip(cofactor_monos, gens[len(lower):]))

    eqs = {}
    for a, s in psi:
        for e, c in lie_cache[a].terms.items():
            q = c.rational()
            eqs[e] = eqs.get(e, R.zero) + s * QQ(q.numerator, q.denominator)
    for b, l in lam:
        for a, s in psi:
            e = _add(a, b)
            eqs[e] = eqs.get(e, R.zero) - l * s
    return R, [eqs[e] for e in sorted(eqs, key=grevlex_key) if eqs[e]]


def _canonical_key(psi):
    key = []
    for e, c in psi.sorted_terms():
        flat = (sum(e),) + tuple(-x for x in reversed(e))
        key.append((tuple(-x for x in flat), c.rational()))
    return key


def _is_product(psi, kept):
    for phi in kept:
        if phi.degree() >= psi.degree():
            continue
        res = exact_divide(psi, phi)
        if isinstance(res, Quotient):
            q = res.q.monic()
            if q in kept or _is_product(q, kept):
                return True
    return False


class SearchResult(object):
    '''
    Semi-invariants found by search_semi_invariants

    families lists the normalization branches whose solution set is
    positive-dimensional; their members are not enumerated.
    '''

    def __init__(self, nvars, d_max, results, families, budget_exceeded, skipped):
        self.nvars = nvars
        self.d_max = d_max
        self.results = results
        self.families = families
        self.budget_exceeded = budget_exceeded
        self.skipped = skipped
        self.note = IRREDUCIBILITY_NOTE

    def __iter__(self):
        return iter(self.results)

    def __len__(self):
        return len(self.results)

    def polynomials(self):
        return [s.psi for s in self.results]

    def as_dict(self, ctx=None):
        ctx = ctx or ParseContext(self.nvars)

        def mono(e):
            return print_poly(MPoly.monomial(e), ctx)

        return {'d_max': self.d_max,
                'results': [s.as_dict(ctx) for s in self.results],
                'families': [{'degree': fam.degree, 'leading': mono(fam.leading),
                              'unknowns': fam.unknowns} for fam in self.families],
                'budget_exceeded': self.budget_exceeded,
                'skipped': [{'degree': d, 'leading': mono(e)} for d, e in self.skipped],
                'note': self.note}


def search_semi_invariants(f, d_max, budget=DEFAULT_BASIS_BUDGET, degree_cap=None):
    '''
    Semi-invariants of f with rational coefficients up to degree d_max

    Each output is normalized to leading coefficient one, re-verified, and
    products of lower-degree outputs are dropped.  The default degree cap of
    the elimination is 2 (d + m) for degree level d.  Branches that exceed
    the budget are listed in ``skipped`` and the result is flagged.
    '''
    if d_max < 1:
        raise InvalidParameter('d_max must be at least 1, got %d' % d_max)
    if budget < 1:
        raise InvalidParameter('budget must be positive, got %d' % budget)
    if f.tower.height:
        raise UnsupportedCoefficientField('the search runs over Q; the field has '
                                          'coefficients in %r' % f.tower)
    n, m = f.n, f.m
    cofactor_monos = _monomials(n, m - 1) if m >= 1 else []

    found = []
    families = []
    skipped = []
    for d in range(1, d_max + 1):
        cap = 2 * (d + m) if degree_cap is None else degree_cap
        monos = _monomials(n, d)
        lie_cache = dict((a, lie_derivative(f, MPoly.monomial(a))) for a in monos)
        for pos, lead in enumerate(monos):
            if sum(lead) != d:
                continue
            lower = monos[:pos]
            R, eqs = _bilinear_system(f, lead, lower, cofactor_monos, lie_cache)
            if not eqs:
                families.append(Family(d, lead, R.ngens))
                continue
            try:
                G = bounded_groebner(eqs, budget, cap)
                if _is_unit_ideal(G):
                    continue
                if not _is_zero_dimensional(G):
                    families.append(Family(d, lead, R.ngens))
                    continue
                points = _rational_points(G, 0, len(lower), budget, cap)
            except EliminationBudgetExceeded as err:
                log.info('degree %d, leading %s: %s', d, lead, err)
                skipped.append((d, lead))
                continue
            log.debug('degree %d, leading %s: %d rational solutions', d, lead, len(points))
            for point in points:
                terms = dict(zip(lower, point))
                terms[lead] = 1
                psi = MPoly(n, terms)
                res = verify_semi_invariant(f, psi)
                if not isinstance(res, Verified):
                    raise VerificationFailed('search produced a non-semi-invariant '
                                             'of degree %d' % d)
                found.append(res.semi)

    found = sorted(set(found), key=lambda s: (s.degree, _canonical_key(s.psi)))
    kept = []
    for s in found:
        if not _is_product(s.psi, set(k.psi for k in kept)):
            kept.append(s)
    if skipped:
        warnings.warn('semi-invariant search hit the elimination budget in %d '
                      'branches; results may be incomplete' % len(skipped))
    families.sort(key=lambda fam: (fam.degree, [-k for k in grevlex_key(fam.leading)[1]]))
    return SearchResult(n, d_max, kept, families, bool(skipped), skipped)


######################################################################
# Jacobi multipliers

def verify_jacobi_multiplier(f, factors):
    '''
    Check that (prod phi_i^d_i)^-1 is a Jacobi multiplier of f

    factors is a list of (phi, d) with rational exponents.  The multiplier
    identity reduces to sum d_i lambda_i = div f on the cofactors.
    '''
    total = MPoly.zero(f.n, f.tower)
    for i, (phi, d) in enumerate(factors):
        try:
            res = verify_semi_invariant(f, phi)
        except ConstantInput:
            res = NotSemiInvariant()
        if not isinstance(res, Verified):
            raise FactorNotSemiInvariant('factor %d is not a semi-invariant' % i,
                                         location=i)
        total = total + res.semi.cofactor.scale(as_fraction(d))
    residual = total - divergence(f)
    if residual.is_zero():
        return Valid()
    return Invalid(residual)


######################################################################
# Degree bounds

Check = namedtuple('Check', 'name status value bound assumes')


def line_count_bound(m, n):
    '''Number of invariant lines of a generic homogeneous field, (m^n - 1)/(m - 1)'''
    return (m ** n - 1) // (m - 1)


def _subset_sum(degrees, n):
    k = len(degrees)
    prod = 1
    for r in degrees:
        prod *= r
    total = sum((Fraction(1, _product(M)) for M in itertools.combinations(degrees, k + 1 - n)),
                Fraction(0))
    return prod * total


def _product(values):
    out = 1
    for v in values:
        out *= v
    return out


def _property_e_facts(report):
    '''(status, has Cond1 point, dicritical witnesses) from a report or its JSON'''
    if report is None:
        return None, False, []
    if isinstance(report, dict):
        status = report['verdict']['status']
        cond1 = any(p['classification'] == 'Cond1' for p in report['points'])
        return status, cond1, list(report.get('dicritical_witnesses', []))
    status = type(report.verdict).__name__
    cond1 = any(isinstance(p.classification, Cond1) for p in report.points)
    return status, cond1, list(report.dicritical_witnesses)


def _check(name, ok, value, bound, assumes):
    status = NOT_APPLICABLE if ok is None else (PASS if ok else FAIL)
    return Check(name, status, value, bound, assumes)


class BoundsReport(object):
    '''Closed-form bounds for degree m fields on n-space and checks of supplied data'''

    def __init__(self, m, n, checks, hypotheses):
        self.m = m
        self.n = n
        self.line_count_bound = line_count_bound(m, n)
        self.multiplier_degree_sum = m + n - 1
        self.carnicer_cap = m + 1
        self.curve_bound = self.line_count_bound
        self.checks = checks
        self.hypotheses = hypotheses

    def __getitem__(self, name):
        return self.checks[name]

    def as_dict(self):
        def plain(x):
            if isinstance(x, Fraction):
                return str(x) if x.denominator == 1 else fraction_to_str(x)
            return x

        return {'m': self.m,
                'n': self.n,
                'line_count_bound': self.line_count_bound,
                'multiplier_degree_sum': self.multiplier_degree_sum,
                'carnicer_degree_cap': self.carnicer_cap,
                'invariant_curve_bound': self.curve_bound,
                'checks': dict((k, {'status': c.status, 'value': plain(c.value),
                                    'bound': plain(c.bound), 'assumes': list(c.assumes)})
                               for k, c in self.checks.items()),
                'hypotheses': self.hypotheses}


def bounds_report(m, n, degrees=None, multiplier_exponents=None, property_e=None,
                  homogeneous_degrees=None, curve_count=None, field=None,
                  relatively_prime=False):
    '''
    Evaluate the degree bounds and check supplied data against them

    degrees are the degrees r_i of irreducible semi-invariants of f,
    homogeneous_degrees those of the irreducible semi-invariants of the top
    degree part, multiplier_exponents the d_i of a Jacobi multiplier
    (prod phi_i^d_i)^-1 with deg phi_i = degrees[i].  property_e is a
    PropertyEReport (or its JSON) and field the vector field itself, used for
    the infinity hypothesis of the n = 3 bounds.
    '''
    assert m >= 2 and n >= 2, 'bounds need m >= 2 and n >= 2'
    L = line_count_bound(m, n)
    status, has_cond1, dicritical = _property_e_facts(property_e)

    hyp = {'property_e': {'Satisfied': 'certified', 'Violated': 'violated'}
           .get(status, 'unverified'),
           'property_s': 'automatic' if n == 3 else 'assumed',
           'relatively_prime': 'asserted' if relatively_prime else 'assumed',
           'independent_eigenvalues_point': 'certified' if has_cond1 else 'unverified',
           'dicritical_witnesses': dicritical}
    if field is not None and n == 3:
        try:
            verdict = reduction_infinity_free(field.top())
        except UnsupportedDimension:
            verdict = None
        if isinstance(verdict, Free):
            hyp['reduction_infinity_free'] = 'certified'
        elif isinstance(verdict, Degenerate):
            hyp['reduction_infinity_free'] = 'degenerate: %s' % verdict.reason
        else:
            hyp['reduction_infinity_free'] = 'violated'
    else:
        hyp['reduction_infinity_free'] = 'unverified'
    for key in ('property_e', 'independent_eigenvalues_point', 'reduction_infinity_free'):
        if hyp[key] != 'certified':
            log.debug('bounds hypothesis %s: %s', key, hyp[key])

    es = ('property_e', 'property_s', 'relatively_prime')
    checks = {}

    degrees = list(degrees) if degrees is not None else None
    if degrees is not None and len(degrees) >= n - 1:
        worst = _product(sorted(degrees)[-(n - 1):])
        checks['product'] = _check('product', worst <= L, worst, L, es)
    else:
        checks['product'] = _check('product', None, None, L, es)

    if degrees is not None and len(degrees) >= n:
        value = _subset_sum(degrees, n)
        checks['subset_sum'] = _check('subset_sum', value <= L, value, L, es)
    else:
        checks['subset_sum'] = _check('subset_sum', None, None, L, es)

    homogeneous = list(homogeneous_degrees) if homogeneous_degrees is not None else None
    if degrees is not None and homogeneous is not None:
        lhs, rhs = sum(degrees), sum(homogeneous)
        checks['top_degree_sum'] = _check('top_degree_sum', lhs <= rhs, lhs, rhs, es)
    else:
        checks['top_degree_sum'] = _check('top_degree_sum', None, None, None, es)

    carnicer = ('reduction_infinity_free', 'property_e')
    if homogeneous is not None and n == 3:
        top = max(homogeneous) if homogeneous else 0
        checks['carnicer_degree'] = _check('carnicer_degree', top <= m + 1, top,
                                           m + 1, carnicer)
    else:
        checks['carnicer_degree'] = _check('carnicer_degree', None, None, m + 1, carnicer)

    if homogeneous is not None and n == 3 and len(homogeneous) >= 2:
        ell = len(homogeneous)
        pair_count = ell * (ell - 1) // 2
        pair_sum = sum(a * b for a, b in itertools.combinations(homogeneous, 2))
        checks['pair_count'] = _check('pair_count', pair_count <= L, pair_count, L, carnicer)
        checks['pair_sum'] = _check('pair_sum', pair_sum <= L, pair_sum, L, carnicer)
    else:
        checks['pair_count'] = _check('pair_count', None, None, L, carnicer)
        checks['pair_sum'] = _check('pair_sum', None, None, L, carnicer)

    if curve_count is not None:
        checks['curve_count'] = _check('curve_count', curve_count <= L, curve_count, L,
                                       ('property_e',))
    else:
        checks['curve_count'] = _check('curve_count', None, None, L, ('property_e',))

    mult_assumes = es + ('independent_eigenvalues_point',)
    if multiplier_exponents is not None and degrees is not None and \
            len(multiplier_exponents) == len(degrees):
        exps = [as_fraction(d) for d in multiplier_exponents]
        unit = all(d == 1 for d in exps)
        total = sum(degrees)
        checks['multiplier_exponents'] = _check('multiplier_exponents', unit,
                                                [str(d) for d in exps], 1, mult_assumes)
        checks['multiplier_degree_sum'] = _check('multiplier_degree_sum',
                                                 total == m + n - 1, total, m + n - 1,
                                                 mult_assumes)
    else:
        checks['multiplier_exponents'] = _check('multiplier_exponents', None, None, 1,
                                                mult_assumes)
        checks['multiplier_degree_sum'] = _check('multiplier_degree_sum', None, None,
                                                 m + n - 1, mult_assumes)

    return BoundsReport(m, n, checks, hyp)


def multiplier_report(f, factors, property_e=None):
    '''
    Measured multiplier verdict next to the prediction for multipliers of
    this shape: all exponents one and degree sum m + n - 1
    '''
    verdict = verify_jacobi_multiplier(f, factors)
    ctx = ParseContext(f.n, f.tower)
    out = {'verdict': type(verdict).__name__}
    if isinstance(verdict, Invalid):
        out['residual'] = print_poly(verdict.residual, ctx)
    if f.m >= 2 and f.n >= 2:
        bounds = bounds_report(f.m, f.n, degrees=[phi.degree() for phi, _ in factors],
                               multiplier_exponents=[d for _, d in factors],
                               property_e=property_e)
        out['prediction'] = {
            'exponents_all_one': bounds['multiplier_exponents'].status,
            'degree_sum': bounds['multiplier_degree_sum'].status,
            'expected_degree_sum': f.m + f.n - 1,
            'hypotheses': bounds.hypotheses}
    return out
