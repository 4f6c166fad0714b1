'''
Command line interface

    invsurf [--precision BITS] [--budget N] [--seed S] [--out PATH] [--verbose]
            {transform,analyze,construct,sample,semi,multiplier,bounds} ...

Reports are written as JSON with sorted keys.  Exit status is 0 on success,
1 when a computation fails (the error is written to stderr as a JSON object
with its kind, message and location) and 2 on usage errors, including
unknown symbols in polynomials given on the command line.

'''
from __future__ import absolute_import, division, print_function

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .darboux import (DEFAULT_BASIS_BUDGET, Verified, bounds_report,
                      multiplier_report, search_semi_invariants,
                      verify_semi_invariant)
from .distinguished import (GammaSpec, construct_distinguished,
                            sample_genericity, seventh_idempotent)
from .errors import InvsurfError, ParseSyntaxError, SchemaError
from .exact import DEFAULT_PRECISION, RATIONALS, create_tower
from .infinity import property_e_report
from .parse_io import (ParseContext, dump_json, field_to_json, load_factors,
                       load_field_spec, load_gamma_spec, load_json, load_lines,
                       parse_constant, parse_poly, poly_to_json, print_poly)
from .transform import (make_chart, poincare_field, poincare_poly, reduce_dim,
                        reduction_infinity_free)

log = logging.getLogger(__name__)

MIN_PRECISION = 64


@dataclass(frozen=True)
class RunConfig:
    '''Global settings shared by every subcommand'''
    subcommand: str
    inputs: dict = field(default_factory=dict)
    precision_bits: int = DEFAULT_PRECISION
    budget: int = DEFAULT_BASIS_BUDGET
    seed: int = 0
    out: str = None

    def __post_init__(self):
        if self.precision_bits < MIN_PRECISION:
            raise ValueError('--precision must be at least %d bits' % MIN_PRECISION)
        if self.budget < 1:
            raise ValueError('--budget must be at least 1')


class UsageError(Exception):
    '''Bad command line input; reported with exit status 2'''

    def __init__(self, payload):
        Exception.__init__(self, payload.get('message'))
        self.payload = payload


def _int_list(text):
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected comma separated integers, got %r' % text)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError('expected an integer, got %r' % text)
    if value < 1:
        raise argparse.ArgumentTypeError('expected a positive integer, got %d' % value)
    return value


def _tower_arg(text):
    try:
        return create_tower(_int_list(text))
    except InvsurfError as err:
        raise argparse.ArgumentTypeError(err.message)


def _inline(parse, text, ctx):
    '''Parse command line text, turning parse errors into usage errors'''
    try:
        return parse(text, ctx)
    except ParseSyntaxError as err:
        raise UsageError(err.as_dict())


def _poly_argument(text, ctx):
    '''A polynomial given inline or as the path of a text file'''
    if os.path.isfile(text):
        with open(text) as f:
            return parse_poly(f.read().strip(), ctx)
    return _inline(parse_poly, text, ctx)


def _direction(text, tower):
    ctx = ParseContext(0, tower)
    return [_inline(parse_constant, x.strip(), ctx) for x in text.split(',')]


######################################################################
# Subcommands

def run_transform(cfg, args):
    if (args.field is None) == (args.poly is None):
        raise UsageError({'error': 'usage', 'message': 'give exactly one of --field, --poly',
                          'location': None})
    f = load_field_spec(args.field) if args.field else None
    tower = f.tower if f is not None else args.tower
    direction = _direction(args.direction, tower)
    n = len(direction)
    chart = make_chart(direction)
    out_ctx = ParseContext(n, chart.tower, ['x%d' % (i + 2) for i in range(n)])
    report = {'chart': chart.as_dict()}
    if f is not None:
        g = poincare_field(f, chart)
        report['result'] = field_to_json(g, ParseContext(n, g.tower, out_ctx.names))
        if args.reduce and f.is_homogeneous():
            q = reduce_dim(f)
            report['reduced'] = field_to_json(q)
            if f.n == 3:
                report['reduction_at_infinity'] = type(reduction_infinity_free(f)).__name__
    else:
        psi = _poly_argument(args.poly, ParseContext(n, tower))
        t = poincare_poly(psi, chart)
        ctx = ParseContext(n, t.tower, out_ctx.names)
        report['result'] = {'text': print_poly(t, ctx), 'exact': poly_to_json(t)}
    return report


def run_analyze(cfg, args):
    f = load_field_spec(args.field)
    lines = load_lines(args.lines, f.tower)
    return property_e_report(f, lines, precision=cfg.precision_bits).as_dict()


def run_construct(cfg, args):
    df = construct_distinguished(GammaSpec(load_gamma_spec(args.gamma)))
    try:
        seventh_idempotent(df)
    except InvsurfError as err:
        log.warning('no seventh idempotent: %s', err)
        seventh_error = err.as_dict()
    else:
        seventh_error = None
    report = df.as_dict()
    report['field'] = field_to_json(df.field)
    if seventh_error is not None:
        report['seventh_error'] = seventh_error
    if args.property_e:
        report['property_e'] = property_e_report(df.field, df.all_idempotents(),
                                                 precision=cfg.precision_bits).as_dict()
    return report


def run_sample(cfg, args):
    zeros = [(1, 3), (2, 1), (3, 2)] if args.coordinate_planes else []
    zeros = [(i - 1, j - 1) for i, j in zeros]
    return sample_genericity(args.count, coeff_range=args.range, seed=cfg.seed,
                             zeros=zeros, precision=cfg.precision_bits)


def run_semi(cfg, args):
    f = load_field_spec(args.field)
    ctx = ParseContext(f.n, f.tower)
    if (args.verify is None) == (not args.search):
        raise UsageError({'error': 'usage', 'message': 'give exactly one of --verify, --search',
                          'location': None})
    if args.verify is not None:
        psi = _poly_argument(args.verify, ctx)
        res = verify_semi_invariant(f, psi)
        out = {'verdict': type(res).__name__, 'psi': print_poly(psi, ctx)}
        if isinstance(res, Verified):
            out['cofactor'] = print_poly(res.semi.cofactor, ctx)
        return out
    result = search_semi_invariants(f, args.dmax, budget=cfg.budget,
                                    degree_cap=args.degree_cap)
    return result.as_dict(ctx)


def run_multiplier(cfg, args):
    f = load_field_spec(args.field)
    factors = load_factors(args.factors, ParseContext(f.n, f.tower))
    report = load_json(args.property_e) if args.property_e else None
    return multiplier_report(f, factors, property_e=report)


def run_bounds(cfg, args):
    report = load_json(args.property_e) if args.property_e else None
    f = load_field_spec(args.field) if args.field else None
    return bounds_report(args.m, args.n, degrees=args.degrees,
                         multiplier_exponents=args.exponents,
                         property_e=report,
                         homogeneous_degrees=args.homogeneous_degrees,
                         curve_count=args.curves, field=f,
                         relatively_prime=args.relatively_prime).as_dict()


COMMANDS = {
    'transform': run_transform,
    'analyze': run_analyze,
    'construct': run_construct,
    'sample': run_sample,
    'semi': run_semi,
    'multiplier': run_multiplier,
    'bounds': run_bounds,
}


######################################################################
# Argument parsing

def build_parser():
    parser = argparse.ArgumentParser(
        prog='invsurf',
        description='Exact analysis of invariant algebraic surfaces of polynomial '
                    'vector fields.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--precision', type=int, default=DEFAULT_PRECISION,
                        help='working precision in bits for non-square certificates '
                             '(default %(default)s)')
    parser.add_argument('--budget', type=int, default=DEFAULT_BASIS_BUDGET,
                        help='largest Groebner basis allowed in the search '
                             '(default %(default)s)')
    parser.add_argument('--seed', type=int, default=0, help='random seed for sample')
    parser.add_argument('--out', default=None, help='write the report here instead of stdout')
    parser.add_argument('--verbose', '-v', action='count', default=0)
    sub = parser.add_subparsers(dest='subcommand', metavar='subcommand')
    sub.required = True

    p = sub.add_parser('transform', help='Poincare transform of a polynomial or vector '
                                         'field at a direction')
    p.add_argument('--field', help='vector field JSON')
    p.add_argument('--poly', help='polynomial text or file')
    p.add_argument('--direction', required=True, help='direction "a,b,c"')
    p.add_argument('--tower', type=_tower_arg, default=RATIONALS,
                   help='discriminants for inline input, e.g. "2,3,5"')
    p.add_argument('--reduce', action='store_true',
                   help='also reduce a homogeneous field along its scaling symmetry')

    p = sub.add_parser('analyze', help='stationary points at infinity and property E')
    p.add_argument('--field', required=True, help='vector field JSON')
    p.add_argument('--lines', required=True, help='invariant lines JSON')

    p = sub.add_parser('construct', help='distinguished quadratic field from its '
                                         'prescribed idempotents')
    p.add_argument('--gamma', required=True, help='gamma matrix JSON')
    p.add_argument('--property-e', action='store_true',
                   help='also analyze the seven idempotents')

    p = sub.add_parser('sample', help='genericity experiment over random rational gamma')
    p.add_argument('--count', type=_positive_int, default=100)
    p.add_argument('--range', type=_positive_int, default=10,
                   help='numerators and denominators in [-R, R] without 0')
    p.add_argument('--coordinate-planes', action='store_true',
                   help='set gamma_13 = gamma_21 = gamma_32 = 0')

    p = sub.add_parser('semi', help='verify or search semi-invariants (Darboux polynomials)')
    p.add_argument('--field', required=True, help='vector field JSON')
    p.add_argument('--verify', help='polynomial text or file')
    p.add_argument('--search', action='store_true')
    p.add_argument('--dmax', type=_positive_int, default=1)
    p.add_argument('--degree-cap', type=_positive_int, default=None,
                   help='total degree cap of the elimination (default 2(d+m))')

    p = sub.add_parser('multiplier', help='check a Jacobi multiplier built from '
                                          'semi-invariants')
    p.add_argument('--field', required=True, help='vector field JSON')
    p.add_argument('--factors', required=True, help='factor list JSON')
    p.add_argument('--property-e', help='property E report JSON')

    p = sub.add_parser('bounds', help='degree bounds for semi-invariants and invariant lines')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--degrees', type=_int_list)
    p.add_argument('--homogeneous-degrees', type=_int_list)
    p.add_argument('--exponents', type=_int_list)
    p.add_argument('--curves', type=int)
    p.add_argument('--field', help='vector field JSON for the infinity hypothesis')
    p.add_argument('--property-e', help='property E report JSON')
    p.add_argument('--relatively-prime', action='store_true')
    return parser


def _emit(report, path):
    if path is None:
        dump_json(report, sys.stdout)
    else:
        with open(path, 'w') as f:
            dump_json(report, f)


def _error(payload):
    sys.stderr.write(json.dumps(payload, sort_keys=True) + '\n')


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 2
    if args.subcommand == 'bounds' and (args.m < 2 or args.n < 2):
        parser.print_usage(sys.stderr)
        _error({'error': 'usage', 'message': 'bounds need --m >= 2 and --n >= 2',
                'location': None})
        return 2

    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else
                        logging.INFO if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        cfg = RunConfig(args.subcommand, inputs=dict(vars(args)),
                        precision_bits=args.precision, budget=args.budget,
                        seed=args.seed, out=args.out)
    except ValueError as err:
        parser.print_usage(sys.stderr)
        _error({'error': 'usage', 'message': str(err), 'location': None})
        return 2

    try:
        report = COMMANDS[cfg.subcommand](cfg, args)
    except UsageError as err:
        _error(err.payload)
        return 2
    except InvsurfError as err:
        _error(err.as_dict())
        return 1
    except (IOError, OSError) as err:
        _error(SchemaError('cannot read input: %s' % err).as_dict())
        return 1
    except (AssertionError, ArithmeticError, LookupError, TypeError, ValueError) as err:
        log.debug('%s failed', cfg.subcommand, exc_info=True)
        _error({'error': 'InternalError', 'message': str(err) or type(err).__name__,
                'location': None})
        return 1
    _emit(report, cfg.out)
    return 0


if __name__ == '__main__':
    sys.exit(main())
