import json

import pytest

from invsurf.cli import RunConfig, build_parser, main

from .conftest import data_path


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


@pytest.fixture
def linear_field(tmp_path):
    path = tmp_path / 'linear.json'
    path.write_text(json.dumps({'n': 2, 'components': ['x1', '2*x2']}))
    return str(path)


def test_construct_rational(capsys, tmp_path):
    out_path = tmp_path / 'report.json'
    status, out, _ = run(capsys, '--out', str(out_path), 'construct',
                         '--gamma', data_path('rational_gamma.json'))
    assert status == 0
    assert out == ''
    report = json.loads(out_path.read_text())
    assert report['seventh_method'] == 'resultant'
    assert report['field']['n'] == 3
    assert 'seventh_error' not in report


def test_analyze_example(capsys):
    status, out, _ = run(capsys, 'analyze', '--field', data_path('sqrt235_field.json'),
                         '--lines', data_path('sqrt235_lines.json'))
    assert status == 0
    report = json.loads(out)
    assert report['verdict'] == {'status': 'Satisfied'}
    assert len(report['points']) == 7


def test_semi_verify(capsys, linear_field):
    status, out, _ = run(capsys, 'semi', '--field', linear_field, '--verify', 'x1*x2')
    assert status == 0
    assert json.loads(out) == {'verdict': 'Verified', 'psi': 'x1*x2', 'cofactor': '3'}
    status, out, _ = run(capsys, 'semi', '--field', linear_field, '--verify', 'x1 + x2')
    assert json.loads(out)['verdict'] == 'NotSemiInvariant'


def test_semi_search(capsys, linear_field):
    status, out, _ = run(capsys, 'semi', '--field', linear_field, '--search',
                         '--dmax', '2')
    assert status == 0
    report = json.loads(out)
    assert sorted(r['psi'] for r in report['results']) == ['x1', 'x2']
    assert report['note'] == 'irreducibility not certified'


def test_unknown_symbol_is_a_usage_error(capsys):
    status, _, err = run(capsys, 'semi', '--field', data_path('sqrt235_field.json'),
                         '--verify', 'x4')
    assert status == 2
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload['error'] == 'UnknownSymbol'
    assert payload['location'] == 0


def test_semi_needs_one_mode(capsys, linear_field):
    status, _, _ = run(capsys, 'semi', '--field', linear_field)
    assert status == 2


def test_bounds(capsys):
    status, out, _ = run(capsys, 'bounds', '--m', '2', '--n', '3', '--degrees', '1,1')
    assert status == 0
    report = json.loads(out)
    assert report['line_count_bound'] == 7
    assert report['multiplier_degree_sum'] == 4
    assert report['carnicer_degree_cap'] == 3
    assert report['checks']['product']['status'] == 'Pass'
    status, _, _ = run(capsys, 'bounds', '--m', '1', '--n', '3')
    assert status == 2


def test_transform_poly(capsys):
    status, out, _ = run(capsys, 'transform', '--poly', 'x2*x3 + x1',
                         '--direction', '1,0,0')
    assert status == 0
    report = json.loads(out)
    assert report['result']['text'] == 'x2*x3 + x4'
    status, _, _ = run(capsys, 'transform', '--direction', '1,0,0')
    assert status == 2


def test_multiplier(capsys, tmp_path, linear_field):
    factors = tmp_path / 'factors.json'
    factors.write_text(json.dumps({'factors': [{'poly': 'x1', 'exponent': 1},
                                               {'poly': 'x2', 'exponent': 1}]}))
    status, out, _ = run(capsys, 'multiplier', '--field', linear_field,
                         '--factors', str(factors))
    assert status == 0
    assert json.loads(out) == {'verdict': 'Valid'}


def test_domain_errors_exit_1(capsys, tmp_path):
    gamma = tmp_path / 'singular.json'
    gamma.write_text(json.dumps({'gamma': [['0', '0', '0'], ['1', '2', '3'],
                                           ['4', '5', '6']]}))
    status, out, err = run(capsys, 'construct', '--gamma', str(gamma))
    assert status == 1
    assert out == ''
    assert json.loads(err)['error'] == 'SingularA'
    status, _, err = run(capsys, 'analyze', '--field', str(tmp_path / 'missing.json'),
                         '--lines', data_path('sqrt235_lines.json'))
    assert status == 1
    assert json.loads(err)['error'] == 'SchemaError'


def test_usage_errors_exit_2(capsys):
    assert run(capsys, 'frobnicate')[0] == 2
    assert run(capsys, '--precision', '8', 'bounds', '--m', '2', '--n', '3')[0] == 2
    assert run(capsys, 'bounds', '--m', '2')[0] == 2


def test_run_config_validates():
    with pytest.raises(ValueError):
        RunConfig('bounds', budget=0)
    cfg = RunConfig('bounds')
    assert cfg.seed == 0 and cfg.out is None
    args = build_parser().parse_args(['sample', '--count', '3', '--coordinate-planes'])
    assert args.count == 3 and args.coordinate_planes


@pytest.mark.parametrize('spec', [
    {'n': 'abc', 'components': ['x1']},
    {'n': 0, 'components': []},
    {'n': True, 'components': ['x1']},
    {'n': 2.5, 'components': ['x1', 'x2']},
    {'n': 2, 'components': 'x1, x2'},
    {'n': 2, 'components': ['x1', 'x2'], 'm': 'two'},
    {'n': 2, 'components': ['x1', 'x2'], 'variables': ['a', 'a']},
    {'n': 2, 'components': ['x1', {'terms': 5}]},
    {'n': 2, 'components': ['x1', 'x2'], 'tower': ['abc']},
    ['x1', 'x2'],
])
def test_malformed_field_is_a_schema_error(capsys, tmp_path, spec):
    path = tmp_path / 'bad.json'
    path.write_text(json.dumps(spec))
    status, out, err = run(capsys, 'semi', '--field', str(path), '--search')
    assert status == 1
    assert out == ''
    assert json.loads(err.strip().splitlines()[-1])['error'] == 'SchemaError'


def test_domain_error_in_tower_survives_loading(capsys, tmp_path):
    path = tmp_path / 'tower.json'
    path.write_text(json.dumps({'n': 1, 'components': ['x1'], 'tower': [12]}))
    status, _, err = run(capsys, 'semi', '--field', str(path), '--search')
    assert status == 1
    assert json.loads(err)['error'] == 'NotSquareFree'


@pytest.mark.parametrize('argv', [
    ['sample', '--count', '0'],
    ['sample', '--count', '-3'],
    ['sample', '--count', 'many'],
    ['sample', '--range', '0'],
    ['semi', '--field', 'f.json', '--search', '--dmax', '0'],
    ['semi', '--field', 'f.json', '--search', '--degree-cap', '0'],
])
def test_non_positive_counts_are_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_unexpected_failures_are_reported(capsys, monkeypatch):
    import invsurf.cli as cli

    def broken(cfg, args):
        raise AssertionError('internal invariant')

    monkeypatch.setitem(cli.COMMANDS, 'bounds', broken)
    status, out, err = run(capsys, 'bounds', '--m', '2', '--n', '3')
    assert status == 1
    assert out == ''
    payload = json.loads(err)
    assert payload['error'] == 'InternalError'
    assert payload['message'] == 'internal invariant'
