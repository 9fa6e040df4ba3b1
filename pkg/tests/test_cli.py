"""Test cases for the command-line front end"""

import json

import pandas as pd
import pytest

from cli.main import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main
from cli.schemas import AnalysisReport, TorusInputDocument, parse_report, render_json
from src.catalog import catalog_keys, preset
from src.oracle import OracleHarness


@pytest.fixture
def run(capsys):
    """Run the CLI and return (exit code, stdout)"""
    def _run(*argv):
        code = main(list(argv))
        return code, capsys.readouterr().out
    return _run


@pytest.fixture
def sign_file(tmp_path):
    """Torus input document for the sign lattice with unramified arithmetic"""
    X, arith = preset('sign', arithmetic='unramified')
    path = tmp_path / "sign.json"
    path.write_text(TorusInputDocument.from_objects(X, arith).model_dump_json())
    return path


class TestAnalyzeCommand:
    """Test suite for `analyze`"""

    def test_sign_unramified(self, run):
        code, out = run('analyze', 'sign', '--arith', 'unramified')
        assert code == EXIT_OK
        data = json.loads(out)
        assert data['version'] == 1
        assert data['command'] == 'analyze'
        report = data['report']
        assert report['cohomology']['1']['torsion'] == ['2']
        assert report['dual_torus']['fixed_points']['component_group']['torsion'] == ['2']
        assert report['character_torus']['xt_rank'] == '0'
        assert all(c['status'] == 'pass' for c in report['checks'])

    def test_preset_parameters(self, run):
        code, out = run('analyze', 'split', '-p', 'rank=3')
        assert code == EXIT_OK
        report = json.loads(out)['report']
        assert report['summary']['rank'] == '3'
        assert report['summary']['split'] is True
        assert report['character_torus'] is None

    def test_weil_restriction_sandwich(self, run):
        code, out = run('analyze', 'weil_restriction', '-p', 'n=2', '--arith', 'unramified')
        assert code == EXIT_OK
        sandwich = json.loads(out)['report']['sandwich']
        assert (sandwich['index_xt_over_x_gamma'], sandwich['index_pr_over_xt']) == ('2', '1')

    def test_text_output(self, run):
        code, out = run('analyze', 'sign', '--text')
        assert code == EXIT_OK
        assert "H^1(Γ, X)  = Z/2" in out
        assert "check component_group_vs_h1: pass" in out

    def test_output_is_byte_stable(self, run):
        _, first = run('analyze', 'weil_restriction', '--arith', 'unramified')
        _, second = run('analyze', 'weil_restriction', '--arith', 'unramified')
        assert first == second

    def test_report_round_trip(self, run):
        _, out = run('analyze', 'sign', '--arith', 'totally_ramified')
        envelope, report = parse_report(out, AnalysisReport)
        assert envelope.command == 'analyze'
        assert report.character_torus.xt_rank == '0'
        assert render_json('analyze', report) == out

    def test_input_file(self, run, sign_file):
        code, out = run('analyze', str(sign_file))
        assert code == EXIT_OK
        from_file = json.loads(out)['report']
        _, out = run('analyze', 'sign', '--arith', 'unramified')
        from_preset = json.loads(out)['report']
        assert from_file['cohomology'] == from_preset['cohomology']
        assert from_file['character_torus']['arithmetic']['label'] == 'file'

    def test_invalid_input_file(self, run, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({
            'group': {'order': 2, 'mult_table': [[0, 1], [1, 0]]},
            'action': [[['1']]],
        }))
        code, _ = run('analyze', str(path))
        assert code == EXIT_INPUT

    def test_missing_input_file(self, run, tmp_path):
        code, _ = run('analyze', str(tmp_path / "missing.json"))
        assert code == EXIT_INPUT

    def test_parameters_with_file(self, run, sign_file):
        code, _ = run('analyze', str(sign_file), '-p', 'n=2')
        assert code == EXIT_INPUT

    def test_bad_parameter(self, run):
        assert run('analyze', 'norm_one_cyclic', '-p', 'n')[0] == EXIT_INPUT
        assert run('analyze', 'norm_one_cyclic', '-p', 'n=two')[0] == EXIT_INPUT
        assert run('analyze', 'norm_one_cyclic', '-p', 'n=1')[0] == EXIT_INPUT

    def test_unknown_preset(self, run):
        code, _ = run('analyze', 'no_such_torus')
        assert code == EXIT_INPUT


class TestOtherCommands:
    """Test suite for `cohomology`, `sandwich`, `weil`, `oracle` and `catalog`"""

    def test_cohomology(self, run):
        code, out = run('cohomology', 'sign', '--degree', '1')
        assert code == EXIT_OK
        report = json.loads(out)['report']
        assert report['group']['torsion'] == ['2']
        assert len(report['representatives']) == 1
        assert report['modulus'] is None

    def test_cohomology_mod(self, run):
        code, out = run('cohomology', 'sign', '--degree', '2', '--mod', '2')
        assert code == EXIT_OK
        report = json.loads(out)['report']
        assert report['modulus'] == '2'
        assert report['group']['torsion'] == ['2']

    def test_sandwich(self, run):
        code, out = run('sandwich', 'weil_restriction', '-p', 'n=2', '--arith', 'unramified')
        assert code == EXIT_OK
        report = json.loads(out)['report']
        assert report['sandwich']['index_xt_over_x_gamma'] == '2'
        assert report['xs_comparison']['lattices_equal'] is True
        assert report['conventions']['frobenius_log_sign'] == '-1'

    def test_sandwich_needs_arithmetic(self, run):
        assert run('sandwich', 'sign')[0] == EXIT_INPUT
        assert run('sandwich', 'a2_weyl', '--arith', 'unramified')[0] == EXIT_INPUT

    def test_sandwich_arithmetic_file(self, run, tmp_path):
        path = tmp_path / "arith.json"
        path.write_text(json.dumps({'inertia': [0], 'frobenius': 1}))
        code, out = run('sandwich', 'sign', '--arith', str(path))
        assert code == EXIT_OK
        assert json.loads(out)['report']['sandwich']['arithmetic'] == 'file'

    def test_weil(self, run):
        code, out = run('weil', 'weil_restriction', '-p', 'n=2', '--mod', '2', '--den', '4')
        assert code == EXIT_OK
        report = json.loads(out)['report']
        assert report['passed'] is True
        assert report['h1']['2']['torsion'] == ['2']
        assert all(not c['failures'] for c in report['checks'])

    def test_weil_needs_cyclic_group(self, run):
        assert run('weil', 'a2_weyl')[0] == EXIT_INPUT

    def test_oracle_passes(self, run):
        code, out = run('oracle', '--max-group', '2', '--max-mod', '2', '--max-rank', '1',
                        '--cyclic-max', '3', '--sweep', 'cyclic')
        assert code == EXIT_OK
        report = json.loads(out)['report']
        assert report['passed'] is True
        assert report['sign_fault'] is False

    def test_oracle_detects_injected_fault(self, run):
        code, out = run('oracle', '--max-group', '2', '--max-mod', '2', '--max-rank', '1',
                        '--cyclic-max', '3', '--sweep', 'cyclic', '--inject-fault')
        assert code == EXIT_MISMATCH
        report = json.loads(out)['report']
        assert report['passed'] is False
        assert report['mismatched_cases']['cyclic']

    def test_oracle_rejects_empty_scope(self, run):
        code, out = run('oracle', '--sweep', 'enumeration', '--max-mod', '1')
        assert code == EXIT_INPUT
        assert out == ''

    def test_oracle_with_empty_sweep_table(self, run, monkeypatch):
        def no_cases(harness):
            harness.results['cyclic'] = pd.DataFrame()
            return harness.results['cyclic']

        monkeypatch.setattr(OracleHarness, 'resolution_vs_cyclic', no_cases)
        code, out = run('oracle', '--sweep', 'cyclic')
        assert code == EXIT_OK
        report = json.loads(out)['report']
        assert report['mismatched_cases'] == {'cyclic': []}
        assert report['summary'][0]['cases'] == '0'

    def test_catalog(self, run):
        code, out = run('catalog')
        assert code == EXIT_OK
        entries = json.loads(out)['report']['entries']
        assert [e['key'] for e in entries] == catalog_keys()
