"""
Test cases for the command-line front end.

1. Exit codes for members, non-members and errors
2. JSON report contents and determinism
3. Text output
"""

import sys
import os
import json
import subprocess
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cli import EXIT_ERROR, EXIT_OK, EXIT_VERDICT, main

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_classify(capsys):
    """Test exit codes of classify."""
    print("=== classify ===")

    tests = [
        ('model', EXIT_OK, True, None),
        ('flat', EXIT_VERDICT, False, 'rank(L,Lbar,T)=3'),
        ('model_no_phi3', EXIT_VERDICT, False, 'rank(L,Lbar,T,S,R)=5'),
    ]
    for name, code, member, failure in tests:
        result, out = _run(capsys, ['classify', '--builtin', name])
        report = json.loads(out)
        assert result == code
        assert report['classification']['member'] == member
        assert report['classification']['first_failure'] == failure
        assert report['manifold'] == name
        assert len(report['input_digest']) == 64


def test_point(capsys):
    code, out = _run(capsys, ['classify', '--builtin', 'model', '--point', '1,0,0,0,0'])
    assert code == EXIT_OK
    conditions = json.loads(out)['classification']['conditions']
    assert all('point_rank' in condition for condition in conditions)

    code, out = _run(capsys, ['classify', '--builtin', 'model', '--point', '1,2'])
    assert code == EXIT_ERROR
    assert json.loads(out)['error']['type'] == 'ValueError'


def test_fundamentals(capsys):
    code, out = _run(capsys, ['fundamentals', '--builtin', 'model'])
    report = json.loads(out)
    assert code == EXIT_OK
    assert report['fundamentals'] == {'A': '0', 'B': '1', 'E': '0', 'F': '0', 'G': '0'}
    assert set(report['torsion'].values()) == {'0'}


def test_invariants(capsys):
    """invariants on the model: every I_i prints as 0 and reruns are byte-identical."""
    code, first = _run(capsys, ['invariants', '--builtin', 'model'])
    assert code == EXIT_OK
    report = json.loads(first)
    assert set(report['invariants'].values()) == {'0'}
    assert len(report['invariants']) == 15
    assert report['consistency']['passed']
    assert report['audit']['passed']
    assert report['connection_axioms']['passed']
    assert 'timings' not in report

    code, second = _run(capsys, ['invariants', '--builtin', 'model'])
    assert first == second
    assert json.loads(json.dumps(report, sort_keys=True)) == report

    code, out = _run(capsys, ['invariants', '--builtin', 'model', '--timings'])
    assert 'timings' in json.loads(out)


def test_invariants_non_member(capsys):
    code, out = _run(capsys, ['invariants', '--builtin', 'levi_sphere'])
    assert code == EXIT_VERDICT
    assert 'invariants' not in json.loads(out)


def test_verify_model(capsys):
    code, out = _run(capsys, ['verify-model'])
    report = json.loads(out)
    assert code == EXIT_OK
    assert report['passed']
    assert report['axioms']['pairing']
    assert report['axioms']['equivariance']
    assert report['axioms']['nondegeneracy']
    assert report['template']['passed']
    assert report['template_axioms']['passed']
    assert report['ad_alpha_spectrum'] == ['0', '-4', '-3', '-2', '-1', '-1']


def test_structure_eqs(capsys):
    for stage in ('0', '4'):
        code, out = _run(capsys, ['structure-eqs', '--builtin', 'model', '--stage', stage])
        structure = json.loads(out)['structure']
        assert code == EXIT_OK
        assert structure['dtau'] == {'sigma^zeta': '1', 'sigma^zetabar': '1'}
        assert structure['drho'] == {'zeta^zetabar': 'i'}
        assert 'dzeta' not in structure


def test_structure_eqs_builds_frame_once(capsys, monkeypatch):
    """Stage 0 reuses the frame and torsion from classification."""
    import cli
    calls = []
    original = cli.cr_generator

    def counting(manifold):
        calls.append(manifold.name)
        return original(manifold)

    monkeypatch.setattr(cli, 'cr_generator', counting)
    code, out = _run(capsys, ['structure-eqs', '--builtin', 'model', '--stage', '0'])
    assert code == EXIT_OK
    assert calls == ['model']
    assert json.loads(out)['fundamentals']['B'] == '1'


def test_manifold_files(capsys, tmp_path):
    path = tmp_path / 'graph.json'
    path.write_text(json.dumps({'name': 'sphere', 'phi': ['x^2+y^2', '0', '0']}),
                    encoding='utf-8')
    code, out = _run(capsys, ['classify', '--manifold', str(path)])
    assert code == EXIT_VERDICT
    assert json.loads(out)['manifold'] == 'sphere'

    broken = tmp_path / 'broken.json'
    broken.write_text('{"phi": ["x^", "0", "0"]}', encoding='utf-8')
    code, out = _run(capsys, ['classify', '--manifold', str(broken)])
    assert code == EXIT_ERROR
    assert json.loads(out)['error']['type'] == 'ManifoldFileError'

    code, out = _run(capsys, ['classify', '--manifold', str(tmp_path / 'missing.json')])
    assert code == EXIT_ERROR


def test_text_format(capsys):
    code, out = _run(capsys, ['classify', '--builtin', 'model', '--format', 'text'])
    assert code == EXIT_OK
    assert 'member: yes' in out
    assert 'manifold: model' in out


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, os.path.join(ROOT, 'cli.py'), 'classify', '--builtin', 'flat'],
        capture_output=True,
        text=True,
    )
    assert result.returncode == EXIT_VERDICT
    assert json.loads(result.stdout)['classification']['member'] is False


def run_all_tests():
    """Run all tests."""
    import pytest
    sys.exit(pytest.main([__file__, '-v']))


if __name__ == '__main__':
    run_all_tests()
