"""
Tests for the command-line entry point
"""
import json

import pytest

from cli_app import main
from config import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED


def test_certify_worked_example(capsys, tmp_path):
    out = tmp_path / "cert.json"
    code = main(['certify', '--p', '5', '--a', '1,2', '--b', '0,1,2', '--out', str(out)])
    assert code == EXIT_OK
    assert "bound=3 actual=3" in capsys.readouterr().out
    doc = json.loads(out.read_text())
    assert doc['route'] == 'main'
    assert doc['e_C'] == 2


def test_certify_accepts_braces(capsys):
    assert main(['certify', '--p', '7', '--a', '{0,3,5}', '--b', '{3}']) == EXIT_OK
    assert "route=singleton" in capsys.readouterr().out


def test_certify_equal_sizes(capsys):
    assert main(['certify', '--p', '5', '--a', '1,2', '--b', '3,4']) == EXIT_USAGE
    assert "equal sizes" in capsys.readouterr().err


def test_composite_modulus(capsys):
    assert main(['certify', '--p', '6', '--a', '1', '--b', '0,1']) == EXIT_USAGE
    assert "6 is not prime" in capsys.readouterr().err


@pytest.mark.parametrize("literal", ["1,1", "1,x", "", "0,9"])
def test_bad_set_literals(literal):
    assert main(['certify', '--p', '5', '--a', literal, '--b', '0,1,2']) == EXIT_USAGE


def test_verify_round_trip(capsys, tmp_path):
    out = tmp_path / "cert.json"
    main(['certify', '--p', '7', '--a', '0,1,2', '--b', '0,1,2,3,4', '--out', str(out)])
    capsys.readouterr()
    assert main(['verify', str(out)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("pass")


def test_verify_tampered(capsys, tmp_path):
    out = tmp_path / "cert.json"
    main(['certify', '--p', '5', '--a', '1,2', '--b', '0,1,2', '--out', str(out)])
    doc = json.loads(out.read_text())
    doc['e_C'] = 1
    out.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(['verify', str(out)]) == EXIT_VERIFICATION_FAILED
    assert capsys.readouterr().out.startswith("fail: e_C")


def test_verify_bad_files(capsys, tmp_path):
    assert main(['verify', str(tmp_path / "missing.json")]) == EXIT_USAGE
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert main(['verify', str(garbage)]) == EXIT_VERIFICATION_FAILED
    assert "fail: schema" in capsys.readouterr().out

    not_utf8 = tmp_path / "latin.json"
    not_utf8.write_bytes(b'{"p": 5, "A": [\xff\xfe]}')
    assert main(['verify', str(not_utf8)]) == EXIT_VERIFICATION_FAILED
    assert "fail: schema" in capsys.readouterr().out

    huge = tmp_path / "huge.json"
    huge.write_text('{"p": ' + "9" * 5000 + '}')
    assert main(['verify', str(huge)]) == EXIT_VERIFICATION_FAILED
    assert "fail: schema" in capsys.readouterr().out


def test_eh_interval(capsys, tmp_path):
    out = tmp_path / "eh.json"
    assert main(['eh', '--p', '5', '--a', '0,1,2', '--out', str(out)]) == EXIT_OK
    assert "bound=3 actual=3" in capsys.readouterr().out
    assert main(['verify', str(out)]) == EXIT_OK


def test_bound(capsys):
    assert main(['bound', '--p', '5', '--a', '1,2', '--b', '0,1,2', '--actual']) == EXIT_OK
    assert "bound=3 actual=3" in capsys.readouterr().out
    assert main(['bound', '--p', '7', '--a', '0,1,2', '--kind', 'eh']) == EXIT_OK
    assert capsys.readouterr().out.strip() == "bound=3"
    assert main(['bound', '--p', '7', '--a', '0,1', '--b', '0,1', '--kind', 'cd', '--actual']) == EXIT_OK
    assert "bound=3 actual=3" in capsys.readouterr().out
    assert main(['bound', '--p', '7', '--a', '0,1', '--b', '2,3']) == EXIT_USAGE


def test_sweep(capsys, tmp_path):
    out = tmp_path / "report.json"
    code = main(['-q', 'sweep', '--p', '5', '--kind', 'anr', '--workers', '1', '--out', str(out),
                 '--csv', str(tmp_path / "tight.csv")])
    assert code == EXIT_OK
    assert "violations=0" in capsys.readouterr().out
    assert json.loads(out.read_text())['violations'] == []


def test_sweep_seeded_certificates(capsys):
    code = main(['-q', 'sweep', '--p', '11', '--seed', '3', '--samples', '200', '--certificates'])
    assert code == EXIT_OK
    assert "pairs=200, violations=0" in capsys.readouterr().out


def test_sweep_budget(capsys):
    assert main(['-q', 'sweep', '--p', '13', '--kind', 'anr']) == EXIT_BUDGET
    assert "exceed the exhaustive cap" in capsys.readouterr().err


def test_certificate_sweep_budget_respects_max_size(capsys):
    code = main(['-q', 'sweep', '--p', '13', '--certificates', '--max-size', '2'])
    assert code == EXIT_OK
    assert "pairs=2,028, violations=0" in capsys.readouterr().out
    assert main(['-q', 'sweep', '--p', '13', '--certificates']) == EXIT_BUDGET
