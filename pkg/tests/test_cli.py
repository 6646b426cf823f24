import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from llab.cli import run
from llab.presets import PRESETS
from llab.serialize import parse_field_spec

FIELDS_DIR = Path(__file__).resolve().parents[1] / "fields"


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, json.loads(buf.getvalue()), buf.getvalue()


def test_parse_field_spec_examples():
    K = parse_field_spec('{"p":2,"f":1,"eisenstein":[[-2],[1]]}')
    assert (K.p, K.e, K.f) == (2, 1, 1)
    K = parse_field_spec('{"p":2,"f":1,"eisenstein":[[-2],[0],[0],[1]]}')
    assert K.e == 3 and K.pi**3 == K(2)
    K = parse_field_spec('{"p":3,"f":1,"eisenstein":[[3],[-3],[1]]}')
    assert K.mu_p and (1 - K.pi) ** 3 == K.one


def test_field_files_match_presets():
    for name, spec in PRESETS.items():
        assert json.loads((FIELDS_DIR / f"{name}.json").read_text()) == spec


def test_census_command():
    code, doc, _ = call("census", "--field", str(FIELDS_DIR / "q3zeta3.json"), "--l", "3")
    assert code == 0
    assert doc["result"]["rows"] == [[1, 3], [2, 9], [3, 27]]
    assert set(doc) == {"command", "inputs", "result", "certificates", "precision_used"}


def test_mass_command():
    code, doc, _ = call("mass", "--field", "q2.json", "--l", "2")
    assert code == 0 and doc["result"] == "2"
    code, doc, _ = call("mass", "--field", "q3zeta3", "--l", "3")
    assert doc["result"] == "13/27"


@pytest.mark.parametrize("example", ["ex47", "ex48", "ex50"])
def test_reproduce(example):
    code, doc, _ = call("reproduce", example)
    assert code == 0 and doc["result"]["match"] is True


def test_reproduce_ex47_classes():
    _, doc, _ = call("reproduce", "ex47")
    assert set(doc["result"]["squares_mod_4"]) == {"1", "1+pi^2+pi^4", "1+pi^2+pi^5", "1+pi^4+pi^5"}


def test_classify_verify():
    code, doc, _ = call("classify", "--field", "q3zeta3", "--l", "3", "--mu", "pi", "--verify")
    assert code == 0
    assert doc["result"]["t"] == 3
    assert doc["certificates"]["witness_check"] is True
    assert doc["certificates"]["break_oracle"] == 3


def test_pipeline_command():
    for chain in ("chain_zeta8.json", "chain_sqrt5.json"):
        old = Path.cwd()
        code, doc, _ = call("pipeline", "--chain", str(FIELDS_DIR / chain))
        assert code == 0 and doc["result"]["v_disc_total"] == 16
        assert Path.cwd() == old


@pytest.mark.parametrize(
    "argv, error",
    [
        (("classify", "--field", "q5", "--l", "5", "--mu", "2"), "KummerHypothesisFails"),
        (("classify", "--field", "q2", "--l", "2", "--mu", "17"), "NotALine"),
        (("field-info", "--field", "nosuch"), "ParseError"),
        (("field-info", "--field", '{"p":2,"f":1,"eisenstein":[[-4],[1]]}'), "NotEisenstein"),
    ],
)
def test_domain_errors(argv, error):
    code, doc, _ = call(*argv)
    assert code == 2 and doc["error"] == error


def test_precision_error(monkeypatch):
    monkeypatch.setenv("LLAB_PREC", "4")
    code, doc, _ = call("field-info", "--field", "q2")
    assert code == 3 and doc["error"] == "PrecisionTooLow"


def test_env_precision(monkeypatch):
    monkeypatch.setenv("LLAB_PREC", "40")
    _, doc, _ = call("unit-level", "--field", "q2", "--l", "2", "--u", "5")
    assert doc["precision_used"] == 40


@pytest.mark.parametrize(
    "argv",
    [
        ("field-info", "--field", "q2sqrt5"),
        ("pairing", "--field", "q2", "--eta", "5", "--oracle"),
        ("filtration-m", "--field", "q3zeta3"),
        ("ff-disc", "--p", "2", "--f", "2", "--poly", "[[1,0],[1,0],[1,0]]"),
        ("ec-realize", "--field", "q5", "--delta", "2"),
        ("ec-class", "--field", "q5", "--a", "0,0,0,-1,0"),
        ("splitting", "--field", "q2", "--l", "2", "--mu", "3"),
    ],
)
def test_deterministic_output(argv):
    first = call(*argv)
    second = call(*argv)
    assert first[0] == 0
    assert first[2] == second[2]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "llab", "unit-level", "--field", "q2", "--l", "2", "--u", "-1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["result"] == {"level": 1}
