import json

import pytest

from loopmod.cli import main

SPEC_2Z = {
    "schema": 1,
    "algebra": {"series": "A", "rank": 1},
    "n": 1,
    "dims": [2],
    "weights": [
        {"index": [1], "coords": [1]},
        {"index": [2], "coords": [1]},
    ],
    "evals": [[1, -1]],
    "rho": [0],
}

SPEC_A = {
    "schema": 1,
    "algebra": {"series": "A", "rank": 1},
    "n": 1,
    "dims": [1],
    "weights": [{"index": [1], "coords": [1]}],
    "evals": [[2]],
    "rho": [0],
}

SPEC_B = dict(SPEC_A, evals=[[6]])
SPEC_C = dict(SPEC_A, weights=[{"index": [1], "coords": [2]}])

TWISTED = {
    "schema": 1,
    "algebra": {"series": "A", "rank": 2},
    "n": 1,
    "dims": [1],
    "weights": [{"index": [1], "coords": [1, 1]}],
    "evals": [[1]],
    "rho": [0],
    "aut": {"perm": [2, 1], "order": 2},
}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return _write


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_classify_report(write, capsys):
    path = write(SPEC_2Z, "s.json")
    code, doc = _run(capsys, ["classify", path])
    assert code == 0
    assert doc["schema"] == 1
    assert doc["command"] == "classify"
    assert doc["result"]["index"] == 2
    assert doc["result"]["support"]["lattice"]["basis"] == [[2]]
    assert len(doc["input_digest"]) == 64


def test_support_and_blocks(write, capsys):
    path = write(SPEC_2Z, "s.json")
    code, doc = _run(capsys, ["support", path])
    assert code == 0 and doc["result"]["periods"] == [2]
    code, doc = _run(capsys, ["blocks", path])
    assert code == 0
    assert doc["result"]["blocks"][0]["period"] == 2


def test_iso_witness_and_exit_codes(write, capsys):
    a = write(SPEC_A, "a.json")
    b = write(SPEC_B, "b.json")
    c = write(SPEC_C, "c.json")
    code, doc = _run(capsys, ["iso", a, b])
    assert code == 0
    assert doc["result"]["witness"]["scalings"][0]["num"] == 3
    code, doc = _run(capsys, ["iso", a, c])
    assert code == 1
    assert doc["result"]["reason"] == "weight-mismatch"


def test_iso_refutation_characters(write, capsys):
    a = write(SPEC_A, "a.json")
    c = write(SPEC_C, "c.json")
    code, doc = _run(capsys, ["iso", a, c, "--refute-box", "2"])
    assert code == 1
    assert doc["result"]["characters_differ"] is True


def test_twisted_commands(write, capsys):
    t = write(TWISTED, "t.json")
    code, doc = _run(capsys, ["twisted-classify", t])
    assert code == 0
    assert doc["result"]["type"] == "second"
    assert doc["result"]["m_hat"] == 2
    code, doc = _run(capsys, ["twisted-iso", t, t])
    assert code == 0 and doc["result"]["isomorphic"]
    code, doc = _run(capsys, ["reducibility", t])
    assert code == 0
    assert doc["result"] == {"completely_reducible": True, "reason": "image-equality"}


def test_twisted_command_needs_aut(write, capsys):
    path = write(SPEC_A, "a.json")
    code, doc = _run(capsys, ["twisted-classify", path])
    assert code == 2
    assert doc["diagnostics"][0]["type"] == "InputError"


def test_verify_passes(write, capsys):
    path = write(SPEC_2Z, "s.json")
    code, doc = _run(capsys, ["verify", path, "--box", "3"])
    assert code == 0
    assert doc["result"]["ok"]
    assert doc["result"]["components"] == 2
    assert all(doc["result"]["checks"].values())


def test_exit_code_structure_errors(write, capsys):
    trivial = dict(SPEC_A, weights=[{"index": [1], "coords": [0]}])
    path = write(trivial, "t.json")
    code, doc = _run(capsys, ["classify", path])
    assert code == 3
    assert doc["diagnostics"][0]["type"] == "TrivialModuleError"


def test_exit_code_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, doc = _run(capsys, ["classify", str(bad)])
    assert code == 2


def test_exit_code_cancellation_regime(write, capsys):
    doc_in = {
        "schema": 1,
        "algebra": {"series": "A", "rank": 1},
        "n": 1,
        "dims": [2],
        "weights": [
            {"index": [1], "coords": [1]},
            {"index": [2], "coords": [2]},
        ],
        "evals": [[2, -1]],
        "rho": [0],
    }
    path = write(doc_in, "cancel.json")
    code, doc = _run(capsys, ["support", path])
    assert code == 3
    assert doc["diagnostics"][0]["type"] == "SupportNotSubgroupError"


def test_reports_are_deterministic(write, capsys):
    path = write(SPEC_2Z, "s.json")
    main(["classify", path])
    first = capsys.readouterr().out
    main(["classify", path])
    second = capsys.readouterr().out
    assert first == second


def test_text_output(write, capsys):
    path = write(SPEC_A, "a.json")
    code = main(["--output", "text", "support", path])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("command: support")


def test_scalar_json_round_trip(write, capsys):
    doc_in = dict(
        SPEC_A,
        evals=[[{"num": 1, "den": 2, "zeta_pow": 1, "zeta_order": 3}]],
    )
    path = write(doc_in, "z.json")
    code, doc = _run(capsys, ["support", path])
    assert code == 0


def test_fractional_rho(write, capsys):
    doc_in = dict(SPEC_A, rho=["1/2"])
    path = write(doc_in, "r.json")
    code, doc = _run(capsys, ["classify", path])
    assert code == 0


def test_wrong_declared_aut_order(write, capsys):
    doc_in = dict(TWISTED, aut={"perm": [2, 1], "order": 3})
    path = write(doc_in, "wrong.json")
    code, doc = _run(capsys, ["twisted-classify", path])
    assert code == 2
    assert doc["diagnostics"][0]["type"] == "InputError"
