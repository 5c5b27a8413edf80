import json

import pytest

from ghostlevel.cli import main
from ghostlevel.complexes import FreeComplex, complex_to_json, document
from ghostlevel.koszul import koszul_object
from ghostlevel.poly import Poly, RingSpec


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_verify_theorem_n2(capsys):
    code, doc, _ = run(["verify-theorem", "--nvars", "2", "--samples", "5"], capsys)
    assert code == 0 and doc["verified"]
    assert doc["implied_level_lower_bound"] == 3
    assert doc["koszul"]["level_exact"]


def test_ghost_cert_non_regular(capsys):
    code, doc, _ = run(["ghost-cert", "--seq", "x0,x0"], capsys)
    assert code == 2 and doc["failure"] == "CompositionZero"


def test_ghost_cert_success_and_replay(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["ghost-cert", "--seq", "x0,x1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["implied_level_lower_bound"] == 3 and doc["build_plans"]
    code, rep, _ = run(["replay", str(out)], capsys)
    assert code == 0 and rep["valid"]


def test_ghost_cert_not_ghost_with_override(tmp_path, capsys):
    R = RingSpec(32003, 2)
    A = FreeComplex.free(R)
    g = tmp_path / "g.json"
    g.write_text(json.dumps(document(R, {"complex": complex_to_json(koszul_object(A, ["x0"]) + A)})))
    code, doc, _ = run(["ghost-cert", "--seq", "x0", "--generator", str(g), "--exponents", "0"], capsys)
    assert code == 2 and doc["failure"] == "NotGhost" and doc["stage"] == 1
    code, doc, _ = run(["ghost-cert", "--seq", "x0", "--generator", str(g)], capsys)
    assert code == 0 and doc["exponents"] == [1]


def test_depth_infinity(capsys):
    code, doc, _ = run(["depth", "--ideal", "1"], capsys)
    assert code == 0 and doc["depth"] == "infinity"


def test_depth_of_presented_module(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"ambient_rank": 1, "relations": [["x0"]]}))
    code, doc, _ = run(["depth", "--ideal", "x0,x1", "--module", str(m)], capsys)
    assert code == 0 and doc["depth"] == 1


def test_depth_of_complex_uses_endomorphisms(tmp_path, capsys):
    R = RingSpec(32003, 2)
    m = tmp_path / "k.json"
    m.write_text(json.dumps(complex_to_json(koszul_object(FreeComplex.free(R), ["x0"]))))
    code, doc, _ = run(["depth", "--ideal", "x0,x1", "--module", str(m)], capsys)
    # Hom*(A//x0, A//x0) is A/(x0) in degrees -1 and 0
    assert code == 0 and doc["depth"] == 1


def test_level_koszul(capsys):
    code, doc, _ = run(["level", "--target", "koszul:x0,x1"], capsys)
    assert code == 0
    assert doc["level_upper_bound"] == doc["level_lower_bound"] == 3 and doc["level_exact"]


def test_groebner(capsys):
    code, doc, _ = run(["groebner", "--gens", "x0^2,x0*x1"], capsys)
    assert code == 0 and sorted(doc["basis"]) == ["x0*x1", "x0^2"]


@pytest.mark.parametrize("argv, flag", [
    (["ghost-cert", "--seq", "x9"], "--seq"),
    (["ghost-cert", "--seq", "x0", "--ring", "Z[2]"], "--ring"),
    (["ghost-cert", "--seq", "x0,x1", "--exponents", "1"], "--exponents"),
    (["depth", "--ideal", "x0", "--module", "/nonexistent.json"], "--module"),
    (["level", "--target", "koszul:"], "--target"),
    (["verify-theorem", "--nvars", "-1"], "--nvars"),
    (["frobnicate"], "frobnicate"),
])
def test_usage_errors_exit_one(argv, flag, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1 and flag in err


def test_byte_identical_output(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["verify-theorem", "--nvars", "2", "--samples", "4", "--seed", "7", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
