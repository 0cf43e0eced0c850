import json
import subprocess
import sys

import pytest

from noether_forge.cli import main
from noether_forge.serialize import (
    dumps,
    fixture_names,
    load_fixture,
    loads,
    semigroup_from_doc,
    semigroup_to_doc,
)
from noether_forge.semigroup import GoodSemigroup, from_numerical_generators


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fixtures_present():
    names = set(fixture_names())
    for n in ("ex_noether_g5", "ex_gon_g6", "ex_gon_g5_nonmonomial", "ex_cliff_g5", "multibranch_g5",
              "cp1", "cp2", "cp3", "star_357", "smooth", "hyperelliptic_g3"):
        assert n in names


def test_analyze_noether_fixture(capsys):
    code, out, _ = run(capsys, "analyze", "ex_noether_g5")
    rep = json.loads(out)
    assert code == 0
    inv = rep["invariants"]
    assert inv["genus"] == 5 and inv["eta"] == 1 and inv["points"][0]["kunz"]


def test_analyze_smooth(capsys):
    code, out, _ = run(capsys, "analyze", "smooth")
    inv = json.loads(out)["invariants"]
    assert inv["genus"] == 0
    assert not any(inv[k] for k in ("nearly_normal", "nearly_gorenstein", "nonhyperelliptic"))


def test_verify_noether_certificate(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "noether", "--level", "2", "ex_noether_g5")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass"
    prods = rep["witnesses"]["level"]["products"]
    assert all(str(k) in prods for k in range(8, 15))


def test_verify_equivalences(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "equivalences", "ex_noether_g5")
    flags = json.loads(out)["witnesses"]
    assert code == 0 and all(flags.values())


def test_verify_lemma_corpus(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "lemma", "--corpus", "genus<=5")
    assert code == 0 and json.loads(out)["witnesses"]["failures"] == 0


def test_verify_quadrics_text(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "quadrics", "--r", "3", "ex_noether_g5", "--format", "text")
    assert code == 0 and "status: \"pass\"" in out


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "analyze", "no_such_fixture")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "parametrized", "generators": ["t^"], "singular_fibers": []}')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "position" in err
    bad.write_text("{not json")
    assert run(capsys, "analyze", str(bad))[0] == 2
    assert run(capsys, "verify", "--theorem", "lemma", "--corpus", "all")[0] == 2
    assert run(capsys, "corpus", "--genus-max", "13")[0] == 2
    assert run(capsys, "search", "ex_noether_g5")[0] == 2


def test_corpus_counts(capsys):
    code, out, _ = run(capsys, "corpus", "--genus-max", "3")
    assert code == 0 and len(out.splitlines()) == 8
    code, out, _ = run(capsys, "corpus", "--genus-max", "0")
    assert [json.loads(x) for x in out.splitlines()] == [{"branches": 1, "conductor": [0], "small_elements": [[0]]}]
    a = run(capsys, "corpus", "--genus-max", "8")[1]
    b = run(capsys, "corpus", "--genus-max", "8")[1]
    assert a == b and len(a.splitlines()) == 156


def test_search_outputs(capsys):
    code, out, _ = run(capsys, "search", "cp1", "--gonality", "--clifford", "--koszul", "1", "2")
    rep = json.loads(out)
    assert rep["gonality"]["gonality_upper"] == 3 and rep["clifford_classification"]["clifford"] == 1
    assert rep["koszul"]["dim_Kpq"] == 0


def test_candidate_sheaf_file(capsys, tmp_path):
    f = tmp_path / "sheaf.json"
    f.write_text(json.dumps({"generators": ["1", "t"]}))
    code, out, _ = run(capsys, "search", "ex_gon_g6", "--gonality", "--candidate-sheaf", str(f))
    assert code == 0 and json.loads(out)["gonality"]["gonality_upper"] == 4


def test_determinism(capsys):
    a = run(capsys, "analyze", "ex_gon_g6")[1]
    b = run(capsys, "analyze", "ex_gon_g6")[1]
    assert a == b


def test_round_trip():
    for S in (from_numerical_generators([3, 5, 7]), GoodSemigroup.from_elements((2, 6), [(0, 0), (1, 3), (1, 5), (2, 3), (2, 6)])):
        doc = semigroup_to_doc(S)
        text = dumps(doc)
        assert dumps(loads(text)) == text
        assert semigroup_from_doc(loads(text)) == S
    for name in fixture_names():
        doc = load_fixture(name)
        assert loads(dumps(doc)) == doc


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "noether_forge", "analyze", "cp1"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["invariants"]["eta"] == 2


def test_worker_pool(monkeypatch, capsys):
    monkeypatch.setenv("NOETHER_FORGE_THREADS", "2")
    code, out, _ = run(capsys, "verify", "--theorem", "lemma", "--corpus", "genus<=4")
    assert code == 0 and json.loads(out)["witnesses"]["checked"] == 15
