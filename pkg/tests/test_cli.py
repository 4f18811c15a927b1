import json

import pytest

from ribbongraph.cli import main
from ribbongraph.presentation import parse


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def arp(tmp_path):
    def write(text, name="g.arp"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_info_moebius(capsys, arp):
    code, out, _ = run(capsys, "info", "--input", arp("C1: 1+ 1-\n"))
    assert code == 0
    assert out.strip() == "V=1 E=1 F=1 χ=1 nonorientable genus=1 eulerian=yes bipartite=no even-face=yes t=2"


def test_info_annulus_and_torus(capsys):
    code, out, _ = run(capsys, "info", "--input", "annulus")
    assert "F=2 χ=2 orientable genus=0" in out and "even-face=no t=1" in out
    code, out, _ = run(capsys, "info", "--input", "torus_bouquet")
    assert "χ=0" in out and "genus=1" in out and "even-face=yes" in out and "bipartite=no" in out


def test_info_json(capsys):
    code, out, _ = run(capsys, "info", "--input", "theta", "--json")
    data = json.loads(out)
    assert data["boundary_count"] == 3 and data["genus"] == 0 and data["t"] == 1


def test_bad_input_exit_2(capsys, arp):
    code, _, err = run(capsys, "info", "--input", arp("C1: 1+ 2+ 1- 3+"))
    assert code == 2 and "label 2 occurs once" in err
    code, _, err = run(capsys, "info", "--input", arp("C1 1+ 1+"))
    assert code == 2 and "line 1" in err
    code, _, _ = run(capsys, "info", "--input", "/nonexistent/file.arp")
    assert code == 2


def test_dual(capsys):
    code, out, _ = run(capsys, "dual", "--input", "annulus", "--edges", "1")
    circles = parse(out).circles
    assert code == 0 and [c.degree for c in circles] == [1, 1]


def test_dual_identity_and_all(capsys, arp):
    src = "C1: 1+ 2+ 3+\nC2: 3+ 2+ 1+"
    f = arp(src)
    _, out, _ = run(capsys, "dual", "--input", f)
    assert out.strip() == src
    _, out, _ = run(capsys, "dual", "--input", f, "--edges", "ALL")
    assert [c.degree for c in parse(out).circles] == [2, 2, 2]


def test_dual_unknown_label(capsys):
    code, _, err = run(capsys, "dual", "--input", "annulus", "--edges", "1,7")
    assert code == 2 and "7" in err


def test_medial(capsys):
    code, out, _ = run(capsys, "medial", "--input", "moebius", "--json")
    data = json.loads(out)
    assert data["t"] == 2 and data["cyclic_order"]["1"] == ["g1.2", "g1.1", "g1.2", "g1.1"]


def test_enumerate(capsys):
    _, out, _ = run(capsys, "enumerate", "--input", "moebius", "--kind", "eulerian")
    assert out.strip() == "∅, {1} (2 sets)"
    _, out, _ = run(capsys, "enumerate", "--input", "path", "--kind", "bipartite")
    assert out.strip() == "∅ (1 set)"
    _, out, _ = run(capsys, "enumerate", "--input", "annulus", "--kind", "even-face")
    assert out.strip() == "{1} (1 set)"
    code, out, _ = run(capsys, "enumerate", "--input", "moebius", "--kind", "ct-directions", "--json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 4
    assert sorted((d["C"], d["D"], d["T"]) for d in data["directions"]) == [
        ([], ["1"], []), ([], ["1"], []), (["1"], [], []), (["1"], [], [])]


def test_enumerate_bipartite_needs_orientable(capsys):
    code, _, _ = run(capsys, "enumerate", "--input", "moebius", "--kind", "bipartite")
    assert code == 2


def test_verify_fixtures(capsys):
    code, out, _ = run(capsys, "verify", "--all-fixtures")
    assert code == 0 and out.strip().endswith("6 instances: PASS")


def test_verify_exhaustive_json(capsys):
    code, out, _ = run(capsys, "verify", "--exhaustive", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["instances"] == 28


def test_verify_random_is_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "--random", "5", "--seed", "9", "--max-edges", "5", "--json")
    _, b, _ = run(capsys, "verify", "--random", "5", "--seed", "9", "--max-edges", "5", "--json")
    assert a == b and json.loads(a)["passed"]


def test_verify_fault_injection_fails(capsys):
    code, out, _ = run(capsys, "verify", "--input", "path", "--inject-fault", "cd-swap")
    assert code == 1
    assert "FAIL bipartite_characterization" in out and "witness" in out


def test_verify_size_cap(capsys):
    code, _, _ = run(capsys, "verify", "--exhaustive", "5")
    assert code == 2


def test_fixtures_command(capsys):
    _, out, _ = run(capsys, "fixtures")
    assert out.count("\n") == 6
    _, out, _ = run(capsys, "fixtures", "moebius")
    assert out.strip() == "C1: 1+ 1-"


def test_verify_parallel_matches_sequential(capsys, monkeypatch):
    import ribbongraph.cli as cli
    monkeypatch.setattr(cli.os, "cpu_count", lambda: 1)
    _, seq, _ = run(capsys, "verify", "--random", "6", "--seed", "3", "--max-edges", "5", "--json")
    monkeypatch.setattr(cli.os, "cpu_count", lambda: 3)
    _, par, _ = run(capsys, "verify", "--random", "6", "--seed", "3", "--max-edges", "5", "--json")
    assert par == seq


def test_fault_reaches_workers(capsys, monkeypatch):
    import ribbongraph.cli as cli
    monkeypatch.setattr(cli.os, "cpu_count", lambda: 2)
    code, out, _ = run(capsys, "verify", "--all-fixtures", "--inject-fault", "cd-swap")
    assert code == 1 and "FAIL" in out
