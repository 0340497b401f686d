import json

import pytest

from cubar.cli import RunConfig, main, run, to_json
from cubar.spaces import REGISTRY, SpaceError, resolve
from cubar.suites import SUITES


def test_cubical_identities_example(capsys):
    assert main(["verify", "--suite", "cubical-identities", "--space", "sphere2", "--max-degree", "5"]) == 0
    assert "PASS  cubical-identities" in capsys.readouterr().out


def test_loop_homology_example(capsys):
    assert main(["homology", "--construction", "loop", "--space", "sphere2", "--max-degree", "6", "--ring", "Z"]) == 0
    assert "betti 1,1,1,1,1,1,1" in capsys.readouterr().out


def test_hga_example_json(capsys):
    assert main(["verify", "--suite", "hga", "--space", "sphere3", "--ring", "Z2", "--seed", "7",
                 "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["schema"] == 1
    assert report["result"]["ok"]
    assert report["result"]["suites"]["hga"]["checks"]


def test_list_suites(capsys):
    assert main(["--list-suites"]) == 0
    out = capsys.readouterr().out
    assert [line.split()[0] for line in out.splitlines()] == sorted(SUITES)


def test_reports_are_byte_identical():
    cfg = RunConfig("verify", space="wedge22", suite="twisted-products,acyclic-bar", seed=5)
    assert to_json(run(cfg)[1]) == to_json(run(cfg)[1])
    other = RunConfig("verify", space="wedge22", suite="twisted-products,acyclic-bar", seed=5, jobs=2)
    assert to_json(run(other)[1]) == to_json(run(cfg)[1])


def test_degree_cap(monkeypatch, capsys):
    assert main(["homology", "--max-degree", "9"]) == 2
    assert "exceeds the cap 8" in capsys.readouterr().err
    assert main(["build", "--max-degree", "9", "--unsafe-degree"]) == 0
    monkeypatch.setenv("CUBAR_MAX_DEGREE", "3")
    assert main(["build", "--max-degree", "4"]) == 2
    monkeypatch.setenv("CUBAR_MAX_DEGREE", "x")
    assert main(["build"]) == 2


def test_parse_errors_report_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"HY": {"0": 1},\n "HZ": {"0": 1 "2": 1}}\n')
    assert main(["homology", "--construction", "suspension", "--space", f"suspension:{bad}"]) == 2
    assert f"{bad}:2:16:" in capsys.readouterr().err


def test_suspension_file(tmp_path, capsys):
    f = tmp_path / "s2.json"
    f.write_text(json.dumps({"HY": {"0": 1, "2": 1}, "HZ": {"0": 1, "2": 1}, "fstar": {"z2": [["y2", 2]]}}))
    assert main(["homology", "--construction", "suspension", "--space", f"suspension:{f}", "--max-degree", "4",
                 "--format", "json"]) == 0
    res = json.loads(capsys.readouterr().out)["result"]
    assert res["betti"] == [1, 0, 0, 0, 0]
    assert res["homology"][2]["torsion"] == [2]
    assert main(["verify", "--suite", "suspension", "--space", f"suspension:{f}"]) == 0


def test_simplicial_file(tmp_path, capsys):
    f = tmp_path / "s3.json"
    f.write_text(json.dumps(resolve("sphere3").simplicial.to_json()))
    assert main(["homology", "--construction", "loop", "--space", f"simplicial:{f}", "--max-degree", "4"]) == 0
    assert "betti 1,0,1,0,1" in capsys.readouterr().out


def test_failing_suite_exits_nonzero(monkeypatch):
    import cubar.suites as suites
    monkeypatch.setitem(suites.SUITES, "broken", (lambda ctx: {"ok": False, "checks": {}, "info": {}}, 2, ""))
    assert run(RunConfig("verify", suite="broken"))[0] == 1


def test_errors():
    assert run(RunConfig("verify", suite="nope"))[0] == 2
    assert run(RunConfig("verify", space="nope"))[0] == 2
    assert run(RunConfig("homology", ring="Z4"))[0] == 2
    with pytest.raises(SpaceError):
        resolve("nowhere")
    assert set(REGISTRY) >= {"sphere2", "sphere3", "wedge22"}


@pytest.mark.parametrize("construction", ["chains", "loop", "path", "resolution", "cobar", "bar",
                                          "acyclic-cobar", "acyclic-bar", "path-model", "triangulated-loop",
                                          "suspension"])
def test_constructions_build(construction):
    status, report = run(RunConfig("homology", space="sphere3", construction=construction, max_degree=4))
    assert status == 0
    betti = report["result"]["betti"]
    acyclic = construction in ("path", "acyclic-cobar", "acyclic-bar", "path-model")
    if acyclic:
        assert betti == [1, 0, 0, 0, 0]
    elif construction in ("loop", "cobar", "triangulated-loop"):
        assert betti == [1, 0, 1, 0, 1]


@pytest.mark.parametrize("what", ["complex", "hga", "twisting", "space"])
def test_export(what, capsys):
    assert main(["export", "--what", what, "--space", "simplex3", "--max-degree", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == 1 and data["result"]
