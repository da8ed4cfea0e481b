import json
import subprocess
import sys

import pytest

from ccakit.cli import EXIT_CAP, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "Q8xZ2")
    assert code == EXIT_OK
    assert out == "group=Q8xZ2 kind=hamiltonian-2-group stabilizer=8 cca=false strongly_cca=false\n"


def test_classify_check(capsys):
    code, out, _ = run(capsys, "classify", "Z4", "--check")
    assert code == EXIT_OK
    assert "kind=abelian-inversion" in out and "stabilizer=2" in out and "agreement=true" in out


def test_classify_trivial(capsys):
    code, out, _ = run(capsys, "classify", "Z2^3", "--format", "json")
    data = json.loads(out)
    assert data == {"group": "Z2^3", "kind": "trivial", "stabilizer_size": 1, "cca": True, "strongly_cca": True}


def test_classify_check_disagreement_exit(capsys, monkeypatch):
    import ccakit.cli as cli
    from ccakit.classify import CompleteClassification, predict_stabilizer
    from ccakit.groups import AutomorphismSet, GroupMap

    def wrong(G):
        c = predict_stabilizer(G)
        return CompleteClassification(c.kind, c.witness, AutomorphismSet((GroupMap.identity(G),), "colour-preserving"))

    monkeypatch.setattr(cli, "predict_stabilizer", wrong)
    code, out, _ = run(capsys, "classify", "Z5", "--check")
    assert code == EXIT_VERIFY and "agreement=false" in out


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export", "Z4", "--complete", "--format", "dot")
    assert code == EXIT_OK
    assert out.count("[label=") == 4
    assert {l.split("colorclass=")[1] for l in out.splitlines() if "--" in l} == {"0];", "1];"}


def test_export_json(capsys):
    code, out, _ = run(capsys, "export", "Q8", "--complete", "--format", "json")
    assert len(json.loads(out)["colours"]) == 4


def test_export_two_triangles(capsys):
    code, out, _ = run(capsys, "export", "Z6", "--set", "2,4", "--format", "dot")
    edges = [l.strip() for l in out.splitlines() if "--" in l]
    assert edges == [
        "0 -- 2 [colorclass=0];", "0 -- 4 [colorclass=0];", "1 -- 3 [colorclass=0];",
        "1 -- 5 [colorclass=0];", "2 -- 4 [colorclass=0];", "3 -- 5 [colorclass=0];",
    ]


def test_export_to_file(tmp_path, capsys):
    path = tmp_path / "g.dot"
    code, out, _ = run(capsys, "export", "Q8", "--set", "i,-i", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert path.read_text().startswith('graph "Cay(Q8)"')


@pytest.mark.parametrize(
    "argv",
    [
        ("export", "Z4", "--set", "1"),
        ("export", "Z4", "--set", "0,1,3"),
        ("export", "Z4"),
        ("export", "Z4", "--complete", "--set", "1,3"),
        ("build", "Q9"),
        ("classify", "Dic(Z5)"),
        ("verify", "classif", "--group", "Q8"),
        ("decompose", "Q8", "--map", "0,1,2"),
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err.startswith("error:")


def test_argparse_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus"])
    assert exc.value.code == EXIT_USAGE


def test_cap_exit(capsys, monkeypatch):
    monkeypatch.setenv("CCA_MAX_ORDER", "8")
    code, _, err = run(capsys, "classify", "Q8xZ2")
    assert code == EXIT_CAP and "cap" in err
    monkeypatch.setenv("CCA_MAX_ORDER", "16")
    assert run(capsys, "classify", "Q8xZ2")[0] == EXIT_OK


def test_build(capsys):
    code, out, _ = run(capsys, "build", "Q8xZ2", "--format", "json")
    data = json.loads(out)
    assert data["order"] == 16 and data["centre_order"] == 4 and not data["abelian"]


def test_enum(capsys):
    code, out, _ = run(capsys, "enum", "Q8", "--complete")
    data = json.loads(out)
    assert data["mode"] == "colour-preserving" and len(data["maps"]) == 8
    code, out, _ = run(capsys, "enum", "Q8", "--complete", "--mode", "colour-permuting", "--format", "text")
    assert out.splitlines()[0] == "mode=colour-permuting stabilized=true size=48"
    code, out, _ = run(capsys, "enum", "Q8", "--mode", "group")
    assert len(json.loads(out)["maps"]) == 24


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "Q8", "--format", "text")
    assert code == EXIT_OK and out == "group=Q8 maps=48 all_verified=true\n"
    code, out, _ = run(capsys, "decompose", "Q8", "--map", "0,3,2,1,6,7,4,5")
    cert = json.loads(out)
    assert all(cert["checks"].values())


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "decomposition", "--group", "Q8")
    assert code == EXIT_OK
    assert "all 384 colour-permuting maps decompose" in out
    code, out, _ = run(capsys, "verify", "classif", "--max-order", "8")
    assert code == EXIT_OK and "FAIL" not in out


def test_verify_failure_exit(capsys, monkeypatch):
    import ccakit.cli as cli
    from ccakit.suites import Check

    monkeypatch.setattr(cli, "run_suite", lambda name, log=None, **kw: [Check("planted", False)])
    code, _, err = run(capsys, "verify", "d12")
    assert code == EXIT_VERIFY and "planted" in err


@pytest.mark.parametrize(
    "argv",
    [("classify", "Dic(Z8)", "--format", "json"), ("export", "D12", "--complete"), ("enum", "Q8xZ2", "--complete")],
)
def test_deterministic(capsys, argv):
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "ccakit", "classify", "Q8"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0
    assert "kind=hamiltonian-2-group" in res.stdout
