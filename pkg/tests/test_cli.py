import json

import pytest

from su2abelian.cli import main

from conftest import M016


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_classify_244(capsys):
    d = run_json(capsys, "classify", "sfs(S2; 2/1, 4/1, 4/-3)")
    assert d["verdict"] == "abelian"
    assert d["certificate"] == "Base244"
    assert d["extras"]["geometry"] == "Euclidean"
    assert d["witness"] is None


def test_classify_tbundle(capsys):
    assert run_json(capsys, "classify", "tbundle[-3,-1;1,0]")["verdict"] == "abelian"
    d = run_json(capsys, "classify", "tbundle[2,1;1,1]")
    assert d["verdict"] == "non-abelian" and d["residual"] < 1e-10


def test_classify_nun(capsys):
    d = run_json(capsys, "classify", "nun[1,0;0,1]")
    assert d["verdict"] == "non-abelian"
    assert d["extras"]["image_order"] == 8
    assert d["witness"]["b1"] == [0.0, 1.0, 0.0, 0.0]


def test_witness_implies_small_residual(capsys):
    for text in ["sfs(S2; 3/1, 3/1, 3/1)", "sfs(T2; 2/1)", "sfs(N2)", "sfs(RP2; 5/2)"]:
        d = run_json(capsys, "classify", text)
        assert d["witness"] is not None and d["residual"] < 1e-10


def test_text_and_json_agree(capsys):
    code, text, _ = run(capsys, "classify", "sfs(S2; 3/1, 3/1, 3/1)")
    d = run_json(capsys, "classify", "sfs(S2; 3/1, 3/1, 3/1)")
    assert code == 0
    assert f"verdict: {d['verdict']}" in text
    for g, q in d["witness"].items():
        line = next(l for l in text.splitlines() if l.strip().startswith(f"{g} ->"))
        values = [float(x) for x in line.split("[")[1].rstrip("]").split(",")]
        assert values == q


def test_search(capsys):
    d = run_json(capsys, "search", "<a,b|>", "--restarts", "5")
    assert d["verdict"] == "nonabelian-found"
    assert d["extras"]["seed"] == 0


def test_search_m016(capsys):
    d = run_json(capsys, "search", M016, "--restarts", "1000", "--seed", "7")
    assert d["verdict"] == "none-found-after-1000"
    assert d["extras"]["seed"] == 7


def test_forms(capsys):
    assert run_json(capsys, "forms", "--disc", "12")["extras"]["class_number"] == 2
    d = run_json(capsys, "forms", "--trace", "-4")
    assert len(d["extras"]["representatives"]) == 2


def test_mg(capsys):
    d = run_json(capsys, "mg", "--g", "1")
    names = [v["manifold"] for v in d["extras"]["fillings"].values()]
    assert names == ["Y(T2,3, T2,3)", "L(7,2)", "L(14,11)", "L(21,13)"]
    d = run_json(capsys, "mg-table", "--g", "2", "--unverified")
    assert d["extras"]["conjectural"]["status"] == "unverified"


def test_misc(capsys):
    d = run_json(capsys, "h1", "sfs(S2; 3/1,3/1,3/-2)")
    assert d["extras"]["rank"] == 1 and d["extras"]["torsion"] == [3]
    assert run_json(capsys, "cfrac", "[3,2]")["verdict"] == "7/2"
    assert run_json(capsys, "cfrac", "21/13")["extras"]["cfrac"] == [1, 1, 1, 1, 1, 2]
    assert run_json(capsys, "lens-eq", "7", "2", "7", "4")["verdict"] == "homeomorphic"
    assert run_json(capsys, "splice-h1", "2", "3", "-2", "3")["verdict"] == "37"
    assert run_json(capsys, "geometry", "sfs(S2; 2/1,3/1,5/1)")["verdict"] == "Spherical"
    d = run_json(capsys, "verify-rep", "<a,b|>", '{"a": [0,1,0,0], "b": [0,0,1,0]}')
    assert d["extras"]["abelian"] is False and d["residual"] == 0.0


@pytest.mark.parametrize(
    "argv, code",
    [
        (["search", "<a | a^2"], 1),
        (["classify", "sfs(S2; 2/1"], 1),
        (["classify", "tbundle[1,2;3]"], 1),
        (["verify-rep", "<a|>", "{not json"], 1),
        (["nosuchcommand"], 1),
        (["forms", "--disc", "9"], 2),
        (["mg", "--g", "0"], 2),
        (["classify", "tbundle[1,1;0,1]"], 2),
        (["classify", "nun[2,0;0,2]"], 2),
        (["splice-h1", "1", "1", "2", "3"], 2),
        (["verify-rep", "<a,b|>", '{"a": [1,0,0,0]}'], 2),
        (["cfrac", "[1,0]"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == "" and err


def test_module_entry_point():
    import subprocess
    import sys

    p = subprocess.run(
        [sys.executable, "-m", "su2abelian", "cfrac", "[3,2]"], capture_output=True, text=True
    )
    assert p.returncode == 0 and "verdict: 7/2" in p.stdout
