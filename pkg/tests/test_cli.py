import json

import pytest

from dispersal.cli import main


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_unit_intervals(tmp_path, capsys):
    f = write(tmp_path, "a.json", {"kind": "unit_interval", "centres": [0, 0]})
    code, out, _ = run(capsys, ["solve", f, "--solver", "unit-intervals"])
    report = json.loads(out)
    assert code == 0 and report["cost"] == "1" and report["feasible"]
    assert set(report) >= {"input_digest", "solver", "dispersal", "cost_decimal", "wall_time"}


def test_solve_exit_codes(tmp_path, capsys):
    arcs = write(tmp_path, "arcs.json", {"kind": "unit_arc", "circumference": 2.5, "starts": [0, 0, 0]})
    assert run(capsys, ["solve", arcs, "--solver", "arcs"])[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run(capsys, ["solve", str(bad)])[0] == 2
    assert run(capsys, ["solve", str(tmp_path / "missing.json")])[0] == 2
    ivs = write(tmp_path, "iv.json", {"kind": "unit_interval", "centres": [0, 3]})
    assert run(capsys, ["solve", ivs, "--solver", "arcs"])[0] == 4
    assert run(capsys, ["solve", ivs, "--solver", "clique"])[0] == 4
    weighted = write(tmp_path, "w.json", {"centres": [0, 0], "weights": [1, 2]})
    assert run(capsys, ["solve", weighted, "--solver", "unit-intervals"])[0] == 4


def test_solve_xp_edgeless_and_oracle(tmp_path, capsys):
    f = write(tmp_path, "e.json", {"centres": [0, 2, 5]})
    code, out, _ = run(capsys, ["solve", f, "--solver", "xp"])
    assert code == 0 and json.loads(out)["cost"] == "0"
    g = write(tmp_path, "g.json", {"centres": [0, "1/5", 3, "16/5"], "weights": [1, 2, 1, 1]})
    code, out, _ = run(capsys, ["oracle", g])
    xp = json.loads(run(capsys, ["solve", g])[1])
    assert code == 0 and json.loads(out)["cost"] == xp["cost"] == "8/5"
    arcs = write(tmp_path, "arcs.json", {"kind": "unit_arc", "circumference": 3, "starts": [0, 0, 0]})
    assert json.loads(run(capsys, ["solve", arcs, "--solver", "arcs"])[1])["cost"] == "2"
    assert json.loads(run(capsys, ["oracle", arcs])[1])["cost"] == "2"


def test_certificate_and_verify(tmp_path, capsys):
    f = write(tmp_path, "w.json", {"centres": [0, 0, "1/2"], "weights": [1, 3, 2]})
    cert = tmp_path / "cert.json"
    assert run(capsys, ["solve", f, "--certificate", str(cert)])[0] == 0
    code, out, _ = run(capsys, ["verify", str(cert)])
    assert code == 0 and "accept" in out
    doc = json.loads(cert.read_text())
    doc["threshold"] = "0"
    assert run(capsys, ["verify", write(tmp_path, "low.json", doc)])[0] == 1
    doc["assignment"] = [1, 1, 2]
    assert run(capsys, ["verify", write(tmp_path, "dup.json", doc)])[0] == 2


def test_assign(tmp_path, capsys):
    f = write(tmp_path, "a.json", {"centres": [0, 0], "weights": [1, 10]})
    code, out, _ = run(capsys, ["assign", f, "--slots", "0,1"])
    assert code == 0 and json.loads(out) == {"slots": [2, 1], "dispersal": [1, 0], "cost": "1"}
    assert run(capsys, ["assign", f, "--slots", "0"])[0] == 3


def test_generate(tmp_path, capsys):
    out_file = tmp_path / "g.json"
    code, out, _ = run(capsys, ["generate", "3p-intervals", "--m", "1", "--L", "6", "--A", "2,2,2", "--out", str(out_file)])
    assert code == 0 and "T=18" in out and "objects=867" in out
    assert len(json.loads(out_file.read_text())["objects"]) == 867
    code, _, err = run(capsys, ["generate", "3p-intervals", "--L", "6", "--A", "2,2,3"])
    assert code == 2 and "error" in err
    sq = tmp_path / "sq.json"
    code, out, _ = run(capsys, ["generate", "3p-squares", "--m", "1", "--L", "6", "--delta", "24", "--out", str(sq)])
    assert code == 0 and "T=18" in out
    assert json.loads(sq.read_text())["kind"] == "box2d"
    code, out, _ = run(capsys, ["generate", "3p-intervals", "--random-3p", "--m", "2", "--L", "10", "--seed", "3",
                                "--k", "3", "--scale-integers", "--out", str(tmp_path / "r.json")])
    assert code == 0 and "T=8649" in out


def test_render(tmp_path, capsys):
    f = write(tmp_path, "a.json", {"centres": [0, 0]})
    report = tmp_path / "rep.json"
    run(capsys, ["solve", f, "--out", str(report)])
    svg = tmp_path / "a.svg"
    assert run(capsys, ["render", f, "--dispersal", str(report), "--out", str(svg)])[0] == 0
    first = svg.read_text()
    run(capsys, ["render", f, "--dispersal", str(report), "--out", str(svg)])
    assert svg.read_text() == first and 'id="after"' in first
    assert run(capsys, ["render", str(tmp_path / "none.json")])[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "dispersal", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "solve" in r.stdout
