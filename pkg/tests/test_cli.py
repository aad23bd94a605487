from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from gencluster.cli import main, reflection_word
from gencluster import coxeter as cx


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_roots_json(capsys):
    code, out, _ = run(capsys, "roots", "--system", "A2")
    data = json.loads(out)
    assert code == 0
    assert [p["rho_index"] for p in data["positive_roots"]] == [1, 2, 3]
    assert [p["root"] for p in data["positive_roots"]] == ["s1", "s1+s2", "s2"]
    assert data["total_order"] == ["-s2", "s1", "s1+s2", "s2", "-s1"]


def test_roots_text_and_csv(capsys):
    code, out, _ = run(capsys, "roots", "--system", "B2", "--format", "text")
    assert code == 0 and out.startswith("B2: n=2 N=4 h=4")
    code, out, _ = run(capsys, "roots", "--system", "B2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["rho_index", "root", "coords", "degree"] and len(rows) == 5


def test_verify_fm(capsys):
    code, out, _ = run(capsys, "verify-fm", "--system", "A2", "--m", "2")
    data = json.loads(out)
    assert code == 0 and data["holds"] and data["lhs"] == data["rhs"]
    code, out, _ = run(capsys, "verify-fm", "--system", "A1xA1", "--format", "text")
    assert code == 0 and "identity holds" in out


@pytest.mark.parametrize("argv", [
    ["verify-fm", "--system", "A2", "--m", "0"],
    ["roots", "--system", "Q9"],
    ["roots", "--system", "B1"],
    ["check-face", "--system", "A2", "--m", "2", "--face", "+9@1"],
    ["check-face", "--system", "A2", "--face", "junk"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["roots"])
    assert exc.value.code == 2


def test_check_face(capsys):
    code, out, _ = run(capsys, "check-face", "--system", "A2", "--m", "2", "--face", "+3@2,+2@1")
    data = json.loads(out)
    assert code == 0 and data["is_face"] and data["pairwise"] and data["tuple_rank"] == 2
    assert [e["reflections"] for e in data["tuple"]] == [[3], [2]]
    code, out, _ = run(capsys, "check-face", "--system", "A2", "--m", "2", "--face", "+3@1,+2@2")
    assert code == 0 and json.loads(out)["is_face"] is False


def test_falling_chains(capsys):
    code, out, _ = run(capsys, "falling-chains", "--system", "A2", "--m", "2")
    data = json.loads(out)
    assert code == 0 and data["count"] == 7 and len(data["chains"]) == 7
    faces = {c["face"] for c in data["chains"]}
    assert "+2@1,+3@2" in faces and "+2@1,+3@1" in faces
    code, out, _ = run(capsys, "falling-chains", "--system", "A2", "--m", "2", "--count", "--format", "text")
    assert out.strip() == "7"


def test_triangles(capsys):
    code, out, _ = run(capsys, "f-triangle", "--system", "A2", "--format", "text")
    assert out.strip() == "1 + 3*x + 2*y + 2*x^2 + 2*x*y + y^2"
    code, out, _ = run(capsys, "f-triangle", "--system", "A2", "--m", "2")
    data = json.loads(out)
    assert data["facets"] == data["catalan"] == 12 and data["positive_facets"] == 7
    code, out, _ = run(capsys, "m-triangle", "--system", "A1", "--format", "text")
    assert out.strip() == "1 - x + x*y"
    code, out, _ = run(capsys, "m-triangle", "--system", "A2", "--format", "csv")
    assert out.splitlines()[0] == "xdeg,ydeg,coeff"


def test_posets(capsys):
    code, out, _ = run(capsys, "nc", "--system", "A3", "--count", "--format", "text")
    assert out.strip() == "14"
    code, out, _ = run(capsys, "ncm", "--system", "A2", "--m", "2")
    data = json.loads(out)
    assert len(data["elements"]) == 12 and data["rank_counts"] == [1, 6, 5]
    code, out, _ = run(capsys, "nc", "--system", "A2")
    assert len(json.loads(out)["covers"]) == 6


def test_reflection_word(systems):
    rs = systems("B3")
    for w in cx.below_interval(cx.coxeter_element(rs)):
        word = reflection_word(w)
        assert len(word) == cx.absolute_length(w)
        assert cx.product(rs, [cx.reflection(rs, t) for t in word]) == w


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gencluster", "ncm", "--system", "A2", "--m", "2", "--count"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"count": 12}
    proc = subprocess.run([sys.executable, "-m", "gencluster", "verify-fm", "--system", "A2", "--m", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2


def test_failed_identity_exits_1(capsys, monkeypatch):
    import gencluster.cli as cli
    real = cli.verify_fm

    def broken(rs, m):
        rep = real(rs, m)
        rep.holds = False
        return rep

    monkeypatch.setattr(cli, "verify_fm", broken)
    code, out, _ = run(capsys, "verify-fm", "--system", "A2", "--format", "text")
    assert code == 1 and "identity FAILS" in out


def test_internal_disagreement_exits_3(capsys, monkeypatch):
    import gencluster.cli as cli
    monkeypatch.setattr(cli, "face_by_ncm_criterion", lambda rs, face, m: False)
    code, _, err = run(capsys, "check-face", "--system", "A2", "--face", "+1@1")
    assert code == 3 and err.startswith("internal error:")
