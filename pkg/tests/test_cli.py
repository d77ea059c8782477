import json
import subprocess
import sys

import pytest

from superstructure.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,expected", [
    (["eval", "[d1, x1.d2]", "--series", "vect", "--n", "2"], "d2"),
    (["eval", "div(x1.d1)"], "-1"),
    (["eval", "pb(x1, e1)", "--series", "h", "--n", "4"], "-1"),
    (["eval", "7 x1.d1", "--field", "f5"], None),
])
def test_eval(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    if expected is not None:
        assert out.strip() == expected


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "[d1, x1.d2")
    assert code == 2 and "position 10" in err
    code, _, err = run(capsys, "eval", "d1", "--series", "svect", "--n", "2")
    assert code == 2 and "not admissible" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["subalg", "nope"])
    assert info.value.code == 2
    code, _, err = run(capsys, "build", "--series", "vect")
    assert code == 2 and "--n" in err
    code, _, _ = run(capsys, "subalg", "msc", "--series", "tilde_svect", "--n", "4")
    assert code == 2


def test_build(capsys):
    code, out, _ = run(capsys, "build", "--series", "svect", "--n", "3")
    assert code == 0 and "3 8 6" in out and "(total 17)" in out
    code, out, _ = run(capsys, "build", "--series", "h_prime", "--n", "4", "--json", "--basis")
    data = json.loads(out)
    assert data["total"] == 14 and data["basis"]["-1"] == ["x1", "x2", "e1", "e2"]


def test_emit_table(capsys):
    code, out, _ = run(capsys, "subalg", "msc", "--series", "vect", "--n", "2", "--emit-table")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# vect(0|2)"
    assert lines[-1].split("|")[0].strip() == "msc"
    assert [c.strip() for c in lines[-1].split("|")[1:]] == ["d1, d2", "x1.d1, x2.d1, x2.d2", "x1.x2.d1"]
    code, out, _ = run(capsys, "subalg", "msV", "--series", "vect", "--n", "2", "--k", "1", "--emit-table")
    assert [c.strip() for c in out.splitlines()[-1].split("|")[1:]] == ["d1", "x1.d1, x2.d1, x2.d2",
                                                                     "x1.x2.d1, x1.x2.d2"]


def test_flagged_input_prints_diagnostic(capsys):
    code, out, err = run(capsys, "subalg", "ms0", "--series", "h", "--n", "4")
    assert code == 0 and "not maximal" in err and "contained in msV" in err
    code, out, err = run(capsys, "subalg", "msV", "--series", "h", "--n", "6", "--shape", "k=3,l=0,m=0")
    assert code == 0 and "s_-1: x1, x2, x3" in out and err == ""


def test_check_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "msc", "--series", "vect", "--n", "2", "--json")
    assert code == 0 and json.loads(out)["status"] == "maximal"
    code, out, err = run(capsys, "check", "ms0", "--series", "vect", "--n", "2")
    assert code == 0 and "extension d1" in out  # flagged: the expected answer
    code, out, _ = run(capsys, "check", "msV", "--series", "h", "--shape", "k=0,l=1,m=1,za=0,zb=1")
    assert code == 1 and "not_maximal" in out


def test_out_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        assert main(["subalg", "msc", "--series", "h", "--n", "5", "--json", "--out", str(f)]) == 0
    assert capsys.readouterr().out == ""
    assert a.read_text() == b.read_text()
    assert json.loads(a.read_text())["dims"] == {"-1": 5, "0": 6, "1": 2}


def test_tables(capsys):
    code, out, _ = run(capsys, "tables")
    assert code == 0
    assert out.count("# ") >= 5
    code, out, _ = run(capsys, "tables", "--table", "3", "--json")
    data = json.loads(out)
    assert [r["name"] for r in data["3"]["rows"]] == ["msV", "msc", "msV~"]


def test_suite_prop5(capsys):
    code, out, _ = run(capsys, "suite", "prop5")
    assert code == 0
    assert "0 unexpected" in out and "FAIL" not in out


def test_console_script_and_module():
    r = subprocess.run([sys.executable, "-m", "superstructure", "eval", "[d1, x1.d2]"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "d2"
