import json
import subprocess
import sys

import pytest

from leftorders.cli import main
from leftorders.fixtures import b2, z2, z4
from leftorders.semigroup import format_table


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_b2(capsys, files):
    path = files("b2.tbl", format_table(b2()))
    code, out, _ = run(capsys, "analyze", path, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["idempotents"] == [0, 1, 4]
    assert data["square_cancellable"] == [0, 1, 4]
    c0s = next(v for v in data["verdicts"] if v["condition"] == "completely-0-simple")
    assert c0s["holds"] is True


def test_analyze_z2_single_classes(capsys, files):
    code, out, _ = run(capsys, "analyze", files("z2.tbl", format_table(z2())), "--format", "json")
    assert code == 0
    assert all(classes == [[0, 1]] for classes in json.loads(out)["relations"].values())


def test_malformed_input(capsys, files):
    code, _, err = run(capsys, "analyze", files("bad.tbl", "2\n0 0\n0 q\n"))
    assert code == 2 and "line 3" in err
    code, _, err = run(capsys, "analyze", files("na.tbl", "2\n1 0\n0 0\n"))
    assert code == 2 and "associativity" in err
    code, _, _ = run(capsys, "analyze", "/nonexistent/table.tbl")
    assert code == 2


def test_unknown_verb_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_check_order(capsys, files):
    b = files("b2.tbl", format_table(b2()))
    assert run(capsys, "check-order", b, "--straight")[0] == 0
    z = files("z2.tbl", format_table(z2()))
    assert run(capsys, "check-order", z, "--subset", files("e.sub", "0\n"))[0] == 1
    g = files("z4.tbl", format_table(z4()))
    assert run(capsys, "check-order", g, "--fully-stratified")[0] == 0


def test_check_starpair(capsys, files):
    z = files("z2.tbl", format_table(z2()))
    assert run(capsys, "check-starpair", z)[0] == 0
    assert run(capsys, "check-starpair", z, "--pair", "identity")[0] == 1
    bad = files("pair.json", json.dumps({"leq_l": ["11", "01"], "leq_r": ["10", "01"]}))
    code, _, err = run(capsys, "check-starpair", z, "--pair", bad)
    assert code == 2 and "witness" in err


def test_decompose(capsys, files):
    b = files("b2.tbl", format_table(b2()))
    code, out, _ = run(capsys, "decompose", b, "--by", "j", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["decomposition"]["classes"]) == 2
    assert data["decomposition"]["poset"]["leq"] == ["11", "01"]
    g = files("z4.tbl", format_table(z4()))
    code, out, _ = run(capsys, "decompose", g, "--by", "jstar", "--format", "json")
    assert len(json.loads(out)["decomposition"]["classes"]) == 1
    # 1 below 0 in Z2 is not compatible: 1*1 = 0 would have to lie below 1
    pre = files("pre.txt", "10\n11\n")
    code, _, err = run(capsys, "decompose", files("z2.tbl", format_table(z2())), "--by", pre)
    assert code == 2 and "witness" in err


def test_harness_corpus(capsys):
    for theorem in ("1.3", "8.1"):
        code, out, _ = run(capsys, "harness", "--theorem", theorem)
        assert code == 0, out
        assert "b2: pass" in out


def test_harness_empty_corpus(capsys, tmp_path):
    code, out, _ = run(capsys, "harness", "--theorem", "1.3", "--corpus", str(tmp_path))
    assert code == 0 and "0 instances" in out


def test_enumerate_and_budget(capsys, tmp_path):
    out_file = tmp_path / "s3.txt"
    code, _, err = run(capsys, "enumerate", "3", "--output", str(out_file))
    assert code == 0 and "113 tables" in err
    code, _, err = run(capsys, "enumerate", "3", "--budget-tables", "5", "--output", str(out_file))
    assert code == 3 and "complete=false" in out_file.read_text()


def test_find_quotient(capsys, files):
    b = files("b2.tbl", format_table(b2()))
    code, out, _ = run(capsys, "find-quotient", b, "--format", "json")
    assert code == 0 and json.loads(out)["found"] is True
    z = files("z2.tbl", format_table(z2()))
    assert run(capsys, "find-quotient", z, "--pair", "identity")[0] == 1


def test_json_output_replays(capsys, files, tmp_path):
    b = files("b2.tbl", format_table(b2()))
    z = files("z2.tbl", format_table(z2()))
    artifacts = []
    for argv in (["analyze", b], ["check-order", z, "--subset", files("e.sub", "0")],
                 ["check-starpair", z, "--pair", "identity"], ["decompose", b]):
        artifacts.append(json.loads(run(capsys, *argv, "--format", "json")[1]))
    path = tmp_path / "all.json"
    path.write_text(json.dumps(artifacts))
    code, out, _ = run(capsys, "replay", str(path), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["failed"] == [] and data["checked"] > 0


def test_module_entry_point(tmp_path):
    p = tmp_path / "z2.tbl"
    p.write_text(format_table(z2()))
    r = subprocess.run([sys.executable, "-m", "leftorders", "analyze", str(p)], capture_output=True, text=True)
    assert r.returncode == 0 and "order 2" in r.stdout
