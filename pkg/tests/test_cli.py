import csv
import io
import subprocess
import sys

import pytest

from cwcodes.bounds import main_theorem_value
from cwcodes.cli import main, pick_method
from cwcodes.core import read_code, write_code
from cwcodes.errors import InvalidInputError
from cwcodes.largeset import bundled_large_set, trivial_large_set, write_large_set


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def kv(out):
    return dict(line.split("=", 1) for line in out.splitlines() if "=" in line)


@pytest.mark.parametrize("n, q, value", [(5, 5, 10), (5, 2, 2), (10, 2, 13)])
def test_bound(capsys, n, q, value):
    code, out, _ = run(capsys, "bound", "--n", str(n), "--q", str(q))
    assert code == 0
    assert kv(out)["main_value"] == str(value)
    assert list(kv(out)) == ["n", "q", "u_q_n", "binom_n_3", "main_value", "case_tag"]


def test_bound_bad_args(capsys):
    assert run(capsys, "bound", "--n", "2", "--q", "5")[0] == 2
    assert run(capsys, "bound", "--n", "x", "--q", "5")[0] == 2
    assert run(capsys, "bound")[0] == 2
    assert run(capsys)[0] == 2


def test_sequence(capsys):
    assert run(capsys, "sequence", "--q", "5", "--compact")[1] == "123341\n"
    assert run(capsys, "sequence", "--q", "3")[1] == "1\n"
    code, out, _ = run(capsys, "sequence", "--q", "11")
    assert code == 0 and len(out.split()) == 45
    assert run(capsys, "sequence", "--q", "11", "--compact")[0] == 2


@pytest.mark.parametrize("argv, size", [
    (["--n", "5", "--q", "5", "--method", "sequence"], 10),
    (["--n", "5", "--q", "3", "--method", "largeset"], 5),
    (["--n", "7", "--q", "7"], 35),
    (["--n", "11", "--q", "6"], 90),
])
def test_construct_then_verify(capsys, tmp_path, argv, size):
    path = tmp_path / "out.cwcode"
    code, out, _ = run(capsys, "construct", *argv, "--out", str(path))
    assert code == 0
    info = kv(out)
    assert info["size"] == str(size)
    assert info["optimal"] == "yes"
    code, out, _ = run(capsys, "verify", "--in", str(path))
    assert code == 0 and out == f"pass size={size}\n"


def test_construct_shorten_from_file(capsys, tmp_path):
    ls = tmp_path / "ls11.largeset"
    write_large_set(bundled_large_set(11), ls)
    code, out, _ = run(capsys, "construct", "--n", "10", "--q", "2", "--method", "shorten", "--ls", str(ls))
    assert code == 0
    info = kv(out)
    assert int(info["size"]) >= 13
    assert info["optimal"] == ("yes" if info["size"] == "13" else "no")


def test_construct_wrong_ls_order(capsys, tmp_path):
    ls = tmp_path / "ls5.largeset"
    write_large_set(trivial_large_set(), ls)
    assert run(capsys, "construct", "--n", "11", "--q", "3", "--ls", str(ls))[0] == 2


@pytest.mark.parametrize("argv", [
    ["--n", "6", "--q", "3"],
    ["--n", "5", "--q", "3", "--method", "sequence"],
    ["--n", "7", "--q", "3", "--method", "largeset"],
    ["--n", "9", "--q", "3", "--method", "shorten"],
    ["--n", "5", "--q", "5", "--method", "magic"],
])
def test_construct_uncovered_cells(capsys, argv):
    code, _, err = run(capsys, "construct", *argv)
    assert code == 2
    assert err


def test_uncovered_message_names_the_other_construction():
    with pytest.raises(InvalidInputError, match="Steiner triple"):
        pick_method(6, 3)


def test_pick_method_order():
    assert pick_method(5, 5) == "sequence"
    assert pick_method(11, 10) == "largeset"
    assert pick_method(5, 4) == "largeset"
    assert pick_method(10, 10) == "sequence"
    assert pick_method(10, 9) == "shorten"
    assert pick_method(16, 16) == "sequence"


def test_verify_failure_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.cwcode"
    path.write_text("cwcode 1\nn=5 q=2 w=3 d=4\n1 1 1 0 0\n1 1 0 1 0\n")
    code, out, _ = run(capsys, "verify", "--in", str(path))
    assert code == 1 and out.startswith("fail distance")


def test_verify_missing_or_malformed(capsys, tmp_path):
    assert run(capsys, "verify", "--in", str(tmp_path / "none.cwcode"))[0] == 2
    path = tmp_path / "junk.cwcode"
    path.write_text("hello\n")
    assert run(capsys, "verify", "--in", str(path))[0] == 2


def test_verify_golden_file(capsys, tmp_path, golden_q5_code):
    path = tmp_path / "golden.cwcode"
    write_code(golden_q5_code, path)
    assert run(capsys, "verify", "--in", str(path)) == (0, "pass size=10\n", "")


def test_rank_unrank(capsys):
    assert run(capsys, "rank", "--n", "5", "--set", "1,3,5")[1] == "5\n"
    assert run(capsys, "unrank", "--n", "5", "--k", "3", "--r", "5")[1] == "1,3,5\n"
    assert run(capsys, "rank", "--n", "5", "--set", "1,x")[0] == 2
    assert run(capsys, "rank", "--n", "5", "--set", "3,1,5")[0] == 2
    assert run(capsys, "unrank", "--n", "5", "--k", "3", "--r", "11")[0] == 2


def test_oracle(capsys, tmp_path):
    path = tmp_path / "w.cwcode"
    code, out, _ = run(capsys, "oracle", "--n", "5", "--q", "3", "--out", str(path))
    info = kv(out)
    assert code == 0
    assert info["exact_size"] == "5" and info["proved_optimal"] == "yes" and info["main_value"] == "5"
    assert len(read_code(path)) == 5


def test_ls_verify_and_search(capsys, tmp_path):
    path = tmp_path / "ls.largeset"
    code, out, _ = run(capsys, "ls-search", "--n", "11", "--out", str(path))
    assert code == 0 and kv(out)["status"] == "found"
    assert run(capsys, "ls-verify", "--in", str(path)) == (0, "pass size=9\n", "")
    text = path.read_text().splitlines()
    path.write_text("\n".join(text[:-1]) + "\n")
    code, out, _ = run(capsys, "ls-verify", "--in", str(path))
    assert code == 1 and out.startswith("fail")


def test_ls_search_timeout_and_bad_order(capsys):
    code, out, _ = run(capsys, "ls-search", "--n", "17", "--time-limit", "0.1")
    assert code == 1 and kv(out)["status"] == "timeout"
    code, _, err = run(capsys, "ls-search", "--n", "7")
    assert code == 2 and "n != 7" in err


def test_table(capsys, tmp_path):
    path = tmp_path / "table.csv"
    code, _, _ = run(capsys, "table", "--nmax", "7", "--qmax", "7", "--out", str(path))
    assert code == 0
    raw = path.read_bytes().decode()
    assert '"' not in raw and "\r" not in raw
    rows = list(csv.DictReader(io.StringIO(raw)))
    assert len(rows) == 5 * 6
    for r in rows:
        n, q = int(r["n"]), int(r["q"])
        assert int(r["value"]) == main_theorem_value(n, q)
        assert r["status"] in {"constructed", "oracle", "formula-only"}
        if n == q:
            assert r["status"] == "constructed"
    cells = {(int(r["n"]), int(r["q"])): r["status"] for r in rows}
    assert cells[(6, 3)] == "oracle"
    assert cells[(5, 3)] == "constructed"
    assert cells[(7, 6)] == "formula-only"
    code, out, _ = run(capsys, "table", "--nmax", "4", "--qmax", "3")
    assert out.splitlines()[0] == "n,q,value,status"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cwcodes", "bound", "--n", "5", "--q", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "main_value=10" in proc.stdout


def _covered(n, q):
    try:
        pick_method(n, q)
    except InvalidInputError:
        return False
    return True


COVERED = [(n, q) for n in (3, 4, 5, 6, 7, 10, 11) for q in range(2, n + 1) if _covered(n, q)]


@pytest.mark.parametrize("n, q", COVERED)
def test_roundtrip_every_covered_cell(capsys, tmp_path, n, q):
    path = tmp_path / "c.cwcode"
    code, out, _ = run(capsys, "construct", "--n", str(n), "--q", str(q), "--out", str(path))
    assert code == 0
    assert run(capsys, "verify", "--in", str(path))[0] == 0
    assert kv(out)["optimal"] == "yes"
    assert int(kv(out)["size"]) == main_theorem_value(n, q)
