import io
import json
import subprocess
import sys

import pytest

from substfreq.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_freq_set_single():
    code, text = run("freq-set", "-b", "2", "-m", "2", "-N", "1")
    data = json.loads(text)
    assert code == 0
    assert data["schema"] == "substfreq/1"
    assert (data["N"], data["row"], data["values"]) == (1, "N=1", ["1/3", "1/6"])


def test_freq_set_periodic():
    code, text = run("freq-set", "-b", "3", "-m", "2")
    assert code == 0
    data = json.loads(text)
    assert data["periodic"] is True and data["value"] == "1/2"


def test_freq_set_letters():
    assert json.loads(run("freq-set", "-b", "2", "-m", "3", "-N", "0")[1])["values"] == ["1/3"]


def test_freq_set_range_and_csv():
    code, text = run("freq-set", "-b", "2", "-m", "2", "--range", "0", "3", "--format", "csv")
    assert code == 0
    assert text.splitlines() == ["N,row,values", "0,N=0,1/2", "1,N=1,1/3 1/6",
                                 "2,power-low,1/6", "3,power-high,1/6 1/12"]
    rows = json.loads(run("freq-set", "-b", "2", "-m", "2", "--range", "0", "3")[1])["rows"]
    assert [r["N"] for r in rows] == [0, 1, 2, 3]


@pytest.mark.parametrize("argv", [
    ["freq-set", "-b", "1", "-m", "2", "-N", "1"],
    ["freq-set", "-b", "2", "-m", "2"],
    ["freq-set", "-b", "2", "-m", "2", "-N", "-1"],
    ["freq-set", "-b", "2", "-m", "2", "-N", "1", "--range", "0", "1"],
    ["freq-set", "-b", "x", "-m", "2"],
    ["verify", "-b", "2", "-m", "2", "--tolerance", "abc"],
    ["rauzy", "-b", "2", "-m", "2", "-n", "0"],
    ["rauzy", "-b", "3", "-m", "2", "-n", "1", "--reduced"],
    ["bound", "-b", "3", "-m", "2", "-n", "2"],
    ["nonsense"],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 2
    assert capsys.readouterr().err


@pytest.mark.parametrize("m", ["2", "3"])
def test_verify_passes(m):
    code, text = run("verify", "-b", "2", "-m", m, "--max-n", "64", "--prefix", "1048576")
    data = json.loads(text)
    assert code == 0 and data["ok"] and data["firstMismatch"] is None
    assert data["checks"] == 65


def test_verify_perturbed(capsys):
    code, text = run("verify", "-b", "2", "-m", "2", "--max-n", "16", "--prefix", "65536", "--perturb")
    assert code == 1
    assert json.loads(text)["firstMismatch"].startswith("N=8:")
    assert "mismatch at N=8" in capsys.readouterr().err


def test_verify_details_csv_and_threads():
    code, text = run("verify", "-b", "3", "-m", "3", "--max-n", "8", "--prefix", "65536",
                     "--threads", "3", "--format", "csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "N,row,values,empirical_error,ok"
    assert len(lines) == 10 and all(line.endswith(",1") for line in lines[1:])
    data = json.loads(run("verify", "-b", "3", "-m", "3", "--max-n", "4", "--prefix", "4096",
                          "--details")[1])
    assert [c["N"] for c in data["checks"]] == [0, 1, 2, 3, 4]


def test_rauzy_dot():
    code, text = run("rauzy", "-b", "2", "-m", "2", "-n", "2", "--reduced", "--dot")
    assert code == 0
    assert '"01" [label="01 [1/3]"];' in text and '"10" [label="10 [1/3]"];' in text
    assert '"01" -> "10" [label="0110 [1/6]"];' in text


def test_rauzy_json():
    code, text = run("rauzy", "-b", "2", "-m", "3", "-n", "1", "--json")
    data = json.loads(text)
    assert code == 0 and data["order"] == 1 and len(data["vertices"]) == 3
    assert {"src": "0", "dst": "1", "word": "01", "freq": "4/21"} in data["edges"]


@pytest.mark.parametrize("b, m, n, observed, bound", [
    (2, 2, 6, 2, "4/1"),
    (3, 4, 5, 3, "4/1"),
])
def test_bound(b, m, n, observed, bound):
    code, text = run("bound", "-b", str(b), "-m", str(m), "-n", str(n))
    data = json.loads(text)
    assert code == 0
    assert set(data) == {"schema", "b", "m", "n", "gap", "groupSize", "X", "Y", "bound", "observed"}
    assert (data["observed"], data["bound"]) == (observed, bound)


def test_bound_t23_within_q_plus_3():
    data = json.loads(run("bound", "-b", "2", "-m", "3", "-n", "3")[1])
    assert data["observed"] <= 6


def test_outputs_are_deterministic():
    for argv in (["rauzy", "-b", "3", "-m", "3", "-n", "4", "--json"],
                 ["freq-set", "-b", "3", "-m", "4", "--range", "0", "40"]):
        assert run(*argv) == run(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "substfreq", "freq-set", "-b", "2", "-m", "2", "-N", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["values"] == ["1/2"]
