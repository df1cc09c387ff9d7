import csv
import io
import json
import os
import stat
import subprocess
import sys

import pytest

from qvl import cli
from qvl.qalg import LaurentPoly


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def test_invariant_log_all_pipelines():
    code, text = run(["invariant", "log", "--degree", "1,1,1,1", "--pipeline", "all"])
    assert code == 0
    doc = json.loads(text)
    assert doc["agree"] is True
    assert set(doc["pipelines"]) == {"closed", "sum", "trace"}
    assert doc["value"] == {"s_terms": [[-1, "1"], [1, "1"]]}
    assert LaurentPoly.from_json(doc["value"]) == LaurentPoly({1: 1, -1: 1})


def test_invariant_gv():
    code, text = run(["invariant", "gv", "--degree", "1,1,1,1"])
    assert code == 0
    assert json.loads(text)["value"] == {"p": "-1", "q": "1"}
    code, text = run(["invariant", "--selector", "gv", "--degree", "1,1,1,1", "--format", "text"])
    assert code == 0 and text.startswith("gv(1,1,1,1) = -1")


def test_invariant_vanishing_intersection():
    code, text = run(["invariant", "log", "--degree", "1,0,1,1"])
    assert code == 0
    doc = json.loads(text)
    assert doc["value"] == {"s_terms": []}
    assert doc["note"] == "vanishing intersection"


def test_invariant_open_value_is_rational():
    code, text = run(["invariant", "open", "--degree", "1,1,1,1", "--pipeline", "all"])
    assert code == 0
    doc = json.loads(text)
    assert doc["agree"] is True
    assert set(doc["value"]) == {"num", "den"}


def test_invariant_g():
    code, text = run(["invariant", "g", "--gparams", "2,1,1,1,3", "--pipeline", "all"])
    assert code == 0
    doc = json.loads(text)
    assert doc["agree"] is True
    assert doc["value"] == {"s_terms": [[-2, "1"], [0, "1"], [2, "1"]]}


def test_invariant_lmov_and_dt_csv():
    code, text = run(["invariant", "lmov", "--degree", "2,2,2,2", "--format", "csv", "--pipeline", "all"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["argument", "invariant", "pipeline", "value"]
    assert len({r[3] for r in rows[1:]}) == 1
    code, text = run(["invariant", "dt", "--degree", "1,1,1,1", "--format", "text"])
    assert code == 0 and text.strip() == "dt(1,1,1,1) = 1"


@pytest.mark.parametrize(
    "argv",
    [
        ["invariant", "log", "--degree", "1,x,1,1"],
        ["invariant", "log", "--degree", "1,1,1"],
        ["invariant", "log", "--degree", "1,-1,1,1"],
        ["invariant", "log"],
        ["invariant", "g", "--degree", "1,1,1,1"],
        ["invariant", "g", "--gparams", "1,1,0,0,2", "--pipeline", "trace"],
        ["invariant", "gv", "--degree", "1,0,1,1"],
        ["invariant", "nonsense", "--degree", "1,1,1,1"],
        ["invariant", "log", "--degree", "1,1,1,1", "--format", "xml"],
        ["verify", "qps", "--max", "-1"],
        ["verify", "recursion", "--box", "1,2,3"],
        ["verify", "no-such-campaign"],
        ["table", "--max-d0", "-1"],
        ["table", "--selector", "g"],
        ["table", "--jobs", "0"],
    ],
)
def test_invalid_input_exits_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2
    assert capsys.readouterr().err


def test_integrality_failure_exits_1(monkeypatch):
    from qvl.qalg import QRational

    def broken(dd):
        return QRational(LaurentPoly(1), LaurentPoly(3))

    monkeypatch.setitem(cli.LOG_PIPELINES, "closed", broken)
    code, _ = run(["invariant", "gv", "--degree", "1,1,1,1"])
    assert code == 1


def test_pipeline_disagreement_exits_1(monkeypatch):
    monkeypatch.setitem(cli.LOG_PIPELINES, "trace", lambda dd: LaurentPoly(7))
    code, text = run(["invariant", "log", "--degree", "1,1,1,1", "--pipeline", "all"])
    assert code == 1
    assert json.loads(text)["agree"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "scat-vs-closed", "--max-d0", "4"],
        ["verify", "trace-vs-scat", "--max-d0", "3"],
        ["verify", "log-open"],
        ["verify", "qps", "--max", "5"],
        ["verify", "recursion", "--box", "4,4,3,3,8"],
        ["verify", "gtilde-recursion", "--box", "3,3,2,2,6"],
        ["verify", "integrality", "--max-d0", "4"],
        ["verify", "symmetry", "--max-d0", "4", "--box", "3,3,3,3,6"],
    ],
)
def test_verify_campaigns_pass(argv):
    code, text = run(argv)
    assert code == 0
    report = json.loads(text)
    assert report["failed"] == 0 and report["counterexample"] is None
    assert report["passed"] == report["checked"] > 0


def test_verify_failure_reports_counterexample(monkeypatch):
    monkeypatch.setattr(cli, "nlog_closed", lambda dd: LaurentPoly(0))
    code, text = run(["verify", "scat-vs-closed", "--max-d0", "1"])
    assert code == 1
    report = json.loads(text)
    assert report["failed"] > 0
    assert "degree" in report["counterexample"]


def test_verify_text_and_csv():
    code, text = run(["verify", "qps", "--max", "2", "--format", "text"])
    assert code == 0 and text.startswith("qps: 81 passed, 0 failed")
    code, text = run(["verify", "qps", "--max", "2", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[1][:4] == ["qps", "81", "81", "0"]


def test_verify_parallel_matches_serial():
    serial = run(["verify", "recursion", "--box", "3,3,2,2,5"])
    parallel = run(["verify", "recursion", "--box", "3,3,2,2,5", "--jobs", "3"])
    assert serial == parallel


def test_table_gv_csv():
    code, text = run(["table", "--selector", "gv", "--max-d0", "3", "--format", "csv"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["d0", "d1", "d2", "d3", "invariant", "value"]
    body = rows[1:]
    assert body
    degrees = [tuple(map(int, r[:4])) for r in body]
    assert degrees == sorted(degrees)
    for r in body:
        int(r[5])  # one integer per class
    assert ["1", "1", "1", "1", "gv", "-1"] in body


def test_table_empty_range():
    code, text = run(["table", "--selector", "gv", "--max-d0", "0", "--format", "csv"])
    assert code == 0
    assert text == "d0,d1,d2,d3,invariant,value\n"
    code, text = run(["table", "--max-d0", "0", "--format", "json"])
    assert code == 0 and json.loads(text) == []


def test_table_deterministic_and_parallel():
    argv = ["table", "--selector", "lmov", "--max-d0", "3", "--format", "text"]
    first = run(argv)
    assert first == run(argv)
    assert first == run(argv + ["--jobs", "2"])


def test_table_cache_transparency(tmp_path, capsys):
    cache = tmp_path / "cache.json"
    argv = ["table", "--selector", "log", "--max-d0", "3", "--format", "csv", "--cache", str(cache)]
    cold = run(argv)
    err = capsys.readouterr().err
    assert "0 hits" in err
    data = json.loads(cache.read_text())
    assert "1,1,1,1:log" in data
    assert data["1,1,1,1:log"] == {"s_terms": [[-1, "1"], [1, "1"]]}
    warm = run(argv)
    err = capsys.readouterr().err
    assert "0 misses" in err
    assert cold == warm
    uncached = run(argv[:-2])
    assert uncached == cold


def test_table_cache_from_environment(tmp_path, monkeypatch, capsys):
    cache = tmp_path / "env.json"
    monkeypatch.setenv("QVL_CACHE", str(cache))
    code, _ = run(["table", "--selector", "gv", "--max-d0", "2"])
    assert code == 0
    assert cache.exists()
    assert "misses" in capsys.readouterr().err


def test_table_cache_keeps_other_entries(tmp_path):
    cache = tmp_path / "cache.json"
    cache.write_text(json.dumps({"9,9,9,9:log": {"s_terms": []}}))
    run(["table", "--selector", "gv", "--max-d0", "2", "--cache", str(cache)])
    data = json.loads(cache.read_text())
    assert "9,9,9,9:log" in data and "1,1,1,1:gv" in data


@pytest.mark.skipif(hasattr(os, "geteuid") and os.geteuid() == 0, reason="root ignores permissions")
def test_table_unwritable_cache_directory(tmp_path, capsys):
    locked = tmp_path / "locked"
    locked.mkdir()
    locked.chmod(stat.S_IRUSR | stat.S_IXUSR)
    try:
        code, text = run(["table", "--max-d0", "2", "--cache", str(locked / "c.json")])
    finally:
        locked.chmod(stat.S_IRWXU)
    assert code == 0 and json.loads(text)
    assert "warning" in capsys.readouterr().err


def test_table_missing_cache_directory(tmp_path, capsys):
    target = tmp_path / "absent" / "c.json"
    code, text = run(["table", "--max-d0", "2", "--cache", str(target)])
    assert code == 0 and json.loads(text)
    assert "warning: cannot write cache" in capsys.readouterr().err


def test_table_corrupt_cache_is_ignored(tmp_path, capsys):
    cache = tmp_path / "bad.json"
    cache.write_text("{not json")
    code, text = run(["table", "--max-d0", "2", "--cache", str(cache)])
    assert code == 0
    assert "ignoring unreadable cache" in capsys.readouterr().err
    assert json.loads(cache.read_text())


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "qvl", "invariant", "gv", "--degree", "1,1,1,1", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert res.stdout.strip() == "gv(1,1,1,1) = -1"
    res = subprocess.run(
        [sys.executable, "-m", "qvl", "invariant", "log", "--degree", "a"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 2
